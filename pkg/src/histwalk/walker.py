"""Initial states, game sequencing, pattern scans and parameter sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .operators import BrunCoinList, HistoryRhoTable, brun_toss, toss
from .state import (
    HorizonError,
    Moments,
    ProbabilityDistribution,
    WalkState,
    moments,
    new_state,
    position_distribution,
)

__all__ = [
    "ANTISYMMETRIC",
    "ALL_R",
    "GameSpec",
    "Trajectory",
    "build_initial_state",
    "as_game_tables",
    "run_sequence",
    "evolve",
    "evolve_brun",
    "scan_sequences",
    "sweep_parameter",
    "POSITIVE_MEAN_THRESHOLD",
]

ANTISYMMETRIC = "antisymmetric"
ALL_R = "allR"

#: Means above this count as genuinely positive in pattern scans; smaller
#: values are rounding dust from patterns with no net bias.
POSITIVE_MEAN_THRESHOLD = 1e-9


@dataclass(frozen=True)
class GameSpec:
    """A named retention table; patterns refer to games by this letter."""

    name: str
    table: HistoryRhoTable

    def __post_init__(self) -> None:
        if len(self.name) != 1 or not self.name.isalpha():
            raise ValueError(f"game name must be a single letter, got {self.name!r}")


def as_game_tables(games) -> dict[str, HistoryRhoTable]:
    """Normalize a game collection to a letter -> table mapping.

    Accepts a mapping of letters to tables (or to :class:`GameSpec`), or an
    iterable of :class:`GameSpec`.  All tables must agree on ``num_coins``.
    """
    out: dict[str, HistoryRhoTable] = {}
    if isinstance(games, Mapping):
        items = games.items()
    else:
        items = [(spec.name, spec) for spec in games]
    for name, value in items:
        table = value.table if isinstance(value, GameSpec) else value
        if not isinstance(table, HistoryRhoTable):
            raise TypeError(f"game {name!r} is not a retention table")
        if len(name) != 1 or not name.isalpha():
            raise ValueError(f"game name must be a single letter, got {name!r}")
        out[name] = table
    if not out:
        raise ValueError("no games defined")
    sizes = {table.num_coins for table in out.values()}
    if len(sizes) != 1:
        raise ValueError(f"games disagree on register size: {sorted(sizes)}")
    return out


def build_initial_state(num_coins, kind=ANTISYMMETRIC, t_max: int = 1) -> WalkState:
    """Normalized starting state.

    Parameters
    ----------
    num_coins : int
        Register length.
    kind : str or iterable
        ``"antisymmetric"`` for the equal-magnitude origin superposition whose
        sign flips under the global L/R swap; ``"allR"`` for the single
        register ``R...R`` at the origin; or an iterable of
        ``(x, register, amplitude)`` entries, normalized after injection.
    t_max : int
        Position horizon; pass the total number of steps you intend to take.

    Notes
    -----
    Antisymmetry fixes only relative signs between complement pairs, so the
    remaining phases are pinned by validation against the documented walk
    behavior.  For odd register lengths the sign is the parity of the number
    of R entries — the state is the register-wise product of (|L> - |R>)/sqrt(2),
    which extends the single-coin starting state and reproduces the documented
    game biases (its position distributions coincide with those of the uniform
    superposition over histories, because amplitudes of even and odd R-parity
    never interfere).  For even lengths that product is symmetric rather than
    antisymmetric under the swap, so the sign follows the most recent entry
    instead (+ when coin 1 is L).
    """
    state = new_state(num_coins, t_max)
    if isinstance(kind, str):
        row = state.t_max
        if kind == ANTISYMMETRIC:
            size = 1 << num_coins
            scale = 2.0 ** (-num_coins / 2.0)
            if num_coins % 2:
                signs = np.array(
                    [-1.0 if bin(i).count("1") % 2 else 1.0 for i in range(size)]
                )
                state.amplitudes[row, :] = signs * scale
            else:
                state.amplitudes[row, : size // 2] = scale
                state.amplitudes[row, size // 2 :] = -scale
        elif kind == ALL_R:
            state.amplitudes[row, (1 << num_coins) - 1] = 1.0
        else:
            raise ValueError(f"unknown initial state kind {kind!r}")
        return state
    entries = list(kind)
    if not entries:
        raise ValueError("custom initial state needs at least one entry")
    for x, coins, amplitude in entries:
        state.set_amplitude(x, coins, amplitude)
    total = state.norm()
    if total == 0.0:
        raise ValueError("custom initial state has zero norm")
    state.amplitudes /= total
    return state


@dataclass
class Trajectory:
    """Per-step position statistics; entry 0 describes the initial state."""

    means: np.ndarray
    stds: np.ndarray
    snapshots: dict[int, ProbabilityDistribution] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.means)


def _check_pattern(pattern: str, tables: Mapping[str, HistoryRhoTable]) -> None:
    if not pattern:
        raise ValueError("pattern must be a non-empty string of game letters")
    unknown = sorted(set(pattern) - set(tables))
    if unknown:
        raise ValueError(f"pattern uses undefined games {unknown}")


def run_sequence(
    initial: WalkState,
    games,
    pattern: str,
    steps: int,
    snapshot_at: Iterable[int] = (),
) -> Trajectory:
    """Evolve ``initial`` for ``steps`` tosses, cycling through ``pattern``.

    The pattern is read left to right and repeats: step ``t`` (0-based) uses
    the table named by ``pattern[t % len(pattern)]``, so ``"AABB"`` plays A
    twice, then B twice, then A again.  Means and standard deviations are
    recorded after every step; full distributions only at the steps listed in
    ``snapshot_at``.  The input state is not modified.
    """
    tables = as_game_tables(games)
    _check_pattern(pattern, tables)
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    first = next(iter(tables.values()))
    if first.num_coins != initial.num_coins:
        raise ValueError(
            f"games are for {first.num_coins} coins, state has {initial.num_coins}"
        )
    if initial.steps_taken + steps > initial.t_max:
        raise HorizonError(
            f"{steps} steps from steps_taken={initial.steps_taken} would pass "
            f"t_max={initial.t_max}"
        )
    wanted = {int(s) for s in snapshot_at}
    out_of_range = {s for s in wanted if not 0 <= s <= steps}
    if out_of_range:
        raise ValueError(f"snapshot steps {sorted(out_of_range)} outside [0, {steps}]")
    means = np.zeros(steps + 1)
    stds = np.zeros(steps + 1)
    snapshots: dict[int, ProbabilityDistribution] = {}
    state = initial.copy()
    dist = position_distribution(state)
    stat = moments(dist)
    means[0], stds[0] = stat.mean, stat.std
    if 0 in wanted:
        snapshots[0] = dist
    for t in range(steps):
        state = toss(state, tables[pattern[t % len(pattern)]])
        dist = position_distribution(state)
        stat = moments(dist)
        means[t + 1], stds[t + 1] = stat.mean, stat.std
        if t + 1 in wanted:
            snapshots[t + 1] = dist
    return Trajectory(means, stds, snapshots)


def evolve(initial: WalkState, table: HistoryRhoTable, steps: int) -> WalkState:
    """Apply ``steps`` tosses with one fixed table; returns the final state."""
    state = initial.copy()
    for _ in range(steps):
        state = toss(state, table)
    return state


def evolve_brun(
    initial: WalkState, coins: BrunCoinList | Sequence[float], steps: int
) -> WalkState:
    """Apply ``steps`` cycled tosses; the cycle position follows ``steps_taken``."""
    state = initial.copy()
    for _ in range(steps):
        state = brun_toss(state, coins, state.steps_taken)
    return state


def scan_sequences(
    games, max_len: int, num_coins: int, steps: int, kind=ANTISYMMETRIC
) -> dict[str, float]:
    """Final-step mean for every non-empty pattern of up to ``max_len`` letters.

    Every pattern starts from the identical initial state; keys are returned
    in lexicographic order over the sorted game alphabet.
    """
    tables = as_game_tables(games)
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    first = next(iter(tables.values()))
    if first.num_coins != num_coins:
        raise ValueError(f"games are for {first.num_coins} coins, asked for {num_coins}")
    letters = sorted(tables)
    patterns = sorted(
        "".join(p)
        for length in range(1, max_len + 1)
        for p in product(letters, repeat=length)
    )
    initial = build_initial_state(num_coins, kind, t_max=max(steps, 1))
    results: dict[str, float] = {}
    for pattern in patterns:
        trajectory = run_sequence(initial, tables, pattern, steps)
        results[pattern] = float(trajectory.means[-1])
    return results


def sweep_parameter(
    base: HistoryRhoTable | GameSpec,
    history_key: str,
    grid: Sequence[float],
    steps: int,
    kind=ANTISYMMETRIC,
) -> list[tuple[float, Moments]]:
    """Final-step moments of a single-game walk as one history entry varies.

    Returns ``(rho, Moments)`` pairs in grid order; every run starts from the
    same initial state and plays the adjusted table for all ``steps`` tosses.
    """
    table = base.table if isinstance(base, GameSpec) else base
    initial = build_initial_state(table.num_coins, kind, t_max=max(steps, 1))
    results: list[tuple[float, Moments]] = []
    for rho in grid:
        adjusted = table.replaced(history_key, float(rho))
        trajectory = run_sequence(initial, {"X": adjusted}, "X", steps)
        results.append(
            (float(rho), Moments(float(trajectory.means[-1]), float(trajectory.stds[-1])))
        )
    return results
