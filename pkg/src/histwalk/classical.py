"""Exact classical engines: the walk's probability-limit chain and capital games.

Replacing each retoss amplitude by its squared magnitude turns the walk into
a Markov chain over the last ``num_coins`` step results.  Chain states are
written chronologically (oldest result first), and that string order is also
the row and column order of the transition matrices built here.  Alongside
the chain live the standard capital games used as classical baselines: a
single biased coin, a coin keyed on capital mod 3, and a coin keyed on the
results of the last two plays.  All trajectory functions evolve
distributions exactly; Monte Carlo sampling is provided separately as a
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

import numpy as np

from .operators import HistoryRhoTable, _check_probability
from .state import L, R

__all__ = [
    "history_states",
    "history_walk_transition",
    "drift_by_state",
    "uniform_history_distribution",
    "StationaryResult",
    "stationary_distribution",
    "classical_mean_trajectory",
    "BiasedCoin",
    "CapitalMod3",
    "HistoryCoins",
    "capital_game_trajectory",
    "history_mix_trajectory",
    "history_game_trajectory",
    "monte_carlo_trajectory",
    "monte_carlo_mean",
]


def history_states(num_coins: int) -> list[str]:
    """Chain states as chronological strings, oldest result first, in row order."""
    if num_coins < 1:
        raise ValueError(f"num_coins must be >= 1, got {num_coins}")
    return ["".join(s) for s in product((L, R), repeat=num_coins)]


def history_walk_transition(table: HistoryRhoTable) -> np.ndarray:
    """Row-stochastic transition matrix of the walk's classical limit.

    From a state the oldest result is retossed: it is retained with the
    table's parameter for the newer results and flipped otherwise.  The new
    value becomes the step direction, and the next state is the newer results
    followed by the new value.  Each state has exactly two predecessors
    reached with complementary probabilities, so every column also sums to
    one and the uniform distribution is always stationary.
    """
    states = history_states(table.num_coins)
    index = {s: k for k, s in enumerate(states)}
    size = len(states)
    matrix = np.zeros((size, size))
    for k, s in enumerate(states):
        oldest, newer = s[0], s[1:]
        keep = table.rho[newer[::-1]]
        matrix[k, index[newer + oldest]] += keep
        matrix[k, index[newer + (R if oldest == L else L)]] += 1.0 - keep
    return matrix


def drift_by_state(table: HistoryRhoTable) -> np.ndarray:
    """Expected step increment from each chain state (+1 for R, -1 for L)."""
    states = history_states(table.num_coins)
    out = np.empty(len(states))
    for k, s in enumerate(states):
        keep = table.rho[s[1:][::-1]]
        prob_right = keep if s[0] == R else 1.0 - keep
        out[k] = 2.0 * prob_right - 1.0
    return out


def uniform_history_distribution(num_coins: int) -> np.ndarray:
    """The uniform distribution over the ``2 ** num_coins`` chain states."""
    size = 1 << num_coins
    return np.full(size, 1.0 / size)


@dataclass(frozen=True)
class StationaryResult:
    """A stationary distribution plus a flag for chains where it is not unique."""

    distribution: np.ndarray
    flagged: bool
    reason: str | None
    iterations: int


def stationary_distribution(
    matrix, tol: float = 1e-13, max_iterations: int = 1_000_000
) -> StationaryResult:
    """Left fixed point of a row-stochastic matrix by power iteration.

    Iterates from the uniform distribution until successive iterates differ
    by less than ``tol`` in sup norm.  Chains with several eigenvalues on the
    unit circle (reducible or periodic, e.g. retention parameters of exactly
    0 or 1) have no single settling point; those results come back flagged
    with a reason instead of being silently averaged.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("transition matrix must be square")
    if np.any(matrix < -1e-12):
        raise ValueError("transition matrix has negative entries")
    if np.any(np.abs(matrix.sum(axis=1) - 1.0) > 1e-12):
        raise ValueError("transition matrix rows must sum to 1")
    size = matrix.shape[0]

    eigenvalues = np.linalg.eigvals(matrix)
    at_one = np.abs(eigenvalues - 1.0) < 1e-9
    on_circle = np.abs(np.abs(eigenvalues) - 1.0) < 1e-9
    flagged = False
    reason = None
    if int(at_one.sum()) > 1:
        flagged = True
        reason = "stationary distribution is not unique (reducible chain)"
    elif int(on_circle.sum()) > int(at_one.sum()):
        flagged = True
        reason = "chain is periodic; distributions cycle instead of settling"

    pi = np.full(size, 1.0 / size)
    iterations = 0
    converged = False
    cap = min(max_iterations, 10_000) if flagged else max_iterations
    for iterations in range(1, cap + 1):
        nxt = pi @ matrix
        diff = float(np.max(np.abs(nxt - pi)))
        pi = nxt
        if diff < tol:
            converged = True
            break
    if not flagged and not converged:
        flagged = True
        reason = f"power iteration did not converge within {max_iterations} iterations"
    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()
    return StationaryResult(pi, flagged, reason, iterations)


def classical_mean_trajectory(
    table: HistoryRhoTable, steps: int, initial=None
) -> np.ndarray:
    """Exact mean position of the classical-limit chain after each step.

    ``initial`` is either a probability vector over the chain states in row
    order or a mapping from state strings (oldest result first) to
    probabilities; omitted means uniform.  The distribution is propagated
    exactly and the mean accumulates each step's expected increment, so
    there is no sampling error.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    size = 1 << table.num_coins
    if initial is None:
        pi = uniform_history_distribution(table.num_coins)
    else:
        if isinstance(initial, Mapping):
            states = history_states(table.num_coins)
            index = {s: i for i, s in enumerate(states)}
            pi = np.zeros(size)
            for state, weight in initial.items():
                if state not in index:
                    raise ValueError(f"unknown chain state {state!r}")
                pi[index[state]] = weight
        else:
            pi = np.asarray(initial, dtype=float)
        if pi.shape != (size,) or np.any(pi < 0) or abs(pi.sum() - 1.0) > 1e-12:
            raise ValueError("initial must be a probability vector over chain states")
        pi = pi.copy()
    matrix = history_walk_transition(table)
    drift = drift_by_state(table)
    means = np.zeros(steps + 1)
    mean = 0.0
    for t in range(1, steps + 1):
        mean += float(pi @ drift)
        means[t] = mean
        pi = pi @ matrix
    return means


@dataclass(frozen=True)
class BiasedCoin:
    """Win with probability ``p``; capital moves +1 on a win, -1 on a loss."""

    p: float

    def __post_init__(self) -> None:
        _check_probability(self.p, "p")


@dataclass(frozen=True)
class CapitalMod3:
    """Coin keyed on capital: ``p1`` when capital is a multiple of 3, else ``p2``.

    The residue is the mathematical one, so capital -1 uses ``p2`` (residue 2).
    """

    p1: float
    p2: float

    def __post_init__(self) -> None:
        _check_probability(self.p1, "p1")
        _check_probability(self.p2, "p2")


@dataclass(frozen=True)
class HistoryCoins:
    """Coin keyed on the results of the last two plays, oldest first.

    ``p1`` plays after (lost, lost), ``p2`` after (lost, won), ``p3`` after
    (won, lost) and ``p4`` after (won, won).
    """

    p1: float
    p2: float
    p3: float
    p4: float

    def __post_init__(self) -> None:
        for label in ("p1", "p2", "p3", "p4"):
            _check_probability(getattr(self, label), label)

    def as_array(self) -> np.ndarray:
        return np.array([self.p1, self.p2, self.p3, self.p4])


def _as_letter_games(games, pattern: str | None, allowed: tuple, label: str):
    if isinstance(games, allowed):
        games = {"A": games}
        pattern = pattern or "A"
    if not isinstance(games, Mapping) or not games:
        raise TypeError(f"games must be a non-empty letter mapping or a single spec")
    if not pattern:
        raise ValueError("pattern must be a non-empty string of game letters")
    unknown = sorted(set(pattern) - set(games))
    if unknown:
        raise ValueError(f"pattern uses undefined games {unknown}")
    for name, spec in games.items():
        if not isinstance(spec, allowed):
            raise TypeError(f"game {name!r} is not usable in a {label} sequence")
    return games, pattern


def capital_game_trajectory(games, pattern: str | None, steps: int) -> np.ndarray:
    """Exact mean capital per step for a cyclic pattern of capital-keyed games.

    ``games`` maps letters to :class:`BiasedCoin` or :class:`CapitalMod3`
    specs (a bare spec plays alone).  The full distribution over capital
    values is evolved, so results carry no sampling error.
    """
    games, pattern = _as_letter_games(games, pattern, (BiasedCoin, CapitalMod3), "capital")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    values = np.arange(-steps, steps + 1)
    dist = np.zeros(2 * steps + 1)
    dist[steps] = 1.0
    means = np.zeros(steps + 1)
    for t in range(steps):
        spec = games[pattern[t % len(pattern)]]
        if isinstance(spec, BiasedCoin):
            win = np.full(dist.shape, spec.p)
        else:
            win = np.where(values % 3 == 0, spec.p1, spec.p2)
        up = dist * win
        down = dist - up
        nxt = np.zeros_like(dist)
        nxt[1:] += up[:-1]
        nxt[:-1] += down[1:]
        dist = nxt
        means[t + 1] = float(dist @ values)
    return means


def history_mix_trajectory(games, pattern: str | None, steps: int, initial=None) -> np.ndarray:
    """Exact mean capital when win odds may key on the last two results.

    The four (before-last, last) result pairs are tracked as a distribution,
    starting uniform unless ``initial`` (length-4 probability vector over
    (lost,lost), (lost,won), (won,lost), (won,won)) is given.  Capital does
    not feed back into the odds, so only that four-state distribution and the
    accumulated mean are needed.
    """
    games, pattern = _as_letter_games(games, pattern, (BiasedCoin, HistoryCoins), "history")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if initial is None:
        pi = np.full(4, 0.25)
    else:
        pi = np.asarray(initial, dtype=float)
        if pi.shape != (4,) or np.any(pi < 0) or abs(pi.sum() - 1.0) > 1e-12:
            raise ValueError("initial must be a probability vector over 4 result pairs")
        pi = pi.copy()
    means = np.zeros(steps + 1)
    mean = 0.0
    for t in range(steps):
        spec = games[pattern[t % len(pattern)]]
        win = spec.as_array() if isinstance(spec, HistoryCoins) else np.full(4, spec.p)
        mean += float(pi @ (2.0 * win - 1.0))
        means[t + 1] = mean
        nxt = np.zeros(4)
        for s in range(4):
            newer = s & 1
            nxt[(newer << 1) | 1] += pi[s] * win[s]
            nxt[newer << 1] += pi[s] * (1.0 - win[s])
        pi = nxt
    return means


def history_game_trajectory(
    spec: HistoryCoins, steps: int, mix=None, initial=None
) -> np.ndarray:
    """Mean capital for a last-two-results game, optionally mixed with a plain coin.

    ``mix`` is ``(coin, pattern)`` where the pattern's ``A`` letters play the
    plain :class:`BiasedCoin` and ``B`` letters play the history game; with no
    mix the history game plays every step.
    """
    if mix is None:
        return history_mix_trajectory({"B": spec}, "B", steps, initial)
    coin, pattern = mix
    return history_mix_trajectory({"A": coin, "B": spec}, pattern, steps, initial)


def _sample_stats(values: np.ndarray, out_mean, out_err, t: int) -> None:
    out_mean[t] = values.mean()
    if values.size > 1:
        out_err[t] = values.std(ddof=1) / np.sqrt(values.size)


def _monte_carlo_walk(table, steps, n_trajectories, rng):
    num_coins = table.num_coins
    size = 1 << num_coins
    states = history_states(num_coins)
    keep_prob = np.array([table.rho[s[1:][::-1]] for s in states])
    keep_dir = np.array([1 if s[0] == R else -1 for s in states], dtype=np.int64)
    state = rng.integers(size, size=n_trajectories)
    position = np.zeros(n_trajectories, dtype=np.int64)
    means = np.zeros(steps + 1)
    errors = np.zeros(steps + 1)
    mask = size - 1
    for t in range(1, steps + 1):
        kept = rng.random(n_trajectories) < keep_prob[state]
        direction = np.where(kept, keep_dir[state], -keep_dir[state])
        position += direction
        new_bit = (direction > 0).astype(np.int64)
        state = ((state << 1) & mask) | new_bit
        _sample_stats(position, means, errors, t)
    return means, errors


def _monte_carlo_capital(games, pattern, steps, n_trajectories, rng):
    capital = np.zeros(n_trajectories, dtype=np.int64)
    # Last two results per trajectory, oldest in the high bit; games that do
    # not read them leave them untouched in distribution.
    pairs = rng.integers(4, size=n_trajectories)
    means = np.zeros(steps + 1)
    errors = np.zeros(steps + 1)
    for t in range(steps):
        spec = games[pattern[t % len(pattern)]]
        if isinstance(spec, BiasedCoin):
            win_prob = np.full(n_trajectories, spec.p)
        elif isinstance(spec, CapitalMod3):
            win_prob = np.where(capital % 3 == 0, spec.p1, spec.p2)
        else:
            win_prob = spec.as_array()[pairs]
        won = rng.random(n_trajectories) < win_prob
        capital += np.where(won, 1, -1)
        pairs = ((pairs & 1) << 1) | won
        _sample_stats(capital, means, errors, t + 1)
    return means, errors


def monte_carlo_trajectory(spec, pattern, steps, n_trajectories, seed):
    """Sampled mean capital or position per step, with standard errors.

    A single PCG64 generator seeded with ``seed`` drives all trajectories in
    lockstep (one batch of uniform draws per step), so results are exactly
    reproducible for a given seed and trajectory count.  ``spec`` may be a
    :class:`HistoryRhoTable` (the chain sampled from its uniform start), a
    single capital-game spec, or a letter mapping played cyclically through
    ``pattern``.  Returns ``(means, standard_errors)`` arrays of length
    ``steps + 1``.
    """
    if n_trajectories < 1:
        raise ValueError(f"n_trajectories must be >= 1, got {n_trajectories}")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    rng = np.random.default_rng(seed)
    if isinstance(spec, HistoryRhoTable):
        return _monte_carlo_walk(spec, steps, n_trajectories, rng)
    games, pattern = _as_letter_games(
        spec, pattern, (BiasedCoin, CapitalMod3, HistoryCoins), "sampled"
    )
    return _monte_carlo_capital(games, pattern, steps, n_trajectories, rng)


def monte_carlo_mean(spec, pattern, steps, n_trajectories, seed):
    """Final-step sample mean and standard error; see :func:`monte_carlo_trajectory`."""
    means, errors = monte_carlo_trajectory(spec, pattern, steps, n_trajectories, seed)
    return float(means[-1]), float(errors[-1])
