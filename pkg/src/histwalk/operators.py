"""Unitary building blocks of one evolution step.

A step retosses the oldest register entry with a retention amplitude that may
depend on the more recent results, moves the walker according to the retossed
value, and rotates the register so the fresh result sits in front.  With the
column encoding used by :mod:`histwalk.state` (most recent result = MSB) the
oldest entry is the least significant bit, so the retoss mixes adjacent column
pairs, the shift moves odd columns right and even columns left, and the
rotation is a bit rotate on the column index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .state import L, R, HorizonError, WalkState, complement

__all__ = [
    "coin_unitary",
    "all_histories",
    "HistoryRhoTable",
    "BrunCoinList",
    "apply_conditional_flip",
    "apply_shift",
    "apply_reorder",
    "toss",
    "brun_toss",
]


def _check_probability(value: float, label: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{label} = {value} must lie in [0, 1]")
    return value


def coin_unitary(rho: float) -> np.ndarray:
    """2x2 toss matrix: retention amplitude ``sqrt(rho)``, flip ``i*sqrt(1-rho)``.

    ``1 - rho`` is the classical probability that the tossed entry changes
    value; ``rho = 1/2`` is an unbiased toss.  The matrix is unitary for every
    ``rho`` in ``[0, 1]``.
    """
    rho = _check_probability(rho, "rho")
    keep = np.sqrt(rho)
    flip = 1j * np.sqrt(1.0 - rho)
    return np.array([[keep, flip], [flip, keep]], dtype=np.complex128)


def all_histories(num_coins: int) -> list[str]:
    """Every history string of length ``num_coins - 1``, in column-index order."""
    if num_coins < 1:
        raise ValueError(f"num_coins must be >= 1, got {num_coins}")
    return ["".join(h) for h in product((L, R), repeat=num_coins - 1)]


@dataclass(frozen=True)
class HistoryRhoTable:
    """Retention parameter for every history of recent results.

    Keys are strings of length ``num_coins - 1`` with the most recent result
    first; a single-coin walk has one entry under the empty history.  Values
    are the probabilities that the retossed entry keeps its old value.
    """

    num_coins: int
    rho: Mapping[str, float]

    def __post_init__(self) -> None:
        expected = all_histories(self.num_coins)
        entries = {}
        for key in expected:
            if key not in self.rho:
                raise ValueError(f"missing rho for history {key!r}")
            entries[key] = _check_probability(self.rho[key], f"rho[{key!r}]")
        extra = set(self.rho) - set(expected)
        if extra:
            raise ValueError(
                f"unexpected history keys {sorted(extra)} for num_coins={self.num_coins}"
            )
        object.__setattr__(self, "rho", entries)

    @classmethod
    def uniform(cls, num_coins: int, rho: float = 0.5) -> "HistoryRhoTable":
        """The same retention parameter for every history."""
        return cls(num_coins, {h: rho for h in all_histories(num_coins)})

    @classmethod
    def with_overrides(
        cls,
        num_coins: int,
        default: float = 0.5,
        overrides: Mapping[str, float] | None = None,
    ) -> "HistoryRhoTable":
        """A uniform table with selected histories overridden."""
        entries = {h: default for h in all_histories(num_coins)}
        for key, value in (overrides or {}).items():
            if key not in entries:
                raise ValueError(f"unknown history key {key!r} for num_coins={num_coins}")
            entries[key] = value
        return cls(num_coins, entries)

    def replaced(self, history: str, rho: float) -> "HistoryRhoTable":
        """A copy with one history entry changed."""
        if history not in self.rho:
            raise ValueError(f"unknown history key {history!r}")
        entries = dict(self.rho)
        entries[history] = rho
        return HistoryRhoTable(self.num_coins, entries)

    def mirrored(self) -> "HistoryRhoTable":
        """The table with every history complemented (L and R swapped)."""
        return HistoryRhoTable(
            self.num_coins, {complement(h): v for h, v in self.rho.items()}
        )

    def retention_array(self) -> np.ndarray:
        """Retention parameters ordered by history index (most recent = MSB)."""
        return np.array([self.rho[h] for h in all_histories(self.num_coins)], dtype=float)


@dataclass(frozen=True)
class BrunCoinList:
    """A fixed cycle of retention parameters, one per register slot."""

    rhos: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(
            _check_probability(v, f"rhos[{i}]") for i, v in enumerate(self.rhos)
        )
        if not values:
            raise ValueError("need at least one coin in the cycle")
        object.__setattr__(self, "rhos", values)

    def __len__(self) -> int:
        return len(self.rhos)

    def __getitem__(self, index: int) -> float:
        return self.rhos[index]


def _flipped(amplitudes: np.ndarray, keep: np.ndarray, flip: np.ndarray) -> np.ndarray:
    # keep/flip hold sqrt(rho) and sqrt(1 - rho) per history, indexed like the
    # leading num_coins - 1 bits of the column index.
    rows, cols = amplitudes.shape
    psi = amplitudes.reshape(rows, cols // 2, 2)
    oldest_l = psi[..., 0]
    oldest_r = psi[..., 1]
    out = np.empty_like(psi)
    out[..., 0] = keep * oldest_l + 1j * flip * oldest_r
    out[..., 1] = 1j * flip * oldest_l + keep * oldest_r
    return out.reshape(rows, cols)


def apply_conditional_flip(state: WalkState, table: HistoryRhoTable) -> WalkState:
    """Retoss the oldest register entry, conditioned on the newer results.

    Column pairs sharing their leading ``num_coins - 1`` bits are mixed by the
    toss matrix for that history; positions and newer results are untouched,
    so the operation is unitary for any table.
    """
    if table.num_coins != state.num_coins:
        raise ValueError(
            f"table is for {table.num_coins} coins, state has {state.num_coins}"
        )
    rho = table.retention_array()
    amplitudes = _flipped(state.amplitudes, np.sqrt(rho), np.sqrt(1.0 - rho))
    return WalkState(state.num_coins, state.t_max, amplitudes, state.steps_taken)


def apply_shift(state: WalkState) -> WalkState:
    """Move amplitude one site right where the retossed entry is R, left where L.

    The retossed entry is the least significant column bit, so odd columns
    move right and even columns move left.  Raises :class:`HorizonError` if
    any amplitude would leave the stored position range.
    """
    amps = state.amplitudes
    if np.any(amps[-1, 1::2]) or np.any(amps[0, 0::2]):
        raise HorizonError(
            "a shift would move amplitude beyond t_max; allocate a larger horizon"
        )
    out = np.zeros_like(amps)
    out[1:, 1::2] = amps[:-1, 1::2]
    out[:-1, 0::2] = amps[1:, 0::2]
    return WalkState(state.num_coins, state.t_max, out, state.steps_taken)


@lru_cache(maxsize=None)
def _reorder_source(num_coins: int) -> np.ndarray:
    # Column new receives old column rotl(new): relabeling the register so the
    # oldest slot moves to the front is a rotate-right on indices, and its
    # inverse gather map is the rotate-left.
    size = 1 << num_coins
    new = np.arange(size)
    src = ((new << 1) | (new >> (num_coins - 1))) & (size - 1)
    src.flags.writeable = False
    return src


def apply_reorder(state: WalkState) -> WalkState:
    """Rotate the register so the freshly retossed result is the most recent entry."""
    src = _reorder_source(state.num_coins)
    return WalkState(
        state.num_coins, state.t_max, state.amplitudes[:, src], state.steps_taken
    )


def toss(state: WalkState, table: HistoryRhoTable) -> WalkState:
    """One full history-conditioned step: retoss, move, rotate."""
    out = apply_reorder(apply_shift(apply_conditional_flip(state, table)))
    out.steps_taken = state.steps_taken + 1
    return out


def brun_toss(
    state: WalkState, coins: BrunCoinList | Sequence[float], step: int
) -> WalkState:
    """One step tossing with cycle entry ``step % len(coins)``, ignoring history.

    ``step`` counts completed steps from 0, so a fresh walk uses the first
    list entry on its first toss.  With all cycle entries equal this is
    exactly :func:`toss` with a uniform table.
    """
    rhos = tuple(coins)
    if len(rhos) != state.num_coins:
        raise ValueError(
            f"coin cycle has {len(rhos)} entries, state has {state.num_coins} coins"
        )
    rho = _check_probability(rhos[step % len(rhos)], "rho")
    half = 1 << (state.num_coins - 1)
    keep = np.full(half, np.sqrt(rho))
    flip = np.full(half, np.sqrt(1.0 - rho))
    amplitudes = _flipped(state.amplitudes, keep, flip)
    flipped = WalkState(state.num_coins, state.t_max, amplitudes, state.steps_taken)
    out = apply_reorder(apply_shift(flipped))
    out.steps_taken = state.steps_taken + 1
    return out
