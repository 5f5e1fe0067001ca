"""Walker states on the integer line with a register of recent step results.

The register keeps the last ``num_coins`` step results as a string over
``L`` (a step left) and ``R`` (a step right), most recent result first.
Amplitudes sit in a dense complex array with one row per position in
``[-t_max, t_max]`` and one column per register string; the column index
encodes the string with the most recent result as the most significant bit
(L = 0, R = 1), so ``|x, c>`` lives at row ``x + t_max``, column
``coins_to_index(c)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "L",
    "R",
    "STEP",
    "HorizonError",
    "NormalizationError",
    "coins_to_index",
    "index_to_coins",
    "complement",
    "WalkState",
    "new_state",
    "norm",
    "fidelity",
    "ProbabilityDistribution",
    "position_distribution",
    "Moments",
    "moments",
]

L = "L"
R = "R"

#: Step increment encoded by each register letter.
STEP = {L: -1, R: +1}


class HorizonError(RuntimeError):
    """An evolution step would move amplitude outside the stored position range."""


class NormalizationError(ValueError):
    """A unit-norm state or distribution was required but not supplied."""


def _check_register(coins: str, num_coins: int | None = None) -> None:
    if num_coins is not None and len(coins) != num_coins:
        raise ValueError(
            f"register {coins!r} has length {len(coins)}, expected {num_coins}"
        )
    if set(coins) - {L, R}:
        raise ValueError(f"register {coins!r} contains letters other than L and R")


def coins_to_index(coins: str) -> int:
    """Encode a register string as a column index (most recent letter = MSB)."""
    _check_register(coins)
    index = 0
    for letter in coins:
        index = (index << 1) | (letter == R)
    return index


def index_to_coins(index: int, num_coins: int) -> str:
    """Inverse of :func:`coins_to_index` for a register of ``num_coins`` letters."""
    if num_coins < 1:
        raise ValueError(f"num_coins must be >= 1, got {num_coins}")
    if not 0 <= index < (1 << num_coins):
        raise ValueError(f"index {index} out of range for {num_coins} coins")
    return "".join(
        R if (index >> shift) & 1 else L for shift in range(num_coins - 1, -1, -1)
    )


def complement(coins: str) -> str:
    """Swap L and R throughout a register or history string."""
    _check_register(coins)
    return "".join(R if letter == L else L for letter in coins)


@dataclass
class WalkState:
    """Dense amplitude table over (position, coin register).

    Attributes
    ----------
    num_coins : int
        Number of remembered step results (register length, >= 1).
    t_max : int
        Largest representable position magnitude; fixed at construction.
    amplitudes : numpy.ndarray
        Complex array of shape ``(2 * t_max + 1, 2 ** num_coins)``.
    steps_taken : int
        Number of completed evolution steps.
    """

    num_coins: int
    t_max: int
    amplitudes: np.ndarray
    steps_taken: int = 0

    def copy(self) -> "WalkState":
        return WalkState(
            self.num_coins, self.t_max, self.amplitudes.copy(), self.steps_taken
        )

    def _row(self, x: int) -> int:
        if abs(x) > self.t_max:
            raise IndexError(f"position {x} outside [-{self.t_max}, {self.t_max}]")
        return x + self.t_max

    def amplitude(self, x: int, coins: str) -> complex:
        """Amplitude of the basis state at position ``x`` with register ``coins``."""
        _check_register(coins, self.num_coins)
        return complex(self.amplitudes[self._row(x), coins_to_index(coins)])

    def set_amplitude(self, x: int, coins: str, value: complex) -> None:
        """Overwrite one basis amplitude; norm is re-checked at evolution entry points."""
        _check_register(coins, self.num_coins)
        self.amplitudes[self._row(x), coins_to_index(coins)] = value

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def positions(self) -> np.ndarray:
        """All representable positions, ascending."""
        return np.arange(-self.t_max, self.t_max + 1)


def new_state(num_coins: int, t_max: int) -> WalkState:
    """Allocate an all-zero state; inject an initial state before evolving."""
    if num_coins < 1:
        raise ValueError(f"num_coins must be >= 1, got {num_coins}")
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    shape = (2 * t_max + 1, 1 << num_coins)
    return WalkState(num_coins, t_max, np.zeros(shape, dtype=np.complex128))


def norm(state: WalkState) -> float:
    """Euclidean norm of the full amplitude table."""
    return state.norm()


def fidelity(a: WalkState, b: WalkState) -> float:
    """``|<a|b>|`` for states on matching grids; insensitive to global phase."""
    if (a.num_coins, a.t_max) != (b.num_coins, b.t_max):
        raise ValueError("states live on different (num_coins, t_max) grids")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)))


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Probabilities over lattice positions, ascending in ``positions``."""

    positions: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=int)
        prob = np.asarray(self.probabilities, dtype=float)
        if pos.ndim != 1 or pos.shape != prob.shape or pos.size == 0:
            raise ValueError(
                "positions and probabilities must be matching non-empty 1-D arrays"
            )
        if pos.size > 1 and np.any(np.diff(pos) <= 0):
            raise ValueError("positions must be strictly increasing")
        if np.any(prob < 0):
            raise ValueError("probabilities must be non-negative")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "probabilities", prob)

    @classmethod
    def from_mapping(cls, mapping) -> "ProbabilityDistribution":
        xs = sorted(mapping)
        return cls(
            np.array(xs, dtype=int), np.array([mapping[x] for x in xs], dtype=float)
        )

    def probability(self, x: int) -> float:
        idx = int(np.searchsorted(self.positions, x))
        if idx < self.positions.size and self.positions[idx] == x:
            return float(self.probabilities[idx])
        return 0.0

    def total(self) -> float:
        return float(self.probabilities.sum())

    def as_dict(self) -> dict[int, float]:
        return {int(x): float(p) for x, p in zip(self.positions, self.probabilities)}


def position_distribution(state: WalkState) -> ProbabilityDistribution:
    """Marginal position probabilities, traced over the coin register.

    The support is the contiguous run of occupied lattice positions; when all
    occupied positions share one parity (the generic case for walks started at
    the origin) the run is reported on that parity sublattice, interior zeros
    included.
    """
    total = state.norm()
    if abs(total - 1.0) > 1e-9:
        raise NormalizationError(f"state norm is {total:.12g}, expected 1 within 1e-9")
    p = (np.abs(state.amplitudes) ** 2).sum(axis=1)
    xs = state.positions
    occupied = np.nonzero(p)[0]
    lo, hi = int(occupied[0]), int(occupied[-1])
    parities = {int(xs[i]) & 1 for i in occupied}
    step = 2 if len(parities) == 1 else 1
    rows = np.arange(lo, hi + 1, step)
    return ProbabilityDistribution(xs[rows], p[rows])


@dataclass(frozen=True)
class Moments:
    """Mean and standard deviation of a position distribution."""

    mean: float
    std: float


def moments(dist: ProbabilityDistribution) -> Moments:
    """First two moments of a normalized distribution."""
    total = dist.total()
    if abs(total - 1.0) > 1e-9:
        raise NormalizationError(
            f"distribution sums to {total:.12g}, expected 1 within 1e-9"
        )
    x = dist.positions.astype(float)
    mean = float(np.dot(dist.probabilities, x))
    var = float(np.dot(dist.probabilities, x * x) - mean * mean)
    if var < -1e-10:
        raise ValueError(f"variance {var} is negative beyond rounding tolerance")
    return Moments(mean, float(np.sqrt(max(var, 0.0))))
