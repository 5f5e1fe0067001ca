"""Flat key=value run configuration with fail-closed validation.

Grammar: UTF-8 text, one ``key = value`` pair per line, ``#`` starts a
comment, blank lines are ignored.  Dotted keys express nested tables, for
example ``games.B.rho.RR = 0.55``.  Unknown keys are rejected so a typo can
never silently change a run; syntax errors report line numbers and range
errors name the offending key.

Recognized keys::

    M = <int >= 1>                     register length (required with games.*)
    T = <int >= 0>                     number of steps (required)
    horizon = <int>                    position half-width, default max(T, 1)
    initial = antisymmetric | allR     starting state, default antisymmetric
    pattern = <letters>                cyclic game sequence, e.g. AABB (required)
    snapshots = <t1,t2,...>            steps at which to keep full distributions
    window = <odd int >= 1>            smoothing window, default 5
    prominence = <float in (0,1)>      peak threshold, default 0.1
    out = <path>                       default output path (stdout if absent)
    seed = <int >= 0>                  sampling seed
    games.<X>.rho.default = <float in [0,1]>
    games.<X>.rho.<H> = <float in [0,1]>   H over {L,R}, length M-1
    classical.engine = capital | history | rho-walk
    classical.<X>.kind = biased | mod3 | history
    classical.<X>.p | .p1 | .p2 | .p3 | .p4 = <float in [0,1]>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .classical import BiasedCoin, CapitalMod3, HistoryCoins
from .operators import HistoryRhoTable
from .walker import ALL_R, ANTISYMMETRIC

__all__ = ["ConfigError", "RunConfig", "parse_config"]

_GAME_KEY = re.compile(r"^games\.([A-Za-z])\.rho\.(default|[LR]+)$")
_CLASSICAL_KEY = re.compile(r"^classical\.([A-Za-z])\.(kind|p|p1|p2|p3|p4)$")

_CLASSICAL_KINDS = {"biased": BiasedCoin, "mod3": CapitalMod3, "history": HistoryCoins}
_CLASSICAL_PARAMS = {"biased": ("p",), "mod3": ("p1", "p2"), "history": ("p1", "p2", "p3", "p4")}
_ENGINES = ("capital", "history", "rho-walk")


class ConfigError(ValueError):
    """Configuration rejected; the message names the offending key or line."""


@dataclass(frozen=True)
class RunConfig:
    """A fully validated run description."""

    steps: int
    pattern: str
    num_coins: int | None
    horizon: int
    initial: str
    games: dict[str, HistoryRhoTable] = field(default_factory=dict)
    classical_engine: str | None = None
    classical_games: dict = field(default_factory=dict)
    snapshots: tuple[int, ...] = ()
    window: int = 5
    prominence: float = 0.1
    out: str | None = None
    seed: int | None = None


class _Raw:
    """Key/value pairs plus source lines, consumed as they are validated."""

    def __init__(self) -> None:
        self.values: dict[str, str] = {}
        self.lines: dict[str, int] = {}

    def where(self, key: str) -> str:
        line = self.lines.get(key, 0)
        return f" (line {line})" if line else ""

    def take(self, key: str) -> str | None:
        return self.values.pop(key, None)

    def take_int(self, key: str, minimum: int | None = None) -> int | None:
        text = self.take(key)
        if text is None:
            return None
        try:
            value = int(text)
        except ValueError:
            raise ConfigError(f"{key} = {text!r} is not an integer{self.where(key)}") from None
        if minimum is not None and value < minimum:
            raise ConfigError(f"{key} = {value} must be >= {minimum}{self.where(key)}")
        return value

    def take_float(self, key: str) -> float | None:
        text = self.take(key)
        if text is None:
            return None
        try:
            return float(text)
        except ValueError:
            raise ConfigError(f"{key} = {text!r} is not a number{self.where(key)}") from None

    def take_probability(self, key: str) -> float | None:
        value = self.take_float(key)
        if value is not None and not 0.0 <= value <= 1.0:
            raise ConfigError(f"{key} = {value} must lie in [0, 1]{self.where(key)}")
        return value


def _scan_lines(text: str, raw: _Raw) -> None:
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {body!r}")
        key, value = (part.strip() for part in body.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value")
        if key in raw.values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw.values[key] = value
        raw.lines[key] = lineno


def _build_games(raw: _Raw, num_coins: int | None) -> dict[str, HistoryRhoTable]:
    defaults: dict[str, float] = {}
    overrides: dict[str, dict[str, float]] = {}
    for key in [k for k in raw.values if k.startswith("games.")]:
        match = _GAME_KEY.match(key)
        if match is None:
            raise ConfigError(f"unknown key {key!r}{raw.where(key)}")
        letter, history = match.groups()
        value = raw.take_probability(key)
        if history == "default":
            defaults[letter] = value
        else:
            overrides.setdefault(letter, {})[history] = value
    letters = sorted(set(defaults) | set(overrides))
    if letters and num_coins is None:
        raise ConfigError("M is required when games.* keys are present")
    games: dict[str, HistoryRhoTable] = {}
    for letter in letters:
        for history in overrides.get(letter, {}):
            if len(history) != num_coins - 1:
                raise ConfigError(
                    f"games.{letter}.rho.{history}: history length must be M-1 = {num_coins - 1}"
                )
        try:
            if letter in defaults:
                games[letter] = HistoryRhoTable.with_overrides(
                    num_coins, defaults[letter], overrides.get(letter, {})
                )
            else:
                games[letter] = HistoryRhoTable(num_coins, overrides.get(letter, {}))
        except ValueError as exc:
            raise ConfigError(f"games.{letter}: {exc}") from None
    return games


def _build_classical(raw: _Raw) -> dict:
    by_letter: dict[str, dict[str, str]] = {}
    for key in [k for k in raw.values if k.startswith("classical.") and k != "classical.engine"]:
        match = _CLASSICAL_KEY.match(key)
        if match is None:
            raise ConfigError(f"unknown key {key!r}{raw.where(key)}")
        letter, param = match.groups()
        by_letter.setdefault(letter, {})[param] = key
    specs: dict = {}
    for letter, params in sorted(by_letter.items()):
        kind_key = params.pop("kind", None)
        if kind_key is None:
            raise ConfigError(f"classical.{letter}.kind is required")
        kind = raw.take(kind_key)
        if kind not in _CLASSICAL_KINDS:
            raise ConfigError(
                f"classical.{letter}.kind = {kind!r} must be one of "
                f"{sorted(_CLASSICAL_KINDS)}{raw.where(kind_key)}"
            )
        wanted = _CLASSICAL_PARAMS[kind]
        extra = sorted(set(params) - set(wanted))
        if extra:
            raise ConfigError(
                f"classical.{letter}: parameters {extra} do not apply to kind {kind!r}"
            )
        values = {}
        for name in wanted:
            if name not in params:
                raise ConfigError(f"classical.{letter}.{name} is required for kind {kind!r}")
            values[name] = raw.take_probability(params[name])
        specs[letter] = _CLASSICAL_KINDS[kind](**values)
    return specs


def parse_config(text: str, overrides: Mapping[str, str] | None = None) -> RunConfig:
    """Parse and validate configuration text, with optional flag overrides.

    ``overrides`` maps config keys to replacement values (already stringified)
    and wins over the file, letting command-line flags take precedence.
    """
    raw = _Raw()
    _scan_lines(text, raw)
    for key, value in (overrides or {}).items():
        raw.values[key] = str(value)
        raw.lines.setdefault(key, 0)

    steps = raw.take_int("T", minimum=0)
    if steps is None:
        raise ConfigError("T is required")
    pattern = raw.take("pattern")
    if pattern is None:
        raise ConfigError("pattern is required")
    if not pattern.isalpha():
        raise ConfigError(f"pattern = {pattern!r} must be letters only")

    num_coins = raw.take_int("M", minimum=1)
    horizon = raw.take_int("horizon", minimum=1)
    if horizon is None:
        horizon = max(steps, 1)
    elif horizon < steps:
        raise ConfigError(f"horizon = {horizon} is smaller than T = {steps}")

    initial = raw.take("initial")
    if initial is None:
        initial = ANTISYMMETRIC
    elif initial not in (ANTISYMMETRIC, ALL_R):
        raise ConfigError(
            f"initial = {initial!r} must be {ANTISYMMETRIC!r} or {ALL_R!r}"
        )

    snapshots: tuple[int, ...] = ()
    snapshot_text = raw.take("snapshots")
    if snapshot_text is not None:
        try:
            snapshots = tuple(int(part.strip()) for part in snapshot_text.split(","))
        except ValueError:
            raise ConfigError(f"snapshots = {snapshot_text!r} must be comma-separated integers") from None
        bad = [s for s in snapshots if not 0 <= s <= steps]
        if bad:
            raise ConfigError(f"snapshots {bad} outside [0, T]")

    window = raw.take_int("window", minimum=1)
    if window is None:
        window = 5
    elif window % 2 == 0:
        raise ConfigError(f"window = {window} must be odd")

    prominence = raw.take_float("prominence")
    if prominence is None:
        prominence = 0.1
    elif not 0.0 < prominence < 1.0:
        raise ConfigError(f"prominence = {prominence} must lie in (0, 1)")

    out = raw.take("out")
    seed = raw.take_int("seed", minimum=0)

    engine = raw.take("classical.engine")
    if engine is not None and engine not in _ENGINES:
        raise ConfigError(f"classical.engine = {engine!r} must be one of {list(_ENGINES)}")

    games = _build_games(raw, num_coins)
    classical_games = _build_classical(raw)

    if raw.values:
        key = min(raw.values, key=lambda k: raw.lines.get(k, 0))
        raise ConfigError(f"unknown key {key!r}{raw.where(key)}")

    undefined = sorted(set(pattern) - set(games) - set(classical_games))
    if undefined:
        raise ConfigError(f"pattern letters {undefined} have no game definition")

    return RunConfig(
        steps=steps,
        pattern=pattern,
        num_coins=num_coins,
        horizon=horizon,
        initial=initial,
        games=games,
        classical_engine=engine,
        classical_games=classical_games,
        snapshots=snapshots,
        window=window,
        prominence=prominence,
        out=out,
        seed=seed,
    )
