"""Command line front end.

Exit codes: 0 on success, 1 for configuration or usage errors, 2 for runtime
failures.  All tabular output is CSV (stdout unless ``--out`` is given) and
plots are self-contained SVG files rendered without any plotting dependency.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .analysis import analyze_peaks
from .classical import (
    BiasedCoin,
    CapitalMod3,
    HistoryCoins,
    capital_game_trajectory,
    classical_mean_trajectory,
    history_mix_trajectory,
    monte_carlo_trajectory,
)
from .config import ConfigError, RunConfig, parse_config
from .output import emit_svg_plot, write_csv
from .walker import (
    POSITIVE_MEAN_THRESHOLD,
    build_initial_state,
    run_sequence,
    scan_sequences,
    sweep_parameter,
)

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """Parser whose usage failures exit with code 1 (validation error)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(parser, plot_style=None):
    parser.add_argument("--config", required=True, help="path to a key=value config file")
    parser.add_argument("--out", help="output CSV path (default: stdout)")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--window", type=int, help="override the smoothing window")
    parser.add_argument("--prominence", type=float, help="override the peak threshold")
    if plot_style is not None:
        parser.add_argument(
            "--emit-plot",
            metavar="PATH",
            help="also render the written CSV as an SVG chart (requires --out)",
        )
        parser.set_defaults(plot_style=plot_style)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="histwalk", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    walk = commands.add_parser("walk", help="multi-coin walk experiments")
    walk_sub = walk.add_subparsers(dest="subcommand", required=True)

    run = walk_sub.add_parser("run", help="trajectory of mean and spread per step")
    _add_common(run, plot_style="line")
    run.set_defaults(handler=_cmd_walk_run)

    dist = walk_sub.add_parser("dist", help="final position distribution")
    _add_common(dist, plot_style="scatter")
    dist.add_argument("--peaks", metavar="PATH", help="also write a peak-report CSV")
    dist.set_defaults(handler=_cmd_walk_dist)

    sweep = walk_sub.add_parser("sweep", help="final moments as one rho entry varies")
    _add_common(sweep, plot_style="line")
    sweep.add_argument("--param", required=True, help="history key to vary, e.g. RR")
    sweep.add_argument("--from", dest="sweep_from", type=float, required=True)
    sweep.add_argument("--to", dest="sweep_to", type=float, required=True)
    sweep.add_argument(
        "--steps", dest="grid_points", type=int, required=True,
        help="number of grid points, endpoints included",
    )
    sweep.set_defaults(handler=_cmd_walk_sweep)

    scan = walk_sub.add_parser("scan", help="final mean for every pattern up to a length")
    _add_common(scan)
    scan.add_argument("--max-len", dest="max_len", type=int, required=True)
    scan.set_defaults(handler=_cmd_walk_scan)

    classical = commands.add_parser("classical", help="classical baseline games")
    classical_sub = classical.add_subparsers(dest="subcommand", required=True)
    crun = classical_sub.add_parser("run", help="mean capital or position per step")
    _add_common(crun, plot_style="line")
    crun.add_argument(
        "--monte-carlo", dest="monte_carlo", type=int, metavar="N",
        help="sample N trajectories instead of evolving exactly; adds a stderr column",
    )
    crun.set_defaults(handler=_cmd_classical_run)

    plot = commands.add_parser("plot", help="render existing CSV files as one SVG")
    plot.add_argument("inputs", nargs="+", help="two-column CSV files")
    plot.add_argument("--out", required=True, help="SVG output path")
    plot.add_argument("--style", choices=("line", "scatter"), default="line")
    plot.set_defaults(handler=_cmd_plot)

    return parser


def _load_config(args) -> RunConfig:
    path = Path(args.config)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    overrides = {}
    for key in ("seed", "window", "prominence", "out"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = str(value)
    return parse_config(text, overrides)


def _require_quantum(config: RunConfig) -> None:
    if config.num_coins is None:
        raise ConfigError("M is required for walk commands")
    missing = sorted(set(config.pattern) - set(config.games))
    if missing:
        raise ConfigError(f"pattern letters {missing} have no games.* definition")


def _maybe_plot(args, config: RunConfig) -> None:
    plot_path = getattr(args, "emit_plot", None)
    if plot_path:
        if not config.out:
            raise ConfigError("--emit-plot needs --out; the plot renders the written CSV")
        emit_svg_plot([config.out], plot_path, style=args.plot_style)


def _cmd_walk_run(args) -> None:
    config = _load_config(args)
    _require_quantum(config)
    initial = build_initial_state(config.num_coins, config.initial, config.horizon)
    trajectory = run_sequence(
        initial, config.games, config.pattern, config.steps, config.snapshots
    )
    rows = [
        (t, mean, std)
        for t, (mean, std) in enumerate(zip(trajectory.means, trajectory.stds))
    ]
    write_csv(("t", "mean", "std"), rows, config.out)
    _maybe_plot(args, config)


def _cmd_walk_dist(args) -> None:
    config = _load_config(args)
    _require_quantum(config)
    initial = build_initial_state(config.num_coins, config.initial, config.horizon)
    trajectory = run_sequence(
        initial, config.games, config.pattern, config.steps, snapshot_at=[config.steps]
    )
    dist = trajectory.snapshots[config.steps]
    write_csv(("x", "p"), zip(dist.positions, dist.probabilities), config.out)
    if args.peaks:
        report = analyze_peaks(dist, config.window, config.prominence)
        write_csv(("position", "height"), report.peaks, args.peaks)
    _maybe_plot(args, config)


def _cmd_walk_sweep(args) -> None:
    config = _load_config(args)
    _require_quantum(config)
    if len(config.pattern) != 1:
        raise ConfigError("walk sweep needs a single-letter pattern naming the base game")
    table = config.games[config.pattern]
    key = args.param
    if key not in table.rho:
        raise ConfigError(
            f"--param {key!r} is not a history of length M-1 = {config.num_coins - 1}"
        )
    if args.grid_points < 1:
        raise ConfigError("--steps must be >= 1")
    for bound in (args.sweep_from, args.sweep_to):
        if not 0.0 <= bound <= 1.0:
            raise ConfigError(f"sweep bound {bound} must lie in [0, 1]")
    grid = np.linspace(args.sweep_from, args.sweep_to, args.grid_points)
    results = sweep_parameter(table, key, grid, config.steps, config.initial)
    rows = [(rho, stat.mean, stat.std) for rho, stat in results]
    write_csv(("rho", "mean", "std"), rows, config.out)
    _maybe_plot(args, config)


def _cmd_walk_scan(args) -> None:
    config = _load_config(args)
    _require_quantum(config)
    if args.max_len < 1:
        raise ConfigError("--max-len must be >= 1")
    results = scan_sequences(
        config.games, args.max_len, config.num_coins, config.steps, config.initial
    )
    rows = [
        (pattern, mean, 1 if mean > POSITIVE_MEAN_THRESHOLD else 0)
        for pattern, mean in results.items()
    ]
    write_csv(("pattern", "mean", "positive"), rows, config.out)


def _classical_games(config: RunConfig, allowed, engine: str):
    games = {}
    for letter in sorted(set(config.pattern)):
        spec = config.classical_games.get(letter)
        if spec is None:
            raise ConfigError(f"pattern letter {letter!r} has no classical.* definition")
        if not isinstance(spec, allowed):
            raise ConfigError(
                f"classical.{letter} has a kind unusable with the {engine!r} engine"
            )
        games[letter] = spec
    return games


def _cmd_classical_run(args) -> None:
    config = _load_config(args)
    engine = config.classical_engine
    if engine is None:
        raise ConfigError("classical.engine is required for classical run")
    if engine == "rho-walk":
        if config.num_coins is None:
            raise ConfigError("M is required for the rho-walk engine")
        if len(config.pattern) != 1 or config.pattern not in config.games:
            raise ConfigError("rho-walk needs a single-letter pattern naming a games.* table")
        subject = config.games[config.pattern]
    elif engine == "capital":
        subject = _classical_games(config, (BiasedCoin, CapitalMod3), engine)
    else:
        subject = _classical_games(config, (BiasedCoin, HistoryCoins), engine)

    if args.monte_carlo is not None:
        if args.monte_carlo < 1:
            raise ConfigError("--monte-carlo must be >= 1")
        if config.seed is None:
            raise ConfigError("--monte-carlo needs a seed (flag --seed or config key)")
        means, errors = monte_carlo_trajectory(
            subject, config.pattern, config.steps, args.monte_carlo, config.seed
        )
        rows = [(t, m, e) for t, (m, e) in enumerate(zip(means, errors))]
        write_csv(("t", "mean", "stderr"), rows, config.out)
    else:
        if engine == "rho-walk":
            means = classical_mean_trajectory(subject, config.steps)
        elif engine == "capital":
            means = capital_game_trajectory(subject, config.pattern, config.steps)
        else:
            means = history_mix_trajectory(subject, config.pattern, config.steps)
        write_csv(("t", "mean"), list(enumerate(means)), config.out)
    _maybe_plot(args, config)


def _cmd_plot(args) -> None:
    emit_svg_plot(args.inputs, args.out, style=args.style)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.handler(args)
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports, not raises
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
