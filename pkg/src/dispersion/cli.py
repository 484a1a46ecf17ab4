"""Reproducible batch front end.

    dispersion tables|densities|dft|ansatz|r0
        --channel A|B|C|all --orders 1..10 --digits 9 --format csv|json --out DIR

All exact computation happens upstream; this layer only renders decimals,
writes CSV/JSON files (LF line endings, '.' decimal separator, provenance
header comments) and maps failures to exit codes: 2 for configuration
errors, 1 for computation errors, 0 on success.  DISPERSION_THREADS > 1
dispatches independent (channel, order) jobs to worker processes; outputs
are written in a fixed order so file content never depends on scheduling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .densities import (
    default_grid,
    densities_for_channel,
    density_coeffs,
    emit_density_grid,
)
from .dft import ansatz_optimize, dft_solve, sk_zeroth_energy
from .exact import decimal_string
from .solver import DEFAULT_MAX_ORDER, solve_channel

CHANNEL_CHOICES = ("A", "B", "C", "all")
BITGROWTH_WARN_ORDER = 14


@dataclass
class RunConfig:
    command: str
    channels: tuple[str, ...]
    orders: tuple[int, ...]
    out_dir: Path
    fmt: str = "csv"
    digits: int = 9


def parse_orders(text: str, max_order: int) -> tuple[int, ...]:
    """Order range syntax: 'N' or 'LO..HI' (inclusive)."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order range {text!r}; use e.g. 3 or 1..10")
    if lo < 1 or hi > max_order or lo > hi:
        raise argparse.ArgumentTypeError(
            f"order range {text!r} outside [1, {max_order}] or empty"
        )
    return tuple(range(lo, hi + 1))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dispersion",
        description="Exact dispersion constants, perturbation densities and "
        "variational baselines for a pair of ground-state hydrogen atoms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("tables", "energy and normalization constants per truncation order"),
        ("densities", "perturbation density grids per density and order"),
        ("dft", "density-functional stationary energies per order"),
        ("ansatz", "optimized power-ansatz parameters and energies"),
        ("r0", "zeroth-order baseline energies"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--channel", choices=CHANNEL_CHOICES, default="all")
        p.add_argument("--orders", default="1..10", help="N or LO..HI (default 1..10)")
        p.add_argument("--digits", type=int, default=9, help="decimal places (1..50)")
        p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
        p.add_argument("--out", default="dispersion_out", help="output directory")
        p.add_argument(
            "--max-order",
            type=int,
            default=DEFAULT_MAX_ORDER,
            help=f"upper bound accepted by --orders (default {DEFAULT_MAX_ORDER})",
        )
    return parser


def make_config(args) -> RunConfig:
    if not 1 <= args.digits <= 50:
        raise argparse.ArgumentTypeError("digits must be in [1, 50]")
    if args.max_order > BITGROWTH_WARN_ORDER:
        print(
            f"warning: orders beyond {BITGROWTH_WARN_ORDER} grow coefficient size "
            "quickly; expect long runtimes",
            file=sys.stderr,
        )
    channels = ("A", "B", "C") if args.channel == "all" else (args.channel,)
    orders = parse_orders(args.orders, args.max_order)
    return RunConfig(
        command=args.command,
        channels=channels,
        orders=orders,
        out_dir=Path(args.out),
        fmt=args.fmt,
        digits=args.digits,
    )


def provenance(cfg: RunConfig, **extra) -> str:
    fields = {"tool": f"dispersion {__version__}", "command": cfg.command, **extra}
    return "# " + " ".join(f"{k}={v}" for k, v in fields.items())


def write_text(path: Path, lines) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="ascii", newline="\n"
    )


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("DISPERSION_THREADS", "1")))
    except ValueError:
        return 1


def run_jobs(fn, jobs):
    """Map fn over jobs, in processes if DISPERSION_THREADS > 1.

    Results are returned in job order regardless of scheduling.
    """
    n = worker_count()
    if n == 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, jobs))


def _solve_job(job):
    tag, order = job
    return solve_channel(tag, order)


def cmd_tables(cfg: RunConfig) -> None:
    for tag in cfg.channels:
        records = run_jobs(_solve_job, [(tag, order) for order in cfg.orders])
        rows = [
            provenance(cfg, channel=tag, orders=f"{cfg.orders[0]}..{cfg.orders[-1]}", method="exact"),
            "order,energy_constant,normalization_constant",
        ]
        for rec in records:
            rows.append(
                f"{rec.order},{decimal_string(rec.energy_constant, cfg.digits)},"
                f"{decimal_string(rec.normalization_constant, cfg.digits)}"
            )
        if cfg.fmt == "csv":
            write_text(cfg.out_dir / f"tables_{tag}.csv", rows)
        write_json(
            cfg.out_dir / f"tables_{tag}.json",
            [rec.to_json(cfg.digits) for rec in records],
        )


def _density_job(job):
    tag, order = job
    rec = solve_channel(tag, order)
    out = []
    for which in densities_for_channel(tag):
        fn = density_coeffs(rec, which)
        for regime in ("short", "long"):
            rows = emit_density_grid(fn, default_grid(regime))
            out.append((which, order, regime, [(float(x), float(v)) for x, v in rows]))
    return out


def cmd_densities(cfg: RunConfig) -> None:
    jobs = [(tag, order) for tag in cfg.channels for order in cfg.orders]
    for chunk in run_jobs(_density_job, jobs):
        for which, order, regime, rows in chunk:
            lines = [
                provenance(cfg, density=f"f{which}", order=order, regime=regime, method="exact"),
                "xi,f",
            ]
            lines += [f"{x:.12g},{v:.12g}" for x, v in rows]
            write_text(cfg.out_dir / f"density_f{which}_order{order:02d}_{regime}.csv", lines)


def _dft_job(job):
    tag, order = job
    return dft_solve(tag, order)


def cmd_dft(cfg: RunConfig) -> None:
    for tag in cfg.channels:
        records = run_jobs(_dft_job, [(tag, order) for order in cfg.orders])
        rows = [
            provenance(cfg, channel=tag, orders=f"{cfg.orders[0]}..{cfg.orders[-1]}", method="dft"),
            "order,energy_constant",
        ]
        rows += [f"{rec.order},{decimal_string(rec.energy_constant, cfg.digits)}" for rec in records]
        if cfg.fmt == "csv":
            write_text(cfg.out_dir / f"dft_{tag}.csv", rows)
        write_json(cfg.out_dir / f"dft_{tag}.json", [rec.to_json(cfg.digits) for rec in records])


def cmd_ansatz(cfg: RunConfig) -> None:
    rows = [provenance(cfg, method="ansatz"), "channel,lambda,nu,energy_constant"]
    payload = []
    for tag in cfg.channels:
        params, energy = ansatz_optimize(tag)
        rows.append(f"{tag},{params.lam:.10g},{params.nu:.10g},{energy:.10g}")
        payload.append(
            {
                "channel": tag,
                "method": "ansatz",
                "params": {"lambda": params.lam, "nu": params.nu},
                "energy_constant": {"decimal": f"{energy:.10g}"},
            }
        )
    if cfg.fmt == "csv":
        write_text(cfg.out_dir / "ansatz.csv", rows)
    write_json(cfg.out_dir / "ansatz.json", payload)


def cmd_r0(cfg: RunConfig) -> None:
    rows = [provenance(cfg, method="r0"), "channel,energy_constant"]
    payload = []
    for tag in cfg.channels:
        val = sk_zeroth_energy(tag)
        rows.append(f"{tag},{val:.10g}")
        payload.append(
            {"channel": tag, "method": "r0", "energy_constant": {"decimal": f"{val:.10g}"}}
        )
    if cfg.fmt == "csv":
        write_text(cfg.out_dir / "r0.csv", rows)
    write_json(cfg.out_dir / "r0.json", payload)


COMMANDS = {
    "tables": cmd_tables,
    "densities": cmd_densities,
    "dft": cmd_dft,
    "ansatz": cmd_ansatz,
    "r0": cmd_r0,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))  # exits with code 2
    try:
        COMMANDS[cfg.command](cfg)
    except Exception as exc:  # computation / io errors -> exit 1
        print(f"dispersion: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
