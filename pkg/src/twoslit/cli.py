"""Command line front end: ``twoslit run|solve|analyze|demo``."""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .analysis import contextual_report, fringe_score, symmetry_defect
from .config import ConfigError, parse_config, render_config
from .experiment import replay_check, run
from .model import Context
from .numerics import SolverError, solve_displacement
from .plots import ascii_text, render_plot
from .records import read_json, write_csv, write_json

FLAG_KEYS = {
    "atom_radius": "atom_radius",
    "orbits": "n_orbits",
    "slit1_aperture": "slit1_aperture",
    "slit2_aperture": "slit2_aperture",
    "spins": "spins",
    "context": "context",
    "particles": "particles",
    "seed": "seed",
    "csv": "csv",
    "json": "json",
    "svg": "svg",
}


def _summary(rec) -> str:
    return (
        f"context={rec.context.value} seed={rec.seed} emitted={rec.n_emitted} "
        f"blocked={rec.n_blocked} registered={rec.n_registered} displaced={rec.n_displaced}"
    )


def cmd_run(args) -> int:
    pairs = {FLAG_KEYS[k]: str(v) for k, v in vars(args).items() if k in FLAG_KEYS and v is not None}
    cfg = parse_config(pairs, file=args.config)
    rec = run(cfg.params, cfg.context, cfg.particles, cfg.seed)
    print(_summary(rec))
    if rec.n_registered:
        print(f"fringe_score={fringe_score(rec.total):.6f} symmetry_defect={symmetry_defect(rec.total):.6f}")
    if cfg.csv:
        write_csv(rec, cfg.csv)
    if cfg.json:
        write_json(rec, None, cfg.json)
    if cfg.svg:
        render_plot(rec, cfg.svg, "svg")
    if args.ascii:
        if args.ascii == "-":
            sys.stdout.write(ascii_text(rec))
        else:
            render_plot(rec, args.ascii, "ascii")
    if args.save_config:
        Path(args.save_config).write_text(render_config(cfg), encoding="utf-8")
    return 0


def cmd_solve(args) -> int:
    y = solve_displacement(args.x)
    print(f"y={y!r}")
    print(f"residual={y + math.sin(y) - args.x!r}")
    return 0


def _print_report(report) -> None:
    for section in ("fringe_scores", "tv_distances", "symmetry_defects", "displaced_fractions"):
        print(f"{section}:")
        for k, v in getattr(report, section).items():
            print(f"  {k}: {v:.6f}")
    print("verdicts:")
    for k, v in report.verdicts.items():
        print(f"  {k}: {'PASS' if v else 'FAIL'}")


def cmd_analyze(args) -> int:
    recs = [read_json(p)[0] for p in (args.s1, args.s2, args.both)]
    report = contextual_report(*recs)
    _print_report(report)
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return 0 if report.passed else 1


def cmd_demo(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = parse_config({"particles": str(args.particles), "seed": str(args.seed)})
    recs = {}
    for ctx in Context:
        rec = run(cfg.params, ctx, cfg.particles, cfg.seed)
        recs[ctx] = rec
        write_csv(rec, out / f"{ctx.value}.csv")
        render_plot(rec, out / f"{ctx.value}.svg", "svg")
        print(_summary(rec))
    report = contextual_report(recs[Context.S1_ONLY], recs[Context.S2_ONLY], recs[Context.BOTH_RANDOM])
    for ctx, rec in recs.items():
        write_json(rec, report if ctx is Context.BOTH_RANDOM else None, out / f"{ctx.value}.json")
    render_plot(recs[Context.S1_ONLY], out / "no_interference.svg", "svg", "only slit 1 open")
    render_plot(recs[Context.BOTH_RANDOM], out / "interference.svg", "svg", "both slits open")
    render_plot(recs[Context.SEQUENTIAL_HALVES], out / "sequential.svg", "svg", "slit 1 first, then slit 2")
    if args.check_replay:
        for ctx, rec in recs.items():
            print(f"replay {ctx.value}: {'ok' if replay_check(rec) else 'MISMATCH'}")
    _print_report(report)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoslit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate one context")
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--context", help="s1, s2, both or sequential")
    p.add_argument("--particles")
    p.add_argument("--seed")
    p.add_argument("--atom-radius", dest="atom_radius")
    p.add_argument("--orbits")
    p.add_argument("--slit1-aperture", dest="slit1_aperture", help="lo,hi")
    p.add_argument("--slit2-aperture", dest="slit2_aperture", help="lo,hi")
    p.add_argument("--spins", help="alternating, all1 or all2")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.add_argument("--svg")
    p.add_argument("--ascii", help="ASCII plot path, or - for stdout")
    p.add_argument("--save-config", dest="save_config", help="write the effective config here")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("solve", help="solve y + sin(y) = x")
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="compare s1, s2 and both-slit JSON records")
    p.add_argument("s1")
    p.add_argument("s2")
    p.add_argument("both")
    p.add_argument("--out", help="write the report as JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("demo", help="run all four contexts and write the figure set")
    p.add_argument("--out", default="demo_out")
    p.add_argument("--particles", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--check-replay", action="store_true")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    except (ValueError, SolverError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
