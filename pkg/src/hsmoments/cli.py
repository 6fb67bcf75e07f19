"""Command-line front end.

    hsmoments run   --problem kramers --order 80 --chi 1.0 --profile out.csv
    hsmoments sweep --problem kramers --orders 4:2:40 --reference 1.01619
    hsmoments replay manifest.json

Exit codes: 0 success, 2 invalid arguments, 3 ill-posed boundary system,
4 numerical inconsistency (rank or mode-count violations).
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .assembly import CollisionModel
from .errors import (
    AssemblyError,
    ConfigurationError,
    IllPosedBoundaryError,
    InconsistencyError,
    InconsistentDataError,
    InvalidArgumentError,
    UnsupportedConfigurationError,
)
from .problems import PROBLEMS, ProblemConfig, run_problem, sweep_orders

log = logging.getLogger("hsmoments")

EXIT_OK, EXIT_USAGE, EXIT_ILL_POSED, EXIT_INCONSISTENT = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def parse_orders(text: str) -> list[int]:
    """``start:step:stop`` (inclusive), ``a,b,c`` or a single order."""
    try:
        if ":" in text:
            start, step, stop = (int(t) for t in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed --orders {text!r}; expected start:step:stop") from None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", choices=PROBLEMS, required=True)
    p.add_argument("--model", choices=("bgk", "shakhov"), default="bgk")
    p.add_argument("--prandtl", type=float, default=None, help="Shakhov Prandtl number (default 2/3)")
    p.add_argument("--chi", type=float, default=1.0, help="accommodation coefficient in (0, 1]")
    p.add_argument("--bc", choices=("new", "grad"), default="new")
    p.add_argument("--drive", type=float, default=-1.0)
    p.add_argument("--manifest", default=None, help="write a run manifest (JSON) to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hsmoments", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve one configuration")
    _add_common(run)
    run.add_argument("--order", type=int, required=True)
    run.add_argument("--profile", default=None, help="CSV path for the defect profile")
    run.add_argument("--ymax", type=float, default=None, help="profile extent in scaled units")
    run.add_argument("--samples", type=int, default=200)
    run.add_argument("--json", default=None, help="JSON summary path")

    sweep = sub.add_parser("sweep", help="coefficient against moment order")
    _add_common(sweep)
    sweep.add_argument("--orders", required=True, help="start:step:stop (inclusive)")
    sweep.add_argument("--reference", type=float, default=None)
    sweep.add_argument("--out", default=None, help="CSV path (default: stdout)")

    replay = sub.add_parser("replay", help="re-run a manifest")
    replay.add_argument("manifest")
    return parser


def _model(args) -> CollisionModel:
    if args.model == "bgk":
        if args.prandtl not in (None, 1.0):
            log.warning("--prandtl is ignored for the BGK model (Pr = 1)")
        return CollisionModel.bgk()
    return CollisionModel.shakhov(2.0 / 3.0 if args.prandtl is None else args.prandtl)


def _config(args, order: int) -> ProblemConfig:
    return ProblemConfig(
        kind=args.problem,
        order=order,
        model=_model(args),
        chi=args.chi,
        drive=args.drive,
        bc=args.bc,
        samples=getattr(args, "samples", 200),
        ymax=getattr(args, "ymax", None),
    )


def summary_dict(result) -> dict:
    cfg = result.config
    return {
        "problem": cfg.kind,
        "model": cfg.model.kind,
        "prandtl": cfg.model.prandtl,
        "order": cfg.order,
        "chi": cfg.chi,
        "bc": cfg.bc,
        "coefficient_name": result.coefficient_name,
        "coefficient_value": result.coefficient,
        "counts": dict(result.counts),
        "extras": {k: v for k, v in result.extras.items() if k in ("eta_t", "u1_B", "theta_B")},
    }


def write_csv(path: Optional[str], header: Sequence[str], rows) -> None:
    out = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, (int, str)) else _fmt(v) for v in row])
    finally:
        if path:
            out.close()


def cmd_run(args) -> int:
    cfg = _config(args, args.order)
    result = run_problem(cfg)
    print(f"{result.coefficient_name} = {result.coefficient:.6f}")
    outputs = []
    if args.profile:
        write_csv(args.profile, result.profile_header, result.profile.tolist())
        outputs.append(args.profile)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(summary_dict(result), fh, indent=2)
            fh.write("\n")
        outputs.append(args.json)
    return _finish(args, cfg, outputs)


def cmd_sweep(args) -> int:
    orders = parse_orders(args.orders)
    if any(o < 3 for o in orders):
        raise UsageError("every order must be at least 3")
    cfg = _config(args, orders[0])
    rows = sweep_orders(cfg, orders, args.reference)
    header = ["M", "coefficient"] + (["log2_error"] if args.reference is not None else [])
    data = []
    for r in rows:
        line = [r.order, r.coefficient]
        if args.reference is not None:
            line.append(r.log2_error)
        data.append(line)
    write_csv(args.out, header, data)
    return _finish(args, cfg, [args.out] if args.out else [])


def _finish(args, cfg: ProblemConfig, outputs: list) -> int:
    if args.manifest:
        manifest = {
            "command": args.command,
            "argv": _strip_manifest(args.argv),
            "config": cfg.to_dict(),
            "version": __version__,
            "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
            "outputs": outputs,
        }
        with open(args.manifest, "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _strip_manifest(argv: list) -> list:
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
        elif tok == "--manifest":
            skip = True
        elif not tok.startswith("--manifest="):
            out.append(tok)
    return out


def cmd_replay(args) -> int:
    with open(args.manifest) as fh:
        manifest = json.load(fh)
    argv = list(manifest["argv"])
    return main(argv)


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "replay": cmd_replay}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    args.argv = argv
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InvalidArgumentError, UnsupportedConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IllPosedBoundaryError, InconsistentDataError) as exc:
        print(f"ill-posed boundary: {exc}", file=sys.stderr)
        return EXIT_ILL_POSED
    except (InconsistencyError, ConfigurationError, AssemblyError) as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
