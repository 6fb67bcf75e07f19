"""Slip coefficient error against moment order for both wall conditions.

Writes one CSV per (condition, parity) branch and prints the fitted
log2-log2 slopes.  Odd orders use M = 2^k + 1, even orders M = 2^k.
"""

import argparse
import csv
from pathlib import Path

from hsmoments.assembly import CollisionModel
from hsmoments.benchmarks import KRAMERS_REFERENCE
from hsmoments.problems import ProblemConfig, fit_log2_slope, sweep_orders


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--model", choices=("bgk", "shakhov"), default="bgk")
    parser.add_argument("--kmin", type=int, default=3)
    parser.add_argument("--kmax", type=int, default=7)
    parser.add_argument("--outdir", type=Path, default=Path("convergence"))
    args = parser.parse_args()

    model = CollisionModel.bgk() if args.model == "bgk" else CollisionModel.shakhov()
    reference = KRAMERS_REFERENCE[args.model]
    args.outdir.mkdir(parents=True, exist_ok=True)
    for bc in ("new", "grad"):
        for parity, shift in (("even", 0), ("odd", 1)):
            orders = [2**k + shift for k in range(args.kmin, args.kmax + 1)]
            rows = sweep_orders(ProblemConfig("kramers", orders[0], model, bc=bc), orders, reference)
            path = args.outdir / f"{args.model}_{bc}_{parity}.csv"
            with path.open("w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["M", "eta", "log2_error"])
                for r in rows:
                    writer.writerow([r.order, f"{r.coefficient:.17g}", f"{r.log2_error:.17g}"])
            print(f"{bc:4s} {parity:4s} slope {fit_log2_slope(rows):+.3f}  -> {path}")


if __name__ == "__main__":
    main()
