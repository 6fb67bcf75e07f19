"""Print computed Pr*eta_t next to the published thermal slip values."""

import argparse

from hsmoments.assembly import CollisionModel
from hsmoments.benchmarks import THERMAL_SLIP, THERMAL_SLIP_COLUMNS
from hsmoments.problems import ProblemConfig, run_problem


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=2e-6, help="flag entries farther than this")
    args = parser.parse_args()

    models = {"bgk": CollisionModel.bgk(), "shakhov": CollisionModel.shakhov()}
    columns = [(k, col) for k, col in enumerate(THERMAL_SLIP_COLUMNS) if col[0] == "moments"]
    print("chi  " + "  ".join(f"{m + ' M=' + str(o):>12s} {'printed':>8s} " for _, (_, m, o) in columns))
    for chi, row in THERMAL_SLIP.items():
        cells = []
        for k, (_, model, order) in columns:
            got = run_problem(ProblemConfig("thermal-slip", order, models[model], chi)).coefficient
            flag = "*" if abs(got - row[k]) > args.tol else " "
            cells.append(f"{got:12.7f} {row[k]:8.6f}{flag}")
        print(f"{chi:.1f}  " + "  ".join(cells))
    print(f"* differs from the printed value by more than {args.tol:g}")


if __name__ == "__main__":
    main()
