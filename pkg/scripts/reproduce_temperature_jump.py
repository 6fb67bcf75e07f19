"""Print computed BGK temperature jump coefficients next to the published ones."""

import argparse

from hsmoments.benchmarks import TEMPERATURE_JUMP, TEMPERATURE_JUMP_ORDERS
from hsmoments.problems import ProblemConfig, run_problem


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bc", choices=("new", "grad"), default="new")
    args = parser.parse_args()

    print("chi  reference " + " ".join(f"{'M=' + str(o):>19s}" for o in TEMPERATURE_JUMP_ORDERS))
    for chi, row in TEMPERATURE_JUMP.items():
        cells = []
        for order, printed in zip(TEMPERATURE_JUMP_ORDERS, row[1:]):
            got = run_problem(ProblemConfig("temperature-jump", order, chi=chi, bc=args.bc)).coefficient
            cells.append(f"{got:9.6f} ({printed:.6g})")
        print(f"{chi:.1f}  {row[0]:9.6g} " + " ".join(cells))


if __name__ == "__main__":
    main()
