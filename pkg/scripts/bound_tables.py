"""Write CSV bound tables for a standard set of classes.

    python scripts/bound_tables.py --out results/tables --n 10
"""

import argparse
import math
import pathlib
from fractions import Fraction

from logcoeff.bounds import bound_table, table_csv
from logcoeff.classes import ClassSpec

CLASSES = {
    "koebe": ClassSpec.janowski(1, -1),
    "janowski_1_-1_2": ClassSpec.janowski(1, Fraction(-1, 2)),
    "janowski_1_0": ClassSpec.janowski(1, 0),
    "spiral_pi4_1_2": ClassSpec.spiral(math.pi / 4, Fraction(1, 2)),
    "sstar_1_2": ClassSpec.strongly_starlike(Fraction(1, 2)),
    "F_1": ClassSpec.F(1),
    "F_2": ClassSpec.F(2),
    "F_27_10": ClassSpec.F(Fraction(27, 10)),
    "F_3": ClassSpec.F(3),
    "G_1_2": ClassSpec.G(Fraction(1, 2)),
    "G_1": ClassSpec.G(1),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/tables")
    ap.add_argument("--n", type=int, default=10)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    combined = []
    for name, spec in CLASSES.items():
        rows = bound_table(spec, args.n)
        (out / f"{name}.csv").write_text(table_csv(rows))
        combined += rows
        na = sum(r["applicable"] == "false" for r in rows)
        print(f"{name:16s} {len(rows):3d} rows, {na} not applicable")
    (out / "all.csv").write_text(table_csv(combined))


if __name__ == "__main__":
    main()
