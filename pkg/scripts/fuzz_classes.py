"""Fuzz every applicable proven bound for the standard classes.

    LOGCOEFF_THREADS=4 python scripts/fuzz_classes.py --samples 5000 --n 16
"""

import argparse
import math
from fractions import Fraction

from logcoeff.classes import ClassSpec
from logcoeff.explorer import verify_bounds

SPECS = [
    ClassSpec.janowski(1, -1),
    ClassSpec.janowski(1, Fraction(-1, 2)),
    ClassSpec.janowski(1, 0),
    ClassSpec.janowski(Fraction(1, 2), Fraction(-1, 3)),
    ClassSpec.spiral(math.pi / 4, 0.5),
    ClassSpec.spiral(-0.3, 0.2),
    ClassSpec.strongly_starlike(Fraction(1, 2)),
    ClassSpec.strongly_starlike(Fraction(1, 5)),
    ClassSpec.F(1),
    ClassSpec.F(3),
    ClassSpec.G(Fraction(1, 2)),
    ClassSpec.G(1),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    bad = 0
    for i, spec in enumerate(SPECS):
        rep = verify_bounds(spec, args.n, args.samples, seed=args.seed + i)
        tight = min(rep.rows, key=lambda r: r.margin)
        bad += len(rep.violations)
        print(
            f"{spec.label():40s} {'ok ' if rep.ok else 'BAD'} checks={len(rep.rows):2d} skipped={len(rep.skipped)} "
            f"tightest={tight.check}:{tight.index} margin={tight.margin:.3e} ({rep.wall_clock:.1f}s)"
        )
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
