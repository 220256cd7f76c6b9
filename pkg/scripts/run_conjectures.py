"""Probe the conjectured bounds and write one JSON report per conjecture.

    python scripts/run_conjectures.py --out results/conjectures --seed 0
"""

import argparse
import json
import pathlib

from logcoeff.explorer import CONJECTURES, DEFAULT_BUDGETS, conjecture_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/conjectures")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--scale", type=float, default=1.0, help="multiply every default budget")
    ap.add_argument("--only", choices=CONJECTURES, action="append")
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for which in args.only or CONJECTURES:
        budget = max(1, int(DEFAULT_BUDGETS[which] * args.scale))
        rep = conjecture_report(which, budget, args.seed)
        (out / f"{which}.json").write_text(json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n")
        worst = max(rep.entries, key=lambda e: e["ratio"])
        print(f"{which:13s} {rep.status:10s} budget={budget:<7d} max best/bound={worst['ratio']:.6f} (n={worst['n']})")
        if rep.findings:
            status = 4
    raise SystemExit(status)


if __name__ == "__main__":
    main()
