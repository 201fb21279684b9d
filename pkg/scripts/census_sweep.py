"""Share of generators and of shortcut misses among random elements, per dimension.

    python scripts/census_sweep.py --dims 1 2 3 4 --samples 100000 --seed 1 --out census.json
"""

import argparse
import json
import time

from aer.order import census, expected_invertible_fraction
from aer.rng import SeededRng


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default=None, help="write rows as JSON here")
    args = ap.parse_args()

    rows = []
    print(f"{'n':>2} {'generators':>11} {'closed form':>11} {'z':>6} {'shortcut miss':>13} {'secs':>6}")
    for n in args.dims:
        t0 = time.perf_counter()
        res = census(n, args.samples, SeededRng(args.seed))
        p = expected_invertible_fraction(n)
        z = (res.fraction - p) / (p * (1 - p) / res.samples) ** 0.5
        secs = time.perf_counter() - t0
        print(f"{n:>2} {res.fraction:>11.6f} {p:>11.6f} {z:>+6.2f} {res.shortcut_failure_rate:>13.4%} {secs:>6.1f}")
        rows.append({
            "dim": n, "samples": res.samples, "generators": res.invertible,
            "expected_fraction": p, "shortcut_failures": res.shortcut_failures,
        })
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
