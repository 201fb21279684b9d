"""Distribution of multiplicative orders of random invertible 2x2 elements.

Every order divides 65535 (= 256^2 - 1) or 510 (= 2 * 255); the even ones are
exactly the elements the limit-power shortcut gets wrong.
"""

import argparse
from collections import Counter

from aer.matrix import random_matrix, tensor_det
from aer.order import brent_cycle
from aer.rng import SeededRng


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--top", type=int, default=15)
    args = ap.parse_args()

    rng = SeededRng(args.seed)
    orders: Counter = Counter()
    while sum(orders.values()) < args.samples:
        x = random_matrix(2, rng)
        if tensor_det(x):
            orders[brent_cycle(x).period] += 1

    total = sum(orders.values())
    print(f"{len(orders)} distinct orders over {total} invertible samples")
    for d, c in orders.most_common(args.top):
        kind = "divides 65535" if 65535 % d == 0 else "divides 510" if 510 % d == 0 else "??"
        print(f"{d:>6} {c:>6} {c / total:8.3%}  {kind}")
    even = sum(c for d, c in orders.items() if d % 2 == 0)
    print(f"even orders: {even} ({even / total:.3%}; 1/256 = {1 / 256:.3%})")
    bad = [d for d in orders if 65535 % d and 510 % d]
    print("orders outside both families:", bad or "none")


if __name__ == "__main__":
    main()
