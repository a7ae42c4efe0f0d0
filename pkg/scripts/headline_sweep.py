"""Print the closed-form mld tables for small matrix sizes.

Usage: python scripts/headline_sweep.py [--max-m M]
"""

import argparse

from detmld import mld_along, mld_at_rank, new_pair


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-m", type=int, default=6)
    args = parser.parse_args()

    print("mld at a rank-q point of the rank <= k locus (zero coefficients)")
    print(f"{'m':>3} {'k':>3} " + " ".join(f"q={q:<3}" for q in range(args.max_m + 1)))
    for m in range(1, args.max_m + 1):
        for k in range(1, m + 1):
            pair = new_pair(m, k, [])
            row = [str(mld_at_rank(pair, q)) for q in range(k + 1)]
            print(f"{m:>3} {k:>3} " + " ".join(f"{v:<5}" for v in row))

    print()
    print("mld along the rank <= k-j sublocus (zero coefficients)")
    print(f"{'m':>3} {'k':>3} " + " ".join(f"j={j:<3}" for j in range(1, args.max_m + 1)))
    for m in range(1, args.max_m + 1):
        for k in range(1, m + 1):
            pair = new_pair(m, k, [])
            row = [str(mld_along(pair, j)) for j in range(1, k + 1)]
            print(f"{m:>3} {k:>3} " + " ".join(f"{v:<5}" for v in row))


if __name__ == "__main__":
    main()
