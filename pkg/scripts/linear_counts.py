#!/usr/bin/env python3
"""Regular elements of F_p[x]/<x^n - 1>: closed form, with brute force where small.

    python3 scripts/linear_counts.py --max-n 12 --primes 2 3 5
"""
import argparse

from vnca.linear_ca import brute_force_count, count_regulars, factor_xn_minus_1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--brute-cap", type=int, default=1 << 12)
    args = ap.parse_args()

    for p in args.primes:
        for n in range(1, args.max_n + 1):
            count = count_regulars(n, p)
            brute = brute_force_count(n, p) if p ** n <= args.brute_cap else None
            check = "" if brute is None else ("  brute=ok" if brute == count else f"  brute={brute} MISMATCH")
            print(f"p={p} n={n:<3} {count:>12} / {p ** n:<12} {factor_xn_minus_1(n, p)}{check}")


if __name__ == "__main__":
    main()
