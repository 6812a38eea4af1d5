#!/usr/bin/env python3
"""Push the undecided classes further: radius-2 inverses and longer witness periods.

    python3 scripts/open_classes.py --max-period 8
"""
import argparse
import time

from vnca.ca_core import format_rule, rule_from_wolfram
from vnca.regularity1d import (
    Status,
    check_generalized_inverse,
    classify_elementary,
    find_weak_inverse,
    nonregularity_witness,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-period", type=int, default=8)
    args = ap.parse_args()

    base = classify_elementary(1, 3)
    open_reps = [r.cls.representative for r in base.classes if r.status is Status.UNDECIDED]
    print(f"undecided at radius 1, period 3: {open_reps}")
    for rep in open_reps:
        tau = rule_from_wolfram(rep)
        t0 = time.perf_counter()
        sigma = find_weak_inverse(tau, 2)
        if sigma is not None:
            gen = check_generalized_inverse(tau, sigma)
            print(f"{rep:>4}  regular   sigma={format_rule(sigma)} generalized={gen}"
                  f"  ({time.perf_counter() - t0:.2f}s)")
            continue
        cert = nonregularity_witness(tau, args.max_period)
        if cert.status is Status.NON_REGULAR:
            print(f"{rep:>4}  non-regular  witness={cert.witness}")
        else:
            print(f"{rep:>4}  undecided (radius 2, period {args.max_period})")


if __name__ == "__main__":
    main()
