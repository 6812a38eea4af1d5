#!/usr/bin/env python3
"""Classify the elementary rules and re-check the listed inverses and witnesses.

    python3 scripts/reproduce_tables.py --max-radius 1 --max-period 3
"""
import argparse
import time

from vnca.ca_core import PeriodicConfig, format_rule, rule_from_wolfram
from vnca.cli import TABLE2_WITNESSES, TABLE3_PAIRS, Y_CONFIGS
from vnca.regularity1d import (
    Status,
    check_generalized_inverse,
    check_weak_inverse,
    classify_elementary,
    is_witness,
)

MARK = {Status.REGULAR: "R", Status.NON_REGULAR: "NR", Status.UNDECIDED: "-"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-radius", type=int, default=1)
    ap.add_argument("--max-period", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = classify_elementary(args.max_radius, args.max_period, args.threads)
    print(f"classification in {time.perf_counter() - t0:.2f}s")
    for res in report.classes:
        rep = res.cls.representative
        members = ", ".join(map(str, sorted(res.cls.members - {rep})))
        print(f"{rep:>4}  {MARK[res.status]:<3} {members}")
    cc, rc = report.class_counts(), report.rule_counts()
    print("classes:", {s.value: cc[s] for s in Status})
    print("rules:  ", {s.value: rc[s] for s in Status})

    print("\ninverse pairs")
    for rule, inv in TABLE3_PAIRS:
        tau, sigma = rule_from_wolfram(rule), rule_from_wolfram(inv)
        print(f"{rule:>4} {inv:>4}  weak={check_weak_inverse(tau, sigma)}"
              f"  generalized={check_generalized_inverse(tau, sigma)}")

    print("\nwitnesses")
    for rule, k in TABLE2_WITNESSES.items():
        x = PeriodicConfig.from_string(Y_CONFIGS[k])
        found = report.rules[rule]
        print(f"{rule:>4}  y{k}={x}  valid={is_witness(rule_from_wolfram(rule), x)}"
              f"  search found {found.witness if found.witness is not None else format_rule(found.sigma)}")


if __name__ == "__main__":
    main()
