#!/usr/bin/env python3
"""Boxes, |R| and regular-CA counts for small groups.

    python3 scripts/finite_census.py zn:2 zn:3 zn:4 klein4 s3 d4
"""
import argparse

from vnca.finite_ca import (
    boxes,
    config_space,
    enumerate_ca,
    finite_nonregularity_witness,
    parse_group_spec,
    submonoid_R_size,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*", default=["zn:1", "zn:2", "zn:3", "zn:4", "klein4", "s3", "d4"])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--cap", type=int, default=16, help="configurations for the CA census")
    args = ap.parse_args()

    for spec in args.groups:
        g = parse_group_spec(spec)
        space = config_space(g, args.q)
        dec = boxes(g, args.q)
        alphas = " ".join(f"[{b.subgroups.order}]a={b.alpha}" for b in dec.boxes)
        line = f"{spec:<8} |G|={g.order:<2} configs={space.size:<5} {alphas}  |R|={submonoid_R_size(g, args.q)}"
        if space.size <= args.cap:
            maps = list(enumerate_ca(g, args.q, args.cap))
            regular = sum(finite_nonregularity_witness(t) is None for t in maps)
            line += f"  CA={len(maps)} regular={regular}"
        print(line)


if __name__ == "__main__":
    main()
