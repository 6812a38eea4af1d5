"""Command line front end.

Exit codes: 0 success / verified, 1 verification or soundness failure,
2 usage error.  Bounds and output settings may also be given through the
environment as ``VNCA_MAX_RADIUS``, ``VNCA_MAX_PERIOD``, ``VNCA_THREADS`` and
``VNCA_FORMAT``; command line flags take precedence.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import finite_ca as fca
from . import linear_ca as lca
from .ca_core import PeriodicConfig, apply_periodic, format_rule, rule_from_wolfram
from .records import (
    SCHEMA_VERSION,
    certificate_record,
    dumps,
    is_certificate,
    read_records,
    verify_record,
    with_bounds,
)
from .regularity1d import (
    Certificate,
    SoundnessError,
    Status,
    classify_elementary,
    theorem4_counterexample,
)

ENV_PREFIX = "VNCA_"
FORMATS = ("human", "records")
STATUS_MARK = {Status.REGULAR: "R", Status.NON_REGULAR: "NR", Status.UNDECIDED: "-"}

# Printed pairs (rule, generalized inverse) and non-regular witnesses y1, y2, y3.
TABLE3_PAIRS = (
    (0, 0), (2, 16), (4, 4), (5, 5), (10, 80), (11, 85),
    (12, 12), (13, 21), (14, 85), (15, 85), (29, 29), (35, 49),
    (43, 113), (51, 51), (76, 76), (128, 254), (192, 238), (200, 200),
)
TABLE2_WITNESSES = {
    18: 2, 22: 1, 24: 2, 25: 2, 26: 2, 30: 1, 36: 1, 37: 2, 38: 1, 45: 2,
    46: 1, 54: 1, 60: 1, 62: 1, 73: 2, 90: 2, 105: 3, 122: 1, 126: 1,
}
Y_CONFIGS = {1: "1", 2: "10", 3: "100"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    max_radius: int = 1
    max_period: int = 3
    out: Path | None = None
    format: str = "human"
    threads: int = 1

    def __post_init__(self):
        if self.max_radius not in (1, 2):
            raise UsageError("--max-radius must be 1 or 2")
        if self.max_period < 1 or self.threads < 1:
            raise UsageError("bounds and thread count must be positive")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")


def _env(name: str, default, cast=int):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value for {ENV_PREFIX + name}: {raw!r}") from None


def _config(args) -> RunConfig:
    def pick(attr, env_name, default, cast=int):
        value = getattr(args, attr, None)
        return value if value is not None else _env(env_name, default, cast)

    return RunConfig(
        command=args.command,
        max_radius=pick("max_radius", "MAX_RADIUS", 1),
        max_period=pick("max_period", "MAX_PERIOD", 3),
        out=Path(args.out) if getattr(args, "out", None) else None,
        format=pick("format", "FORMAT", "human", str),
        threads=pick("threads", "THREADS", 1),
    )


class Output:
    def __init__(self, stream):
        self.stream = stream

    def line(self, text: str = ""):
        self.stream.write(text + "\n")

    def record(self, rec: dict):
        self.line(dumps(rec))


def _write_records(path: Path, records: list[dict]):
    path.write_text("".join(dumps(r) + "\n" for r in records))


# --- classify ----------------------------------------------------------------


def cmd_classify(cfg: RunConfig, out: Output) -> int:
    try:
        report = classify_elementary(cfg.max_radius, cfg.max_period, cfg.threads)
    except SoundnessError as exc:
        out.line(f"soundness check failed: {exc}")
        return 1
    certs = []
    for rule, cert in report.rules.items():
        rec = certificate_record(rule_from_wolfram(rule), cert, report.class_of(rule).cls.representative)
        certs.append(with_bounds(rec, cfg.max_radius, cfg.max_period))
    if cfg.out:
        _write_records(cfg.out, certs)

    cc, rc = report.class_counts(), report.rule_counts()
    if cfg.format == "records":
        for res in report.classes:
            out.record({
                "schema": SCHEMA_VERSION,
                "record": "class",
                "rep": res.cls.representative,
                "members": sorted(res.cls.members),
                "status": res.status.value,
                "checked_member": res.checked_member,
            })
        out.record({
            "schema": SCHEMA_VERSION,
            "record": "summary",
            "bounds": {"radius": cfg.max_radius, "period": cfg.max_period},
            "classes": {s.value: cc[s] for s in Status},
            "rules": {s.value: rc[s] for s in Status},
        })
        return 0

    out.line(f"Elementary CA, inverse radius <= {cfg.max_radius}, witness period <= {cfg.max_period}")
    out.line(f"{'Rep.':>5}  {'Equivalent rules':<36} {'Reg.':<4} evidence")
    for res in report.classes:
        rep = res.cls.representative
        others = ", ".join(str(m) for m in sorted(res.cls.members - {rep}))
        cert = res.certificate
        if cert.status is Status.REGULAR:
            evidence = f"sigma = {format_rule(cert.sigma)}" + (" (generalized)" if cert.generalized else "")
        elif cert.status is Status.NON_REGULAR:
            evidence = f"witness {cert.witness} (period {cert.witness_period})"
        else:
            evidence = ""
        out.line(f"{rep:>5}  {others:<36} {STATUS_MARK[res.status]:<4} {evidence}")
    out.line()
    out.line("classes: " + ", ".join(f"{s.value} {cc[s]}" for s in Status) + f" (total {len(report.classes)})")
    out.line("rules:   " + ", ".join(f"{s.value} {rc[s]}" for s in Status) + f" (total {len(report.rules)})")
    if cfg.out:
        out.line(f"certificates written to {cfg.out}")
    return 0


# --- verify ------------------------------------------------------------------


def cmd_verify(path: str, cfg: RunConfig, out: Output) -> int:
    try:
        records = read_records(path)
    except (OSError, ValueError) as exc:
        out.line(f"cannot read {path}: {exc}")
        return 1
    failures = checked = 0
    for n, rec in enumerate(records, 1):
        if not isinstance(rec, dict) or not is_certificate(rec):
            continue
        checked += 1
        ok, reason = verify_record(rec)
        failures += not ok
        label = rec.get("rule", rec.get("a", rec.get("group")))
        if cfg.format == "records":
            out.record({"schema": SCHEMA_VERSION, "record": "verify", "line": n, "ok": ok, "reason": reason})
        elif not ok:
            out.line(f"record {n} ({label}): FAIL - {reason}")
    if cfg.format == "human":
        out.line(f"{checked - failures}/{checked} certificates verified")
    return 0 if failures == 0 and checked > 0 else 1


# --- finite ------------------------------------------------------------------


def _fmt_subgroup(H) -> str:
    return "{" + ",".join(map(str, sorted(H))) + "}"


def cmd_finite(spec: str, q: int, cap: int, with_certs: bool, cfg: RunConfig, out: Output) -> int:
    group = fca.parse_group_spec(spec)
    space = fca.config_space(group, q)
    decomposition = fca.boxes(group, q)
    r_formula = fca.submonoid_R_size(group, q)
    r_family = fca.enumerate_R(group, q)
    # list R outright when small; otherwise count the per-orbit image choices
    r_enumerated = r_family.size
    listed = r_enumerated <= 20000
    if listed:
        r_enumerated = sum(1 for t in r_family if fca.in_R(t))

    total = regular = None
    certs = []
    if space.size <= cap:
        total = regular = 0
        for tau in fca.enumerate_ca(group, q, cap):
            total += 1
            w = fca.finite_nonregularity_witness(tau)
            regular += w is None
            if with_certs:
                rec = {"schema": SCHEMA_VERSION, "group": spec, "q": q, "tau": list(tau.table)}
                if w is None:
                    rec["status"] = Status.REGULAR.value
                    rec["sigma"] = list(fca.weak_inverse_finite(group, q, tau).table)
                else:
                    rec["status"] = Status.NON_REGULAR.value
                    rec["witness"] = list(w)
                certs.append(rec)
    if cfg.out and certs:
        _write_records(cfg.out, certs)

    if cfg.format == "records":
        for b in decomposition.boxes:
            out.record({
                "schema": SCHEMA_VERSION, "record": "box",
                "subgroup": sorted(b.subgroups.representative),
                "conjugates": len(b.subgroups.members),
                "quotient_order": b.subgroups.quotient_order,
                "configs": len(b.configs), "alpha": b.alpha, "orbit_size": b.orbit_size,
            })
        out.record({
            "schema": SCHEMA_VERSION, "record": "finite_summary", "group": spec, "order": group.order,
            "q": q, "configs": space.size, "R_formula": r_formula, "R_enumerated": r_enumerated, "R_listed": listed,
            "ca_total": total, "ca_regular": regular,
        })
        if with_certs and not cfg.out:
            for rec in certs:
                out.record(rec)
        return 0 if r_formula == r_enumerated else 1

    out.line(f"group {spec} (order {group.order}), q = {q}, {space.size} configurations")
    if group.order == 1:
        out.line(f"trivial group: CA(G;A) = Tran(A), all {q ** q} transformations")
    out.line(f"{'subgroup H':<22}{'conj':>5}{'|N/H|':>7}{'configs':>9}{'alpha':>7}{'orbit':>7}")
    for b in decomposition.boxes:
        c = b.subgroups
        out.line(f"{_fmt_subgroup(c.representative):<22}{len(c.members):>5}{c.quotient_order:>7}"
                 f"{len(b.configs):>9}{b.alpha:>7}{b.orbit_size:>7}")
    out.line(f"|R| by wreath-product formula: {r_formula}")
    how = "listing all maps" if listed else "counting orbit image choices"
    out.line(f"|R| by {how}: {r_enumerated}")
    if total is not None:
        out.line(f"CA: {total} total, {regular} vN-regular")
    else:
        out.line(f"CA census skipped: {space.size} configurations exceed the cap of {cap}")
    if with_certs and not cfg.out:
        for rec in certs:
            out.record(rec)
    return 0 if r_formula == r_enumerated else 1


# --- linear ------------------------------------------------------------------


def cmd_linear_count(n: int, p: int, brute: bool, cfg: RunConfig, out: Output) -> int:
    fac = lca.factor_xn_minus_1(n, p)
    count = lca.count_regulars(n, p)
    bf = lca.brute_force_count(n, p) if brute else None
    if cfg.format == "records":
        out.record({
            "schema": SCHEMA_VERSION, "record": "linear_count", "n": n, "p": p,
            "factors": [{"poly": f.poly.to_csv(), "degree": f.degree, "multiplicity": f.multiplicity}
                        for f in fac.factors],
            "formula": count, "brute_force": bf, "ring_size": p ** n,
        })
    else:
        out.line(f"x^{n} - 1 over F_{p} = {fac}")
        out.line(f"vN-regular elements: {count} of {p ** n}")
        if bf is not None:
            out.line(f"brute force:         {bf} ({'agrees' if bf == count else 'DISAGREES'})")
    return 0 if bf is None or bf == count else 1


def cmd_linear_check(n: int, p: int, poly: str, cfg: RunConfig, out: Output) -> int:
    a = lca.RingElement(p, n, lca.Poly.from_csv(p, poly))
    regular, b = lca.is_regular_element(a)
    rec = {"schema": SCHEMA_VERSION, "ring": {"n": n, "p": p}, "a": a.residue.to_csv()}
    if regular:
        rec["status"] = Status.REGULAR.value
        rec["inverse"] = b.residue.to_csv()
    else:
        rec["status"] = Status.NON_REGULAR.value
    if cfg.out:
        _write_records(cfg.out, [rec])
    if cfg.format == "records":
        out.record(rec)
    else:
        out.line(f"a = {a.residue} in F_{p}[x]/<x^{n} - 1>")
        out.line(f"nilpotent: {'yes' if lca.is_nilpotent(a) else 'no'}")
        if regular:
            out.line(f"vN-regular, generalized inverse b = {b.residue}")
        else:
            out.line("not vN-regular")
    return 0


# --- the non-regular composite over Z ------------------------------------------


def cmd_thm4(cfg: RunConfig, out: Output) -> int:
    tau1, tau2, tau, cert = theorem4_counterexample()
    rec = certificate_record(tau, cert)
    if cfg.out:
        _write_records(cfg.out, [rec])
    zero = PeriodicConfig.constant(0)
    if cfg.format == "records":
        out.record({
            "schema": SCHEMA_VERSION, "record": "thm4",
            "tau1": format_rule(tau1), "tau2": format_rule(tau2), "tau": format_rule(tau),
        })
        out.record(rec)
    else:
        out.line(f"tau1 = {format_rule(tau1)}  (keep the centre if all three cells agree, else 0)")
        out.line(f"tau2 = {format_rule(tau2)}  (1 on 000, else keep the centre)")
        out.line(f"tau  = tau2 then tau1 = {format_rule(tau)}")
        out.line(f"(0)tau = {apply_periodic(tau, zero)}, (1)tau = {apply_periodic(tau, PeriodicConfig.constant(1))}, "
                 f"(01)tau = {apply_periodic(tau, PeriodicConfig.from_string('01'))}")
        out.line(f"status: {cert.status.value}, witness constant {cert.witness}")
    return 0 if cert.status is Status.NON_REGULAR else 1


# --- golden tables -------------------------------------------------------------


def golden_records() -> list[dict]:
    from .regularity1d import check_generalized_inverse, equivalence_class

    recs = []
    for rule, inv in TABLE3_PAIRS:
        tau, sigma = rule_from_wolfram(rule), rule_from_wolfram(inv)
        cert = Certificate(Status.REGULAR, sigma=sigma, generalized=check_generalized_inverse(tau, sigma))
        recs.append(certificate_record(tau, cert, equivalence_class(rule).representative))
    for rule, k in TABLE2_WITNESSES.items():
        cert = Certificate.non_regular(PeriodicConfig.from_string(Y_CONFIGS[k]))
        recs.append(certificate_record(rule_from_wolfram(rule), cert, equivalence_class(rule).representative))
    return recs


def cmd_tables(cfg: RunConfig, out: Output) -> int:
    recs = golden_records()
    if cfg.out:
        _write_records(cfg.out, recs)
    failures = 0
    for rec in recs:
        ok, reason = verify_record(rec)
        failures += not ok
        if cfg.format == "records":
            out.record(rec)
        else:
            detail = rec.get("sigma") or f"y{len(rec['witness']['cells'])} = {rec['witness']['cells']}"
            out.line(f"rule {rec['rule']:>3}  {rec['status']:<12} {detail:<10} {'ok' if ok else 'FAIL'}  {reason}")
    return 0 if failures == 0 else 1


# --- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", default=None, help="write certificate records here")
    common.add_argument("--threads", type=int, default=None)

    parser = argparse.ArgumentParser(prog="vnca", description="von Neumann regularity of cellular automata")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify all elementary CA")
    p.add_argument("--max-radius", type=int, default=None)
    p.add_argument("--max-period", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    p.add_argument("path")

    p = sub.add_parser("finite", parents=[common], help="CA over a finite group")
    p.add_argument("group", help="zn:<n>, s3, d4, klein4 or cayley:<file>")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--cap", type=int, default=fca.DEFAULT_CA_CAP,
                   help="largest number of configurations for the full CA census")
    p.add_argument("--certificates", action="store_true")

    p = sub.add_parser("linear", parents=[common], help="linear CA over Z_n with alphabet F_p")
    lsub = p.add_subparsers(dest="linear_command", required=True)
    pc = lsub.add_parser("count", parents=[common])
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--p", type=int, required=True)
    pc.add_argument("--brute", action="store_true")
    pk = lsub.add_parser("check", parents=[common])
    pk.add_argument("--n", type=int, required=True)
    pk.add_argument("--p", type=int, required=True)
    pk.add_argument("--poly", required=True, help="coefficients, lowest degree first")

    sub.add_parser("thm4", parents=[common], help="the non-regular composite over Z")
    sub.add_parser("tables", parents=[common], help="golden certificates for the printed tables")
    return parser


def main(argv=None, stdout=None) -> int:
    out = Output(stdout or sys.stdout)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        if args.command == "classify":
            return cmd_classify(cfg, out)
        if args.command == "verify":
            return cmd_verify(args.path, cfg, out)
        if args.command == "finite":
            if args.q < 1:
                raise UsageError("--q must be positive")
            return cmd_finite(args.group, args.q, args.cap, args.certificates, cfg, out)
        if args.command == "linear":
            if args.n < 1 or not lca.is_prime(args.p):
                raise UsageError("--n must be positive and --p prime")
            if args.linear_command == "count":
                return cmd_linear_count(args.n, args.p, args.brute, cfg, out)
            return cmd_linear_check(args.n, args.p, args.poly, cfg, out)
        if args.command == "thm4":
            return cmd_thm4(cfg, out)
        if args.command == "tables":
            return cmd_tables(cfg, out)
    except UsageError as exc:
        print(f"vnca: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"vnca: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
