"""Line-delimited JSON records for certificates, with a fixed key order.

Elementary / 1D certificate::

    {"schema": 1, "rule": 110, "class_rep": 62, "status": "non_regular",
     "witness": {"period": 1, "cells": "1"}, "bounds": {"radius": 1, "period": 3}}
    {"schema": 1, "rule": 2, "class_rep": 2, "status": "regular",
     "sigma": "eca:16", "generalized": true, "bounds": {...}}

``rule`` and ``sigma`` are Wolfram numbers / ``eca:`` literals for elementary
rules and ``table:`` literals otherwise.  Finite-group certificates carry
``group``, ``q`` and ``tau`` (image index of every configuration) and either
``sigma`` (a weak inverse table) or ``witness`` (a configuration).  Linear
certificates carry ``ring`` = {"n", "p"}, ``a`` and, when regular, ``inverse``.

Records with a ``record`` key other than ``"certificate"`` are report rows and
carry no claim.
"""
from __future__ import annotations

import json
from pathlib import Path

from .ca_core import PeriodicConfig, RuleTable, format_rule, parse_rule, rule_from_wolfram
from .regularity1d import (
    Certificate,
    Status,
    check_generalized_inverse,
    check_weak_inverse,
    equivalence_class,
    is_witness,
)
from .symbolic import least_period

SCHEMA_VERSION = 1


def dumps(record: dict) -> str:
    return json.dumps(record, separators=(", ", ": "))


def _rule_field(rule: RuleTable):
    lit = format_rule(rule)
    return int(lit[4:]) if lit.startswith("eca:") else lit


def certificate_record(tau: RuleTable, cert: Certificate, class_rep: int | None = None) -> dict:
    rec: dict = {"schema": SCHEMA_VERSION, "rule": _rule_field(tau)}
    if class_rep is not None:
        rec["class_rep"] = class_rep
    rec["status"] = cert.status.value
    if cert.status is Status.REGULAR:
        rec["sigma"] = format_rule(cert.sigma)
        rec["generalized"] = bool(cert.generalized)
    elif cert.status is Status.NON_REGULAR:
        rec["witness"] = {"period": cert.witness_period, "cells": str(cert.witness)}
    bounds = {"radius": cert.searched_radius, "period": cert.searched_period}
    if any(v is not None for v in bounds.values()):
        rec["bounds"] = bounds
    return rec


def with_bounds(rec: dict, radius: int | None, period: int | None) -> dict:
    rec = dict(rec)
    rec.pop("bounds", None)
    rec["bounds"] = {"radius": radius, "period": period}
    return rec


def _parse_rule_field(value) -> RuleTable:
    if isinstance(value, bool):
        raise ValueError("rule must be a number or literal")
    if isinstance(value, int):
        return rule_from_wolfram(value)
    return parse_rule(str(value))


def verify_record(rec: dict) -> tuple[bool, str]:
    """Re-check one certificate record from scratch. Returns (ok, reason)."""
    try:
        if rec.get("schema") != SCHEMA_VERSION:
            return False, f"unsupported schema {rec.get('schema')!r}"
        if "group" in rec:
            return _verify_finite(rec)
        if "ring" in rec:
            return _verify_linear(rec)
        tau = _parse_rule_field(rec["rule"])
        if "class_rep" in rec:
            if not isinstance(rec["rule"], int) or equivalence_class(rec["rule"]).representative != rec["class_rep"]:
                return False, "class_rep does not match the rule's class"
        status = rec["status"]
        if status == Status.REGULAR.value:
            sigma = _parse_rule_field(rec["sigma"])
            if sigma.q != tau.q or not check_weak_inverse(tau, sigma):
                return False, "sigma is not a weak inverse"
            if bool(rec.get("generalized")) != check_generalized_inverse(tau, sigma):
                return False, "generalized flag is wrong"
            return True, "weak inverse verified"
        if status == Status.NON_REGULAR.value:
            w = rec["witness"]
            x = PeriodicConfig.from_string(w["cells"], tau.q)
            if w["period"] != x.period or least_period(x) != x.period:
                return False, "witness period does not match its cells"
            if not is_witness(tau, x):
                return False, "witness fails the stabiliser test"
            return True, "witness verified"
        if status == Status.UNDECIDED.value:
            return True, "no claim"
        return False, f"unknown status {status!r}"
    except (KeyError, TypeError, ValueError) as exc:
        return False, f"malformed record: {exc}"


def _verify_finite(rec: dict) -> tuple[bool, str]:
    from .finite_ca import (
        EquivariantMap,
        config_space,
        is_weak_inverse_finite,
        parse_group_spec,
    )

    group = parse_group_spec(rec["group"])
    q = rec["q"]
    tau = EquivariantMap(group, q, tuple(rec["tau"]))
    if rec["status"] == Status.REGULAR.value:
        sigma = EquivariantMap(group, q, tuple(rec["sigma"]))
        ok = is_weak_inverse_finite(tau, sigma)
        return ok, "weak inverse verified" if ok else "sigma is not a weak inverse"
    if rec["status"] == Status.NON_REGULAR.value:
        space = config_space(group, q)
        y = space.index(tuple(rec["witness"]))
        stabs = space.stabilizers
        pre = [x for x, t in enumerate(tau.table) if t == y]
        ok = bool(pre) and all(stabs[x] != stabs[y] for x in pre)
        return ok, "witness verified" if ok else "witness fails the stabiliser test"
    return False, f"unknown status {rec['status']!r}"


def _verify_linear(rec: dict) -> tuple[bool, str]:
    from .linear_ca import Poly, RingElement, is_regular_element

    n, p = rec["ring"]["n"], rec["ring"]["p"]
    a = RingElement(p, n, Poly.from_csv(p, rec["a"]))
    if rec["status"] == Status.REGULAR.value:
        b = RingElement(p, n, Poly.from_csv(p, rec["inverse"]))
        ok = a * b * a == a and b * a * b == b
        return ok, "generalized inverse verified" if ok else "inverse fails a b a = a or b a b = b"
    if rec["status"] == Status.NON_REGULAR.value:
        ok = not is_regular_element(a)[0]
        return ok, "a CRT component is a nonzero non-unit" if ok else "element is regular"
    return False, f"unknown status {rec['status']!r}"


def read_records(path: str | Path) -> list[dict]:
    text = Path(path).read_text()
    stripped = text.strip()
    if stripped.startswith("["):
        return json.loads(stripped)
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def is_certificate(rec: dict) -> bool:
    return rec.get("record", "certificate") == "certificate"
