"""Regularity certificates for 1D cellular automata.

Three outcomes are possible for a rule ``tau``:

* ``regular``: a rule ``sigma`` with ``tau sigma tau = tau`` (checked by exact
  table composition);
* ``non_regular``: a periodic configuration ``x`` in the image of ``tau`` none
  of whose preimages has the same least period (same stabiliser in Z);
* ``undecided``: neither was found within the search bounds.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .ca_core import (
    COMPLEMENT,
    PeriodicConfig,
    RuleTable,
    apply_words,
    complement_left,
    complement_right,
    compose,
    mirror,
    rule_from_function,
    rule_from_wolfram,
    rules_equal,
    wolfram_number,
)
from .symbolic import all_words, has_preimage, least_period, necklaces, periodic_preimages


class Status(str, enum.Enum):
    REGULAR = "regular"
    NON_REGULAR = "non_regular"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class Certificate:
    status: Status
    sigma: RuleTable | None = None
    generalized: bool | None = None
    witness: PeriodicConfig | None = None
    searched_radius: int | None = None
    searched_period: int | None = None

    @property
    def witness_period(self) -> int | None:
        return None if self.witness is None else least_period(self.witness)

    @classmethod
    def regular(cls, tau: RuleTable, sigma: RuleTable) -> Certificate:
        return cls(Status.REGULAR, sigma=sigma, generalized=check_generalized_inverse(tau, sigma))

    @classmethod
    def non_regular(cls, witness: PeriodicConfig) -> Certificate:
        d = least_period(witness)
        return cls(Status.NON_REGULAR, witness=PeriodicConfig(witness.q, witness.cells[:d]))

    @classmethod
    def undecided(cls, radius: int | None = None, period: int | None = None) -> Certificate:
        return cls(Status.UNDECIDED, searched_radius=radius, searched_period=period)


class PreconditionError(ValueError):
    pass


# --- inverse checks ---------------------------------------------------------


def check_weak_inverse(tau: RuleTable, sigma: RuleTable) -> bool:
    return rules_equal(compose(compose(tau, sigma), tau), tau)


def check_generalized_inverse(tau: RuleTable, sigma: RuleTable) -> bool:
    return check_weak_inverse(tau, sigma) and check_weak_inverse(sigma, tau)


def weak_to_generalized(tau: RuleTable, b: RuleTable, b_prime: RuleTable) -> RuleTable:
    """``b tau b'`` for weak inverses b, b' of tau; always a generalized inverse."""
    if not (check_weak_inverse(tau, b) and check_weak_inverse(tau, b_prime)):
        raise PreconditionError("both arguments must be weak inverses of tau")
    result = compose(compose(b, tau), b_prime)
    assert check_generalized_inverse(tau, result)
    return result


def is_witness(tau: RuleTable, x: PeriodicConfig) -> bool:
    """``x`` is in the image of tau but has no preimage with the same least period."""
    if not has_preimage(tau, x):
        return False
    d = least_period(x)
    return all(least_period(y) != d for y in periodic_preimages(tau, x, d))


def verify_certificate(tau: RuleTable, cert: Certificate) -> bool:
    if cert.status is Status.REGULAR:
        if cert.sigma is None or cert.sigma.q != tau.q:
            return False
        ok = check_weak_inverse(tau, cert.sigma)
        if ok and cert.generalized:
            ok = check_weak_inverse(cert.sigma, tau)
        return ok
    if cert.status is Status.NON_REGULAR:
        return cert.witness is not None and cert.witness.q == tau.q and is_witness(tau, cert.witness)
    return True


# --- inverse search ---------------------------------------------------------


def _inverse_constraints(tau: RuleTable, s: int):
    """Constraints on a radius-s sigma making ``tau sigma tau`` agree with tau.

    Each word v of length l+r+2s+1 in the image of tau must satisfy
    ``tau(sigma(v[0:w]), ..., sigma(v[l+r:l+r+w])) == v[l+s]`` with w = 2s+1.
    Returns a list of (sigma entry indices, target symbol).
    """
    q, l, r = tau.q, tau.left, tau.right
    w = 2 * s + 1
    vlen = l + r + w
    images = np.unique(apply_words(tau, all_words(q, vlen + l + r)), axis=0).astype(np.int64)
    entries = []
    for j in range(l + r + 1):
        idx = np.zeros(len(images), dtype=np.int64)
        for k in range(w):
            idx = idx * q + images[:, j + k]
        entries.append(idx)
    entries = np.stack(entries, axis=1)
    targets = images[:, l + s]
    return sorted(set(zip(map(tuple, entries.tolist()), targets.tolist())))


class _InverseSearch:
    """Backtracking over sigma entries in ascending index, symbol 0 first,
    with generalised arc consistency after every assignment."""

    def __init__(self, tau: RuleTable, s: int):
        self.tau = tau
        self.q = tau.q
        self.n_vars = tau.q ** (2 * s + 1)
        self.constraints = _inverse_constraints(tau, s)
        self.by_var: list[list[int]] = [[] for _ in range(self.n_vars)]
        for ci, (vs, _) in enumerate(self.constraints):
            for v in set(vs):
                self.by_var[v].append(ci)
        self.domains: list[set[int]] = [set(range(self.q)) for _ in range(self.n_vars)]
        self.trail: list[tuple[int, set[int]]] = []

    def _revise(self, ci: int) -> list[int] | None:
        """Drop unsupported values from the constraint's variables.
        Returns the variables changed, or None on a wipe-out."""
        vs, target = self.constraints[ci]
        uniq = sorted(set(vs))
        pos = {v: k for k, v in enumerate(uniq)}
        supported = [set() for _ in uniq]
        doms = [sorted(self.domains[v]) for v in uniq]
        table = self.tau.table
        q = self.q

        def rec(k, assign):
            if k == len(uniq):
                idx = 0
                for v in vs:
                    idx = idx * q + assign[pos[v]]
                if table[idx] == target:
                    for m, a in enumerate(assign):
                        supported[m].add(a)
                return
            for a in doms[k]:
                assign.append(a)
                rec(k + 1, assign)
                assign.pop()

        rec(0, [])
        changed = []
        for m, v in enumerate(uniq):
            if supported[m] != self.domains[v]:
                if not supported[m]:
                    return None
                self.trail.append((v, self.domains[v]))
                self.domains[v] = supported[m]
                changed.append(v)
        return changed

    def _propagate(self, queue: list[int]) -> bool:
        pending = set(queue)
        while queue:
            ci = queue.pop()
            pending.discard(ci)
            changed = self._revise(ci)
            if changed is None:
                return False
            for v in changed:
                for cj in self.by_var[v]:
                    if cj != ci and cj not in pending:
                        pending.add(cj)
                        queue.append(cj)
        return True

    def _undo(self, mark: int):
        while len(self.trail) > mark:
            v, dom = self.trail.pop()
            self.domains[v] = dom

    def solve(self) -> list[int] | None:
        if not self._propagate(list(range(len(self.constraints)))):
            return None
        return self._dfs(0)

    def _dfs(self, v: int) -> list[int] | None:
        while v < self.n_vars and len(self.domains[v]) == 1:
            v += 1
        if v == self.n_vars:
            return [min(d) for d in self.domains]
        for a in sorted(self.domains[v]):
            mark = len(self.trail)
            self.trail.append((v, self.domains[v]))
            self.domains[v] = {a}
            if self._propagate(list(self.by_var[v])):
                found = self._dfs(v + 1)
                if found is not None:
                    return found
            self._undo(mark)
        return None


def find_weak_inverse(tau: RuleTable, radius: int) -> RuleTable | None:
    """Lexicographically first weak inverse with symmetric window ``radius``."""
    assign = _InverseSearch(tau, radius).solve()
    if assign is None:
        return None
    sigma = RuleTable(tau.q, radius, radius, bytes(assign))
    if not check_weak_inverse(tau, sigma):
        raise AssertionError("inverse search returned an invalid sigma")
    return sigma


def search_weak_inverse(tau: RuleTable, max_radius: int = 1) -> Certificate:
    if max_radius not in (1, 2):
        raise ValueError(f"unsupported search radius {max_radius}")
    for s in range(1, max_radius + 1):
        sigma = find_weak_inverse(tau, s)
        if sigma is not None:
            return Certificate.regular(tau, sigma)
    return Certificate.undecided(radius=max_radius)


def nonregularity_witness(tau: RuleTable, max_period: int = 3) -> Certificate:
    for d in range(1, max_period + 1):
        for x in necklaces(tau.q, d):
            if is_witness(tau, x):
                return Certificate.non_regular(x)
    return Certificate.undecided(period=max_period)


# --- elementary equivalence classes ----------------------------------------

# (name, rule transform, certificate transport)
_SYMMETRIES = ("complement_left", "complement_right", "mirror")


def _apply_symmetry(name: str, rule: RuleTable) -> RuleTable:
    return {"complement_left": complement_left, "complement_right": complement_right, "mirror": mirror}[
        name
    ](rule)


def transport_certificate(name: str, cert: Certificate) -> Certificate:
    """Certificate for the transformed rule, given one for the original.

    phi51 tau takes sigma phi51; tau phi51 takes phi51 sigma and the complemented
    witness; the mirrored rule takes the mirrored sigma and reflected witness.
    """
    if cert.status is Status.REGULAR:
        sigma = {
            "complement_left": lambda s: compose(s, COMPLEMENT),
            "complement_right": lambda s: compose(COMPLEMENT, s),
            "mirror": mirror,
        }[name](cert.sigma)
        return replace(cert, sigma=sigma)
    if cert.status is Status.NON_REGULAR:
        x = cert.witness
        if name == "complement_right":
            x = x.complemented()
        elif name == "mirror":
            x = x.reversed()
        return replace(cert, witness=x)
    return cert


@dataclass(frozen=True)
class EquivalenceClass:
    representative: int
    members: frozenset[int]


def _class_paths(number: int) -> dict[int, tuple[str, ...]]:
    """Every member of the class of ``number`` with a symmetry path reaching it."""
    paths = {number: ()}
    frontier = [number]
    while frontier:
        n = frontier.pop()
        for name in _SYMMETRIES:
            m = wolfram_number(_apply_symmetry(name, rule_from_wolfram(n)))
            if m not in paths:
                paths[m] = paths[n] + (name,)
                frontier.append(m)
    return paths


def equivalence_class(number: int) -> EquivalenceClass:
    if not 0 <= number <= 255:
        raise ValueError(f"Wolfram number must be in 0..255, got {number}")
    members = frozenset(_class_paths(number))
    return EquivalenceClass(min(members), members)


def all_equivalence_classes() -> list[EquivalenceClass]:
    seen, out = set(), []
    for n in range(256):
        if n not in seen:
            c = equivalence_class(n)
            seen |= c.members
            out.append(c)
    return out


# --- full classification ----------------------------------------------------


class SoundnessError(AssertionError):
    pass


def certify(tau: RuleTable, max_radius: int = 1, max_period: int = 3) -> Certificate:
    """Try both directions; a rule certified both ways is a bug, not a result."""
    reg = search_weak_inverse(tau, max_radius)
    nonreg = nonregularity_witness(tau, max_period)
    if reg.status is Status.REGULAR and nonreg.status is Status.NON_REGULAR:
        raise SoundnessError(f"{tau!r} received both a regular and a non-regular certificate")
    if reg.status is Status.REGULAR:
        return reg
    if nonreg.status is Status.NON_REGULAR:
        return nonreg
    return Certificate.undecided(max_radius, max_period)


@dataclass
class ClassResult:
    cls: EquivalenceClass
    status: Status
    certificate: Certificate
    checked_member: int | None = None


@dataclass
class Classification:
    max_radius: int
    max_period: int
    classes: list[ClassResult]
    rules: dict[int, Certificate] = field(default_factory=dict)

    def class_counts(self) -> dict[Status, int]:
        return {s: sum(c.status is s for c in self.classes) for s in Status}

    def rule_counts(self) -> dict[Status, int]:
        return {s: sum(c.status is s for c in self.rules.values()) for s in Status}

    def class_of(self, rule: int) -> ClassResult:
        return next(c for c in self.classes if rule in c.cls.members)


def _classify_one(args) -> ClassResult:
    cls, max_radius, max_period = args
    rep = cls.representative
    cert = certify(rule_from_wolfram(rep), max_radius, max_period)
    others = sorted(cls.members - {rep})
    checked = None
    if others:
        checked = others[0]
        other = certify(rule_from_wolfram(checked), max_radius, max_period)
        if other.status is not cert.status:
            raise SoundnessError(
                f"class {rep}: representative is {cert.status.value} but {checked} is {other.status.value}"
            )
    return ClassResult(cls, cert.status, cert, checked)


def classify_elementary(max_radius: int = 1, max_period: int = 3, threads: int = 1) -> Classification:
    classes = all_equivalence_classes()
    jobs = [(c, max_radius, max_period) for c in classes]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_classify_one, jobs))
    else:
        results = [_classify_one(j) for j in jobs]
    results.sort(key=lambda r: r.cls.representative)

    report = Classification(max_radius, max_period, results)
    for res in results:
        rep = res.cls.representative
        for member, path in _class_paths(rep).items():
            cert = res.certificate
            tau = rule_from_wolfram(rep)
            for name in path:
                cert = transport_certificate(name, cert)
                tau = _apply_symmetry(name, tau)
            if not verify_certificate(tau, cert):
                raise SoundnessError(f"transported certificate for rule {member} does not verify")
            report.rules[member] = cert
    report.rules = dict(sorted(report.rules.items()))
    return report


# --- the counterexample over Z with |A| = 2 ----------------------------------


def theorem4_counterexample(q: int = 2):
    """Rules tau1, tau2 on the window {-1, 0, 1} and ``tau = tau2 then tau1``.

    tau1 keeps the centre when all three cells agree and writes 0 otherwise;
    tau2 writes 1 on the all-zero window and keeps the centre otherwise.
    The constant 0 lies in the image of tau but has no constant preimage.
    """
    tau1 = rule_from_function(q, 1, 1, lambda w: w[1] if w[0] == w[1] == w[2] else 0)
    tau2 = rule_from_function(q, 1, 1, lambda w: 1 if w == (0, 0, 0) else w[1])
    tau = compose(tau2, tau1)
    cert = nonregularity_witness(tau, 1)
    return tau1, tau2, tau, cert
