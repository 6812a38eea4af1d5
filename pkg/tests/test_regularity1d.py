from itertools import product

import pytest

from reference_tables import CLASSES, GENERALIZED, INVERSES, WITNESSES, Y
from vnca.ca_core import (
    PeriodicConfig,
    RuleTable,
    apply_periodic,
    complement_left,
    complement_right,
    compose,
    mirror,
    rule_from_wolfram,
    rules_equal,
    wolfram_number,
)
from vnca.regularity1d import (
    Certificate,
    PreconditionError,
    Status,
    all_equivalence_classes,
    certify,
    check_generalized_inverse,
    check_weak_inverse,
    classify_elementary,
    equivalence_class,
    find_weak_inverse,
    is_witness,
    nonregularity_witness,
    search_weak_inverse,
    theorem4_counterexample,
    transport_certificate,
    verify_certificate,
    weak_to_generalized,
)
from vnca.symbolic import least_period

ECA = [rule_from_wolfram(n) for n in range(256)]
STATUS = {"R": Status.REGULAR, "NR": Status.NON_REGULAR, "-": Status.UNDECIDED}


@pytest.fixture(scope="module")
def report():
    return classify_elementary(max_radius=1, max_period=3)


def cfg(s):
    return PeriodicConfig.from_string(s)


# --- inverse checks ----------------------------------------------------------

def test_weak_inverse_examples():
    assert check_weak_inverse(ECA[128], ECA[254])
    assert check_weak_inverse(ECA[0], ECA[0])
    assert not any(check_weak_inverse(ECA[110], s) for s in ECA)


def test_rule_0_accepts_every_sigma():
    assert all(check_weak_inverse(ECA[0], s) for s in ECA)


def test_generalized_inverse_examples():
    assert check_generalized_inverse(ECA[128], ECA[254])
    assert check_generalized_inverse(ECA[204], ECA[204])
    assert not check_generalized_inverse(ECA[0], ECA[51])
    assert wolfram_number(compose(compose(ECA[51], ECA[0]), ECA[51])) == 255


def test_weak_to_generalized_examples():
    g = weak_to_generalized_(128, 254, 254)
    assert wolfram_number(g) == 254
    assert wolfram_number(weak_to_generalized_(204, 204, 204)) == 204
    g = weak_to_generalized_(0, 51, 51)
    assert wolfram_number(g) == 255
    assert check_generalized_inverse(ECA[0], g)


def weak_to_generalized_(t, b, bp):
    return weak_to_generalized(ECA[t], ECA[b], ECA[bp])


def test_weak_to_generalized_precondition():
    with pytest.raises(PreconditionError):
        weak_to_generalized_(128, 0, 254)


def test_weak_to_generalized_always_generalized():
    # every pair of elementary weak inverses of rule 2 yields a generalized inverse
    weak = [s for s in ECA if check_weak_inverse(ECA[2], s)]
    assert weak
    for b, bp in product(weak[:6], repeat=2):
        g = compose(compose(b, ECA[2]), bp)
        assert check_generalized_inverse(ECA[2], g)


# --- inverse search ----------------------------------------------------------

def test_search_examples():
    c = search_weak_inverse(ECA[2], 1)
    assert c.status is Status.REGULAR and wolfram_number(c.sigma) == 16
    c = search_weak_inverse(ECA[0], 1)
    assert c.status is Status.REGULAR and wolfram_number(c.sigma) == 0
    c = search_weak_inverse(ECA[30], 1)
    assert c.status is Status.UNDECIDED and c.searched_radius == 1


@pytest.mark.parametrize("radius", [0, 3, -1])
def test_search_radius_bounds(radius):
    with pytest.raises(ValueError):
        search_weak_inverse(ECA[2], radius)


def test_search_matches_scan_of_all_sigma():
    # the search order is lexicographic in the table read from word 000 upward
    ordered = sorted(ECA, key=lambda s: tuple(s.table))
    for n, tau in enumerate(ECA):
        first = next((s for s in ordered if check_weak_inverse(tau, s)), None)
        found = find_weak_inverse(tau, 1)
        if first is None:
            assert found is None, n
        else:
            assert found == first, n


@pytest.mark.parametrize("rep", [7, 23, 33, 77])
def test_radius_two_inverses_verify(rep):
    sigma = find_weak_inverse(ECA[rep], 2)
    assert sigma is not None and (sigma.left, sigma.right) == (2, 2)
    assert check_weak_inverse(ECA[rep], sigma)


@pytest.mark.parametrize("n", [30, 110])
def test_radius_two_finds_nothing_for_nonregular(n):
    assert search_weak_inverse(ECA[n], 2).status is Status.UNDECIDED


def test_search_on_wider_tau():
    # tau with window [-2, 0]: compose of two left-looking rules
    tau = compose(ECA[192], ECA[192])
    c = search_weak_inverse(tau, 2)
    assert c.status is Status.REGULAR
    assert verify_certificate(tau, c)


# --- witnesses ---------------------------------------------------------------

def test_witness_examples():
    c = nonregularity_witness(ECA[110], 1)
    assert c.status is Status.NON_REGULAR and str(c.witness) == "1" and c.witness_period == 1
    c = nonregularity_witness(ECA[105], 3)
    assert c.status is Status.NON_REGULAR and c.witness_period == 3
    assert nonregularity_witness(ECA[105], 2).status is Status.UNDECIDED


def test_rule_90_witnesses():
    # both the alternating configuration and the constant 1 work for rule 90
    assert is_witness(ECA[90], cfg("10"))
    assert is_witness(ECA[90], cfg("1"))
    c = nonregularity_witness(ECA[90], 2)
    assert c.status is Status.NON_REGULAR and c.witness_period <= 2


def test_witness_needs_image_membership():
    assert not is_witness(ECA[0], cfg("1"))
    assert not is_witness(ECA[204], cfg("1"))


@pytest.mark.parametrize("rep,family", sorted(WITNESSES.items()))
def test_listed_witnesses(rep, family):
    x = cfg(Y[family])
    assert least_period(x) == family
    assert is_witness(ECA[rep], x)


def test_witness_by_direct_enumeration():
    # rule 110 and y1: preimages of period 2 exist, none of period 1
    images1 = {apply_periodic(ECA[110], PeriodicConfig(2, w)).cells for w in product((0, 1), repeat=1)}
    images2 = {apply_periodic(ECA[110], PeriodicConfig(2, w)).cells for w in product((0, 1), repeat=2)}
    assert (1,) not in images1 and (1, 1) in images2


def test_undecided_certificate_verifies_as_no_claim():
    assert verify_certificate(ECA[41], Certificate.undecided(1, 3))


def test_tampered_certificates_fail():
    assert not verify_certificate(ECA[2], Certificate.regular(ECA[2], ECA[0]))
    assert not verify_certificate(ECA[110], Certificate.non_regular(cfg("0")))


# --- classes -----------------------------------------------------------------

def test_class_examples():
    c = equivalence_class(110)
    assert c.representative == 62
    assert c.members == {62, 110, 118, 124, 131, 137, 145, 193}
    assert equivalence_class(204).members == {51, 204}
    assert equivalence_class(0).members == {0, 255}
    with pytest.raises(ValueError):
        equivalence_class(256)


def naive_class(n):
    t = ECA[n]
    out = set()
    for base in (t, mirror(t)):
        for left, right in product((False, True), repeat=2):
            r = base
            if left:
                r = complement_left(r)
            if right:
                r = complement_right(r)
            out.add(wolfram_number(r))
    return out


def test_classes_partition_and_match_listing():
    classes = all_equivalence_classes()
    assert len(classes) == 48
    seen = [m for c in classes for m in c.members]
    assert sorted(seen) == list(range(256))
    assert {c.representative: c.members for c in classes} == {
        rep: {rep, *others} for rep, (others, _) in CLASSES.items()
    }
    for c in classes:
        assert 8 % len(c.members) == 0
        assert c.members == naive_class(c.representative)


# --- classification ----------------------------------------------------------

def test_classification_matches_listing_except_class_41(report):
    got = {r.cls.representative: r.status for r in report.classes}
    expected = {rep: STATUS[s] for rep, (_, s) in CLASSES.items()}
    diff = {rep for rep in expected if got[rep] is not expected[rep]}
    assert diff == {41}


def test_class_41_is_not_regular():
    # 001 has preimages (all of least period 6) but none of least period 3
    rule = ECA[41]
    target = (0, 0, 1)
    period3 = [w for w in product((0, 1), repeat=3) if apply_periodic(rule, PeriodicConfig(2, w)).cells == target]
    period6 = [w for w in product((0, 1), repeat=6) if apply_periodic(rule, PeriodicConfig(2, w)).cells == target * 2]
    assert period3 == []
    assert period6 and all(least_period(PeriodicConfig(2, w)) == 6 for w in period6)


def test_class_15_invertible(report):
    res = report.class_of(15)
    assert res.status is Status.REGULAR
    sigma = res.certificate.sigma
    assert rules_equal(compose(ECA[15], sigma), ECA[204])


def test_every_rule_certificate_verifies(report):
    assert sorted(report.rules) == list(range(256))
    for n, cert in report.rules.items():
        assert verify_certificate(ECA[n], cert), n
        assert report.class_of(n).status is cert.status


def test_transport_along_every_symmetry(report):
    moves = {
        "complement_left": complement_left,
        "complement_right": complement_right,
        "mirror": mirror,
    }
    for n, cert in report.rules.items():
        for name, move in moves.items():
            assert verify_certificate(move(ECA[n]), transport_certificate(name, cert)), (n, name)


def test_no_rule_dual_certified():
    for tau in ECA:
        reg = search_weak_inverse(tau, 1).status is Status.REGULAR
        nonreg = nonregularity_witness(tau, 3).status is Status.NON_REGULAR
        assert not (reg and nonreg)
        certify(tau)


def test_counts(report):
    assert sum(report.class_counts().values()) == 48
    assert sum(report.rule_counts().values()) == 256


def test_parallel_classification_is_identical(report):
    par = classify_elementary(1, 3, threads=2)
    assert [(r.cls.representative, r.status) for r in par.classes] == [
        (r.cls.representative, r.status) for r in report.classes
    ]
    assert par.rules == report.rules


# --- listed inverses ---------------------------------------------------------

@pytest.mark.parametrize("rule,inv", INVERSES)
def test_listed_inverses(rule, inv):
    assert check_weak_inverse(ECA[rule], ECA[inv])


@pytest.mark.parametrize("rule,inv", GENERALIZED + [(128, 254), (192, 238)])
def test_listed_generalized_inverses(rule, inv):
    assert check_generalized_inverse(ECA[rule], ECA[inv])


# --- counterexample over Z ---------------------------------------------------

def test_counterexample():
    tau1, tau2, tau, cert = theorem4_counterexample()
    assert wolfram_number(tau1) == 128
    assert apply_periodic(tau, cfg("0")).cells == (1,)
    assert apply_periodic(tau, cfg("01")).cells == (0, 0)
    assert cert.status is Status.NON_REGULAR and str(cert.witness) == "0"
    assert verify_certificate(tau, cert)
    # the image of every constant is the constant 1
    assert all(apply_periodic(tau, PeriodicConfig.constant(k)).cells == (1,) for k in (0, 1))


def test_counterexample_components():
    _, tau2, tau, _ = theorem4_counterexample()
    assert isinstance(tau, RuleTable)
    for w in product((0, 1), repeat=3):
        assert tau2(w) == (1 if w == (0, 0, 0) else w[1])
