import pytest
from hypothesis import given, strategies as st

from vnca.linear_ca import (
    Poly,
    RingElement,
    brute_force_count,
    count_regulars,
    cyclotomic_cosets,
    factor_xn_minus_1,
    is_irreducible,
    is_nilpotent,
    is_prime,
    is_regular_element,
    multiplicative_order,
    poly_gcd,
    poly_inverse_mod,
    poly_xgcd,
    pow_mod,
    ring_elements,
    xn_minus_1,
)

PRIMES = [2, 3, 5, 7]


def P(p, *coeffs):
    return Poly(p, coeffs)


def elem(p, n, *coeffs):
    return RingElement.from_coeffs(p, n, coeffs)


@st.composite
def polys(draw, p=None, max_degree=6):
    p = p or draw(st.sampled_from(PRIMES))
    return Poly(p, draw(st.lists(st.integers(0, p - 1), max_size=max_degree + 1)))


def ring_power(a, k):
    out = RingElement.from_coeffs(a.p, a.n, (1,))
    for _ in range(k):
        out = out * a
    return out


# --- arithmetic --------------------------------------------------------------

def test_arithmetic_examples():
    x_plus_1 = P(2, 1, 1)
    assert poly_gcd(P(2, 1, 0, 1), x_plus_1) == x_plus_1
    assert (P(2, 0, 1) * P(2, 0, 1)) % xn_minus_1(2, 2) == P(2, 1)
    assert (x_plus_1 + x_plus_1).is_zero()
    assert str(P(3, 2, 0, 1)) == "x^2 + 2"


def test_poly_normalization():
    assert P(3, 1, 0, 0).coeffs == (1,)
    assert P(5, 7, 5).coeffs == (2,)
    assert P(2).is_zero() and P(2).degree < 0
    with pytest.raises(ValueError):
        Poly(4, (1,))


def test_csv_roundtrip():
    f = P(5, 1, 0, 3, 4)
    assert Poly.from_csv(5, f.to_csv()) == f
    assert Poly.from_csv(2, "1,1") == P(2, 1, 1)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(polys(p), polys(p), polys(p))))
def test_ring_laws(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert (a - a).is_zero()


@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(polys(p), polys(p))))
def test_division(ab):
    a, b = ab
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(polys(p), polys(p))))
def test_gcd(ab):
    a, b = ab
    g = poly_gcd(a, b)
    if a.is_zero() and b.is_zero():
        assert g.is_zero()
        return
    assert g.lead == 1
    assert (a % g).is_zero() and (b % g).is_zero()
    g2, s, t = poly_xgcd(a, b)
    assert g2 == g and s * a + t * b == g


def test_inverse_mod():
    m = P(2, 1, 1, 1)  # x^2 + x + 1
    inv = poly_inverse_mod(P(2, 0, 1), m)
    assert (inv * P(2, 0, 1)) % m == P(2, 1)
    with pytest.raises(ValueError):
        poly_inverse_mod(P(2, 1, 1), P(2, 1, 0, 1))


def test_pow_mod():
    m = xn_minus_1(5, 3)
    x = P(3, 0, 1)
    assert pow_mod(x, 5, m) == P(3, 1)
    assert pow_mod(x, 7, m) == P(3, 0, 0, 1)


def test_evaluation():
    f = P(5, 1, 2, 3)
    assert [f(v) for v in range(5)] == [(1 + 2 * v + 3 * v * v) % 5 for v in range(5)]


# --- factorisation -----------------------------------------------------------

def test_factor_examples():
    f = factor_xn_minus_1(4, 2)
    assert [(g.poly, g.multiplicity) for g in f.factors] == [(P(2, 1, 1), 4)]
    f = factor_xn_minus_1(3, 2)
    assert [(g.poly, g.multiplicity) for g in f.factors] == [(P(2, 1, 1), 1), (P(2, 1, 1, 1), 1)]
    f = factor_xn_minus_1(6, 2)
    assert [(g.poly, g.multiplicity) for g in f.factors] == [(P(2, 1, 1), 2), (P(2, 1, 1, 1), 2)]
    f = factor_xn_minus_1(3, 3)
    assert [(g.poly, g.multiplicity) for g in f.factors] == [(P(3, 2, 1), 3)]


def test_factor_errors():
    with pytest.raises(ValueError):
        factor_xn_minus_1(0, 2)
    with pytest.raises(ValueError):
        factor_xn_minus_1(4, 6)


def test_cyclotomic_cosets():
    assert cyclotomic_cosets(2, 7) == [[0], [1, 2, 4], [3, 6, 5]]
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 8) == 2


@pytest.mark.parametrize("n,p", [(n, p) for p in (2, 3, 5, 7) for n in range(1, 31)])
def test_factorization_invariants(n, p):
    fac = factor_xn_minus_1(n, p)
    assert fac.expand() == xn_minus_1(n, p)
    polys_ = [f.poly for f in fac.factors]
    assert len(set(polys_)) == len(polys_)
    assert len({f.multiplicity for f in fac.factors}) == 1
    for f in fac.factors:
        assert f.poly.lead == 1
        if f.degree <= 8:
            assert is_irreducible(f.poly)


@pytest.mark.parametrize("n,p", [(n, p) for p in (2, 3, 5) for n in (1, 6, 7, 9, 12, 15, 21, 24, 31, 35)])
def test_factorization_matches_sympy(n, p):
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    _, parts = sympy.factor_list(x ** n - 1, modulus=p)
    # sympy prints symmetric residues, so normalise through Poly
    expected = sorted(
        (Poly(p, [int(c) for c in reversed(sympy.Poly(f, x).all_coeffs())]).monic().coeffs, m)
        for f, m in parts
    )
    got = sorted((f.poly.coeffs, f.multiplicity) for f in factor_xn_minus_1(n, p).factors)
    assert got == expected


def test_irreducibility_check():
    assert is_irreducible(P(2, 1, 1, 1))
    assert not is_irreducible(P(2, 1, 0, 1))
    assert is_irreducible(P(3, 1, 0, 1))
    assert not is_irreducible(P(5, 1, 0, 1))  # 2^2 = -1 mod 5


# --- counting ----------------------------------------------------------------

@pytest.mark.parametrize(
    "n,p,count", [(2, 2, 3), (4, 2, 9), (3, 2, 8), (6, 2, 39), (3, 3, 19)]
)
def test_count_examples(n, p, count):
    assert count_regulars(n, p) == count


@pytest.mark.parametrize("n,p", [(2, 2), (4, 2), (6, 2), (8, 2), (3, 3), (6, 3), (5, 5)])
def test_count_matches_brute_force(n, p):
    assert count_regulars(n, p) == brute_force_count(n, p)


@pytest.mark.parametrize("n,p", [(3, 2), (5, 2), (7, 2), (2, 3), (4, 3), (2, 5), (3, 5), (6, 7)])
def test_coprime_characteristic_everything_regular(n, p):
    assert count_regulars(n, p) == p ** n


@pytest.mark.parametrize("n,p", [(3, 2), (5, 2), (2, 3), (4, 3)])
def test_coprime_rings_all_elements_regular(n, p):
    assert all(is_regular_element(a)[0] for a in ring_elements(n, p))


def test_count_big_integers():
    c = count_regulars(96, 2)
    assert c > 2 ** 32 and isinstance(c, int)


def test_brute_force_cap():
    with pytest.raises(ValueError):
        brute_force_count(17, 2)


# --- ring elements -----------------------------------------------------------

def test_regular_element_examples():
    assert is_regular_element(elem(2, 2, 1, 1)) == (False, None)
    ok, b = is_regular_element(elem(2, 2, 0, 1))
    assert ok and b == elem(2, 2, 0, 1)
    ok, b = is_regular_element(elem(2, 2))
    assert ok and b.is_zero()


def test_reduction_on_construction():
    assert elem(2, 2, 0, 0, 1) == elem(2, 2, 1)
    with pytest.raises(ValueError):
        RingElement(3, 2, P(2, 1))


@pytest.mark.parametrize("n,p", [(2, 2), (4, 2), (6, 2), (3, 3), (2, 5), (4, 5)])
def test_regularity_matches_search(n, p):
    elements = list(ring_elements(n, p))
    for a in elements:
        ok, b = is_regular_element(a)
        exists = any(a * c * a == a for c in elements)
        assert ok == exists
        if ok:
            assert a * b * a == a and b * a * b == b


def test_nilpotent_examples():
    assert is_nilpotent(elem(2, 2, 1, 1))
    assert not is_nilpotent(elem(2, 2, 0, 1))
    assert not is_nilpotent(elem(2, 3, 1, 1))
    assert not is_nilpotent(elem(2, 3))


@pytest.mark.parametrize("n,p", [(2, 2), (4, 2), (6, 2), (8, 2), (3, 3), (6, 3), (5, 5)])
def test_nilpotent_means_not_regular(n, p):
    for a in ring_elements(n, p):
        power_zero = not a.is_zero() and ring_power(a, n).is_zero()
        assert is_nilpotent(a) == power_zero
        if is_nilpotent(a):
            assert not is_regular_element(a)[0]


def test_regular_count_by_classifier():
    for n, p in [(4, 2), (6, 3), (8, 3)]:
        assert sum(is_regular_element(a)[0] for a in ring_elements(n, p)) == count_regulars(n, p)
