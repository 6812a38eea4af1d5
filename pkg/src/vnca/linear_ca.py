"""Linear CA over Z_n with a prime-field alphabet.

Such CA form the ring F_p[x] / <x^n - 1>: the CA with local rule
``(y)_i = sum_k a_k (x)_{i-k}`` corresponds to the residue of
``sum_k a_k x^k``.  Regular elements are counted componentwise through the
Chinese remainder decomposition along the factors of x^n - 1.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

BRUTE_FORCE_CAP = 1 << 16  # ring elements


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


@lru_cache(maxsize=None)
def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class Poly:
    """Polynomial over F_p, coefficients lowest degree first, no trailing zeros."""

    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        _check_prime(self.p)
        c = [int(a) % self.p for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x_pow(cls, p: int, k: int, coeff: int = 1) -> Poly:
        return cls(p, (0,) * k + (coeff,))

    @classmethod
    def constant(cls, p: int, c: int) -> Poly:
        return cls(p, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for zero

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> Poly:
        return Poly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(self.p, out)

    def scale(self, c: int) -> Poly:
        return Poly(self.p, [c * a for a in self.coeffs])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(pow(self.lead, -1, self.p))

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = pow(other.lead, -1, p)
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k] * inv_lead % p
            if c:
                quot[k - db] = c
                for j, bj in enumerate(other.coeffs):
                    rem[k - db + j] = (rem[k - db + j] - c * bj) % p
        return Poly(p, quot), Poly(p, rem[:db] if db > 0 else [])

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __call__(self, v: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = (out * v + c) % self.p
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coef = "" if c == 1 and mono else str(c)
            terms.append(coef + mono)
        return " + ".join(terms)

    def to_csv(self) -> str:
        return ",".join(map(str, self.coeffs)) or "0"

    @classmethod
    def from_csv(cls, p: int, text: str) -> Poly:
        _check_prime(p)
        return cls(p, [int(t) for t in text.split(",") if t.strip()])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    p = a.p
    r0, r1 = a, b
    s0, s1 = Poly.constant(p, 1), Poly(p)
    t0, t1 = Poly(p), Poly.constant(p, 1)
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = pow(r0.lead, -1, p)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_inverse_mod(a: Poly, m: Poly) -> Poly:
    g, s, _ = poly_xgcd(a % m, m)
    if g.degree != 0:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return s % m


def pow_mod(a: Poly, e: int, m: Poly) -> Poly:
    result = Poly.constant(a.p, 1) % m
    base = a % m
    while e:
        if e & 1:
            result = result * base % m
        base = base * base % m
        e >>= 1
    return result


def xn_minus_1(n: int, p: int) -> Poly:
    return Poly(p, (-1,) + (0,) * (n - 1) + (1,))


# --- factorisation of x^n - 1 -------------------------------------------------


@dataclass(frozen=True)
class Factor:
    poly: Poly
    multiplicity: int

    @property
    def degree(self) -> int:
        return self.poly.degree


@dataclass(frozen=True)
class Factorization:
    n: int
    p: int
    factors: tuple[Factor, ...]

    def expand(self) -> Poly:
        out = Poly.constant(self.p, 1)
        for f in self.factors:
            for _ in range(f.multiplicity):
                out = out * f.poly
        return out

    def __str__(self):
        parts = []
        for f in self.factors:
            base = f"({f.poly})"
            parts.append(base if f.multiplicity == 1 else f"{base}^{f.multiplicity}")
        return " ".join(parts)


def cyclotomic_cosets(p: int, m: int) -> list[list[int]]:
    """Orbits of multiplication by p on Z_m (p coprime to m)."""
    seen, out = set(), []
    for s in range(m):
        if s in seen:
            continue
        coset, c = [], s
        while c not in coset:
            coset.append(c)
            c = c * p % m
        seen.update(coset)
        out.append(coset)
    return out


def multiplicative_order(p: int, e: int) -> int:
    if e == 1:
        return 1
    k, v = 1, p % e
    while v != 1:
        v = v * p % e
        k += 1
    return k


@lru_cache(maxsize=None)
def _cyclotomic_integer(e: int) -> tuple[int, ...]:
    """Integer coefficients of the e-th cyclotomic polynomial."""
    num = [-1] + [0] * (e - 1) + [1]  # x^e - 1
    for d in range(1, e):
        if e % d == 0:
            den = list(_cyclotomic_integer(d))
            # exact division by a monic integer polynomial
            out = [0] * (len(num) - len(den) + 1)
            rem = num[:]
            for k in range(len(rem) - 1, len(den) - 2, -1):
                c = rem[k]
                out[k - len(den) + 1] = c
                for j, b in enumerate(den):
                    rem[k - len(den) + 1 + j] -= c * b
            num = out
    return tuple(num)


def _berlekamp_split(f: Poly) -> list[Poly]:
    """Irreducible factors of a monic squarefree f by Berlekamp's algorithm."""
    p, d = f.p, f.degree
    if d <= 1:
        return [f]
    # rows: x^(i p) mod f
    rows = []
    xp = pow_mod(Poly.x_pow(p, 1), p, f)
    cur = Poly.constant(p, 1)
    for _ in range(d):
        rows.append([(cur.coeffs[j] if j < len(cur.coeffs) else 0) for j in range(d)])
        cur = cur * xp % f
    # null space of (Q - I)^T: vectors v with sum_i v_i x^(ip) = sum_i v_i x^i
    mat = [[(rows[i][j] - (1 if i == j else 0)) % p for i in range(d)] for j in range(d)]
    basis = _nullspace_mod_p(mat, p)
    factors = [f]
    for v in basis:
        if len(factors) == len(basis):
            break
        h = Poly(p, v)
        if h.degree <= 0:
            continue
        refined = []
        for g in factors:
            if g.degree <= 1:
                refined.append(g)
                continue
            for s in range(p):
                c = poly_gcd(g, h - Poly.constant(p, s))
                if 0 < c.degree < g.degree:
                    refined.append(c)
                    g = g // c
                elif c.degree == g.degree:
                    break
            refined.append(g.monic())
        factors = [g for g in refined if g.degree > 0]
    return sorted(factors, key=lambda g: (g.degree, g.coeffs))


def _nullspace_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    rows, cols = len(mat), len(mat[0])
    a = [row[:] for row in mat]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [v * inv % p for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(vi - f * vr) % p for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc] % p
        basis.append(v)
    return basis


def factor_xn_minus_1(n: int, p: int) -> Factorization:
    """x^n - 1 = (x^m - 1)^(p^v) with n = m p^v, and x^m - 1 = prod_{e | m} Phi_e.

    Each Phi_e mod p splits into irreducibles of degree ord_e(p), one per
    cyclotomic coset of p modulo m lying in the divisor class e.
    """
    if n < 1:
        raise ValueError("n must be positive")
    _check_prime(p)
    m, mult = n, 1
    while m % p == 0:
        m //= p
        mult *= p
    expected = sorted(len(c) for c in cyclotomic_cosets(p, m))
    factors = []
    for e in range(1, m + 1):
        if m % e:
            continue
        phi = Poly(p, _cyclotomic_integer(e))
        d = multiplicative_order(p, e)
        parts = [phi] if phi.degree == d else _berlekamp_split(phi)
        if any(g.degree != d for g in parts):
            raise AssertionError(f"unexpected factor degrees for Phi_{e} mod {p}")
        factors.extend(parts)
    factors.sort(key=lambda g: (g.degree, g.coeffs))
    if sorted(g.degree for g in factors) != expected:
        raise AssertionError("factor degrees disagree with the cyclotomic cosets")
    return Factorization(n, p, tuple(Factor(g, mult) for g in factors))


def is_irreducible(f: Poly) -> bool:
    """No monic divisor of degree 1..deg/2 (exhaustive; small inputs only)."""
    p, d = f.p, f.degree
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = Poly(p, tail + (1,))
            if (f % g).is_zero():
                return False
    return True


# --- counting ----------------------------------------------------------------


def regular_count_formula(q: int, factor_shape: list[tuple[int, int]]) -> int:
    """prod ((q^d - 1) q^(d(m-1)) + 1) over (degree d, multiplicity m)."""
    return math.prod((q ** d - 1) * q ** (d * (m - 1)) + 1 for d, m in factor_shape)


def count_regulars(n: int, p: int) -> int:
    fac = factor_xn_minus_1(n, p)
    return regular_count_formula(p, [(f.degree, f.multiplicity) for f in fac.factors])


# --- ring elements -----------------------------------------------------------


@dataclass(frozen=True)
class RingElement:
    """Residue in F_p[x] / <x^n - 1>."""

    p: int
    n: int
    residue: Poly

    def __post_init__(self):
        if self.residue.p != self.p:
            raise ValueError("coefficient field mismatch")
        if self.residue.degree >= self.n:
            object.__setattr__(self, "residue", self.residue % xn_minus_1(self.n, self.p))

    @classmethod
    def from_coeffs(cls, p: int, n: int, coeffs) -> RingElement:
        return cls(p, n, Poly(p, coeffs))

    @property
    def modulus(self) -> Poly:
        return xn_minus_1(self.n, self.p)

    def __mul__(self, other: RingElement) -> RingElement:
        return RingElement(self.p, self.n, self.residue * other.residue % self.modulus)

    def __add__(self, other: RingElement) -> RingElement:
        return RingElement(self.p, self.n, self.residue + other.residue)

    def is_zero(self) -> bool:
        return self.residue.is_zero()


def is_nilpotent(a: RingElement) -> bool:
    """Nonzero and divisible by every irreducible factor of x^n - 1."""
    if a.is_zero():
        return False
    fac = factor_xn_minus_1(a.n, a.p)
    return all((a.residue % f.poly).is_zero() for f in fac.factors)


@lru_cache(maxsize=128)
def _crt_idempotents(n: int, p: int) -> tuple[tuple[Poly, Poly], ...]:
    """(p_i^m_i, e_i) with e_i = 1 mod p_i^m_i and 0 mod the other prime powers."""
    mod = xn_minus_1(n, p)
    out = []
    for f in factor_xn_minus_1(n, p).factors:
        pm = Poly.constant(p, 1)
        for _ in range(f.multiplicity):
            pm = pm * f.poly
        cofactor = mod // pm
        e = cofactor * poly_inverse_mod(cofactor, pm) % mod
        out.append((pm, e))
    return tuple(out)


def is_regular_element(a: RingElement) -> tuple[bool, RingElement | None]:
    """Regular iff every CRT component is zero or a unit.

    Returns the generalized inverse b (a b a = a and b a b = b) when regular;
    zero components get 0 and unit components their inverse.
    """
    p, n = a.p, a.n
    mod = a.modulus
    b = Poly(p)
    for pm, e in _crt_idempotents(n, p):
        comp = a.residue % pm
        if comp.is_zero():
            continue
        try:
            inv = poly_inverse_mod(comp, pm)
        except ValueError:
            return False, None
        b = b + inv * e
    b_el = RingElement(p, n, b % mod)
    if not ((a * b_el * a) == a and (b_el * a * b_el) == b_el):
        raise AssertionError("constructed generalized inverse fails verification")
    return True, b_el


def ring_elements(n: int, p: int):
    for coeffs in itertools.product(range(p), repeat=n):
        yield RingElement.from_coeffs(p, n, coeffs[::-1])


def brute_force_count(n: int, p: int, cap: int = BRUTE_FORCE_CAP) -> int:
    """Count a with a*b*a = a for some b, trying every b.

    Uses a^2 b = a (the ring is commutative).  Elements are coefficient vectors;
    multiplication by c is the circulant matrix of c.
    """
    _check_prime(p)
    size = p ** n
    if size > cap:
        raise ValueError(f"{size} ring elements exceed the cap of {cap}")
    idx = np.arange(size, dtype=np.int64)
    elems = np.stack([(idx // p ** k) % p for k in range(n)], axis=1)  # coeff k of element idx
    count = 0
    for a in elems:
        # a^2 as a coefficient vector (cyclic convolution)
        a2 = np.zeros(n, dtype=np.int64)
        for i in range(n):
            a2 = (a2 + a[i] * np.roll(a, i)) % p
        # circulant: (a2 * b)_k = sum_j a2_j b_{k-j}
        circ = np.stack([np.roll(a2, k) for k in range(n)], axis=0)  # circ[k] = a2 shifted by k
        products = elems @ circ % p
        if (products == a).all(axis=1).any():
            count += 1
    return count
