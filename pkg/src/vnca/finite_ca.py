"""Cellular automata over finite groups.

For finite G and A the CA over A^G are exactly the G-equivariant maps of A^G,
so everything here works on explicit tables.  Configurations are tuples
indexed by group elements and are numbered as base-q integers with element 0
most significant (numeric order = lexicographic order).  The group acts on the
right: ``(h)(x.g) = (h g^-1)x``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path

MAX_GROUP_ORDER = 12
DEFAULT_CA_CAP = 16  # configurations


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    mul: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.mul)
        if n < 1 or any(len(row) != n for row in self.mul):
            raise ValueError("Cayley table must be square and non-empty")
        if any(not 0 <= v < n for row in self.mul for v in row):
            raise ValueError("Cayley table entry out of range")
        m = self.mul
        for a, b, c in itertools.product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise ValueError(f"not associative at ({a}, {b}, {c})")
        ids = [e for e in range(n) if all(m[e][g] == g == m[g][e] for g in range(n))]
        if not ids:
            raise ValueError("no identity element")
        e = ids[0]
        for g in range(n):
            if not any(m[g][h] == e == m[h][g] for h in range(n)):
                raise ValueError(f"element {g} has no inverse")

    @property
    def order(self) -> int:
        return len(self.mul)

    @cached_property
    def identity(self) -> int:
        m = self.mul
        return next(e for e in range(self.order) if all(m[e][g] == g for g in range(self.order)))

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        e, m = self.identity, self.mul
        return tuple(next(h for h in range(self.order) if m[g][h] == e) for g in range(self.order))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _from_elements(name: str, elements: list, op) -> FiniteGroup:
    index = {g: i for i, g in enumerate(elements)}
    return FiniteGroup(name, tuple(tuple(index[op(a, b)] for b in elements) for a in elements))


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup(f"zn:{n}", tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def _perm_group(name: str, gens: list[tuple[int, ...]]) -> FiniteGroup:
    # permutations as tuples, composed left to right: (a*b)(i) = b(a(i))
    def op(a, b):
        return tuple(b[a[i]] for i in range(len(a)))

    ident = tuple(range(len(gens[0])))
    elems = {ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for s in gens:
            h = op(g, s)
            if h not in elems:
                elems.add(h)
                frontier.append(h)
    return _from_elements(name, sorted(elems), op)


def symmetric3() -> FiniteGroup:
    return _perm_group("s3", [(1, 0, 2), (1, 2, 0)])


def dihedral4() -> FiniteGroup:
    return _perm_group("d4", [(1, 2, 3, 0), (0, 3, 2, 1)])


def klein4() -> FiniteGroup:
    return _from_elements("klein4", [(a, b) for a in (0, 1) for b in (0, 1)],
                          lambda x, y: (x[0] ^ y[0], x[1] ^ y[1]))


def parse_cayley(text: str, name: str = "cayley") -> FiniteGroup:
    """Whitespace-separated: n, then the n x n table of element indices."""
    nums = [int(t) for t in text.split()]
    if not nums:
        raise ValueError("empty Cayley table")
    n = nums[0]
    if len(nums) != 1 + n * n:
        raise ValueError(f"expected {n * n} table entries, got {len(nums) - 1}")
    rows = nums[1:]
    return FiniteGroup(name, tuple(tuple(rows[i * n : (i + 1) * n]) for i in range(n)))


def parse_group_spec(spec: str) -> FiniteGroup:
    if spec.startswith("zn:"):
        return cyclic(int(spec[3:]))
    if spec.startswith("cayley:"):
        path = spec[len("cayley:"):]
        return parse_cayley(Path(path).read_text(), name=spec)
    builtins = {"s3": symmetric3, "d4": dihedral4, "klein4": klein4}
    if spec in builtins:
        return builtins[spec]()
    raise ValueError(f"unknown group spec {spec!r}")


# --- configurations and the shift action -------------------------------------


class ConfigSpace:
    """All q**n configurations of A^G with cached action data."""

    def __init__(self, group: FiniteGroup, q: int):
        if q < 1:
            raise ValueError("alphabet size must be positive")
        self.group, self.q, self.n = group, q, group.order
        self.size = q ** self.n

    def config(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            index, d = divmod(index, self.q)
            out.append(d)
        return tuple(reversed(out))

    def index(self, x) -> int:
        if len(x) != self.n or any(not 0 <= s < self.q for s in x):
            raise ValueError(f"invalid configuration {x!r}")
        idx = 0
        for s in x:
            idx = idx * self.q + s
        return idx

    @cached_property
    def shift(self) -> tuple[tuple[int, ...], ...]:
        """``shift[i][g]`` is the index of ``config(i) . g``."""
        G = self.group
        m, inv = G.mul, G.inverse
        out = []
        for i in range(self.size):
            x = self.config(i)
            out.append(tuple(self.index(tuple(x[m[h][inv[g]]] for h in range(self.n)))
                             for g in range(self.n)))
        return tuple(out)

    @cached_property
    def stabilizers(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(g for g in range(self.n) if row[g] == i)
                     for i, row in enumerate(self.shift))

    @cached_property
    def orbit_rep(self) -> tuple[tuple[int, int], ...]:
        """For every configuration z: (smallest config r in its orbit, g with r.g = z)."""
        out = [None] * self.size
        for i in range(self.size):
            if out[i] is None:
                for g, j in enumerate(self.shift[i]):
                    if out[j] is None:
                        out[j] = (i, g)
        return tuple(out)

    @cached_property
    def representatives(self) -> tuple[int, ...]:
        return tuple(i for i, (r, _) in enumerate(self.orbit_rep) if r == i)


@lru_cache(maxsize=64)
def config_space(group: FiniteGroup, q: int) -> ConfigSpace:
    return ConfigSpace(group, q)


def act(group: FiniteGroup, x, g: int) -> tuple[int, ...]:
    m, inv = group.mul, group.inverse
    return tuple(x[m[h][inv[g]]] for h in range(group.order))


def orbit(group: FiniteGroup, x) -> set[tuple[int, ...]]:
    return {act(group, x, g) for g in range(group.order)}


def stabilizer(group: FiniteGroup, x) -> frozenset[int]:
    x = tuple(x)
    return frozenset(g for g in range(group.order) if act(group, x, g) == x)


# --- subgroups ---------------------------------------------------------------


def _closure(group: FiniteGroup, gens) -> frozenset[int]:
    m = group.mul
    elems = {group.identity} | set(gens)
    frontier = list(elems)
    while frontier:
        a = frontier.pop()
        for b in list(elems):
            for c in (m[a][b], m[b][a]):
                if c not in elems:
                    elems.add(c)
                    frontier.append(c)
    return frozenset(elems)


def subgroups(group: FiniteGroup) -> list[frozenset[int]]:
    if group.order > MAX_GROUP_ORDER:
        raise ValueError(f"subgroup enumeration is capped at order {MAX_GROUP_ORDER}")
    found = {_closure(group, ())}
    frontier = list(found)
    while frontier:
        H = frontier.pop()
        for g in range(group.order):
            if g not in H:
                K = _closure(group, H | {g})
                if K not in found:
                    found.add(K)
                    frontier.append(K)
    return sorted(found, key=lambda H: (len(H), sorted(H)))


def conjugate(group: FiniteGroup, H, g: int) -> frozenset[int]:
    """g^-1 H g"""
    m, inv = group.mul, group.inverse
    return frozenset(m[m[inv[g]][h]][g] for h in H)


def normalizer(group: FiniteGroup, H) -> frozenset[int]:
    H = frozenset(H)
    return frozenset(g for g in range(group.order) if conjugate(group, H, g) == H)


@dataclass(frozen=True)
class SubgroupClass:
    representative: frozenset[int]
    members: tuple[frozenset[int], ...]
    normalizer_order: int

    @property
    def order(self) -> int:
        return len(self.representative)

    @property
    def quotient_order(self) -> int:
        """|N_G(H) / H|"""
        return self.normalizer_order // self.order


def subgroup_classes(group: FiniteGroup) -> list[SubgroupClass]:
    out, seen = [], set()
    for H in subgroups(group):
        if H in seen:
            continue
        members = sorted({conjugate(group, H, g) for g in range(group.order)},
                         key=lambda K: sorted(K))
        seen.update(members)
        out.append(SubgroupClass(H, tuple(members), len(normalizer(group, H))))
    return out


# --- boxes -------------------------------------------------------------------


@dataclass(frozen=True)
class Box:
    subgroups: SubgroupClass
    configs: tuple[int, ...]
    alpha: int  # number of G-orbits in the box
    orbit_size: int


@dataclass(frozen=True)
class BoxDecomposition:
    group: FiniteGroup
    q: int
    boxes: tuple[Box, ...]

    def box_of(self, config_index: int) -> Box:
        return next(b for b in self.boxes if config_index in b.configs)


def boxes(group: FiniteGroup, q: int) -> BoxDecomposition:
    space = config_space(group, q)
    classes = subgroup_classes(group)
    which = {}
    for k, c in enumerate(classes):
        for H in c.members:
            which[H] = k
    members: list[list[int]] = [[] for _ in classes]
    for i, stab in enumerate(space.stabilizers):
        members[which[stab]].append(i)
    reps = set(space.representatives)
    out = []
    for c, cfgs in zip(classes, members):
        alpha = sum(i in reps for i in cfgs)
        out.append(Box(c, tuple(cfgs), alpha, group.order // c.order))
    return BoxDecomposition(group, q, tuple(out))


def exists_ca_mapping(group: FiniteGroup, q: int, x, y) -> bool:
    """Some CA sends x to y iff G_x <= G_y."""
    return stabilizer(group, x) <= stabilizer(group, y)


def exists_ica_mapping(group: FiniteGroup, q: int, x, y) -> bool:
    """Some invertible CA sends x to y iff G_x = G_y."""
    return stabilizer(group, x) == stabilizer(group, y)


# --- equivariant maps --------------------------------------------------------


class NotEquivariantError(ValueError):
    pass


class NotRegularError(ValueError):
    def __init__(self, witness: tuple[int, ...]):
        super().__init__(f"{witness} is in the image but has no preimage with the same stabiliser")
        self.witness = witness


@dataclass(frozen=True)
class EquivariantMap:
    """A CA over A^G for finite G: ``table[i]`` is the image of configuration i."""

    group: FiniteGroup
    q: int
    table: tuple[int, ...]

    def __post_init__(self):
        space = self.space
        if len(self.table) != space.size:
            raise ValueError(f"table has {len(self.table)} entries, expected {space.size}")
        shift, t = space.shift, self.table
        for i in range(space.size):
            for g in range(space.n):
                if t[shift[i][g]] != shift[t[i]][g]:
                    raise NotEquivariantError(f"equivariance fails at config {i}, element {g}")

    @classmethod
    def _trusted(cls, group, q, table):
        obj = object.__new__(cls)
        object.__setattr__(obj, "group", group)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "table", tuple(table))
        return obj

    @classmethod
    def from_function(cls, group: FiniteGroup, q: int, fn) -> EquivariantMap:
        space = config_space(group, q)
        return cls(group, q, tuple(space.index(fn(space.config(i))) for i in range(space.size)))

    @classmethod
    def identity(cls, group: FiniteGroup, q: int) -> EquivariantMap:
        return cls._trusted(group, q, range(q ** group.order))

    @property
    def space(self) -> ConfigSpace:
        return config_space(self.group, self.q)

    def __call__(self, x):
        space = self.space
        return space.config(self.table[space.index(tuple(x))])

    def then(self, other: EquivariantMap) -> EquivariantMap:
        """Apply self, then other."""
        return EquivariantMap._trusted(self.group, self.q, (other.table[j] for j in self.table))

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.table)


def finite_nonregularity_witness(tau: EquivariantMap) -> tuple[int, ...] | None:
    """A configuration in the image with no stabiliser-matching preimage, if any."""
    space = tau.space
    stabs = space.stabilizers
    good = {y for x, y in enumerate(tau.table) if stabs[x] == stabs[y]}
    for y in sorted(tau.image):
        if y not in good:
            return space.config(y)
    return None


def is_regular_finite(group: FiniteGroup, q: int, tau: EquivariantMap) -> bool:
    _check_map(group, q, tau)
    return finite_nonregularity_witness(tau) is None


def is_weak_inverse_finite(tau: EquivariantMap, sigma: EquivariantMap) -> bool:
    t, s = tau.table, sigma.table
    return all(t[s[y]] == y for y in tau.image)


def weak_inverse_finite(group: FiniteGroup, q: int, tau: EquivariantMap) -> EquivariantMap:
    """Weak inverse sending each image orbit back along a stabiliser-matching preimage.

    Orbit representatives are the smallest configurations of each orbit, and the
    chosen preimage is the smallest one with the same stabiliser.
    """
    _check_map(group, q, tau)
    space = tau.space
    stabs, shift = space.stabilizers, space.shift
    chosen: dict[int, int] = {}
    for x in range(space.size):
        y = tau.table[x]
        if space.orbit_rep[y][0] == y and y not in chosen and stabs[x] == stabs[y]:
            chosen[y] = x
    phi = list(range(space.size))
    for z in tau.image:
        rep, g = space.orbit_rep[z]
        if rep not in chosen:
            raise NotRegularError(space.config(rep))
        phi[z] = shift[chosen[rep]][g]
    sigma = EquivariantMap(group, q, tuple(phi))
    if not is_weak_inverse_finite(tau, sigma):
        raise AssertionError("constructed map is not a weak inverse")
    return sigma


def _check_map(group, q, tau):
    if tau.group != group or tau.q != q:
        raise ValueError("map belongs to a different configuration space")


class MapFamily:
    """Lazily enumerated equivariant maps: one image choice per orbit representative."""

    def __init__(self, group: FiniteGroup, q: int, choices: dict[int, list[int]]):
        self.group, self.q = group, q
        self.choices = choices

    @property
    def size(self) -> int:
        """Exact number of maps; ``len()`` only works while this fits in an index."""
        return math.prod(len(c) for c in self.choices.values())

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        space = config_space(self.group, self.q)
        reps = list(self.choices)
        where = space.orbit_rep
        shift = space.shift
        for images in itertools.product(*(self.choices[r] for r in reps)):
            img = dict(zip(reps, images))
            yield EquivariantMap._trusted(
                self.group, self.q, (shift[img[r]][g] for r, g in where)
            )


def enumerate_ca(group: FiniteGroup, q: int, cap: int = DEFAULT_CA_CAP) -> MapFamily:
    """All CA over A^G: each orbit representative x may go to any y with G_x <= G_y."""
    space = config_space(group, q)
    if space.size > cap:
        raise ValueError(f"{space.size} configurations exceed the cap of {cap}")
    stabs = space.stabilizers
    return MapFamily(group, q, {
        x: [y for y in range(space.size) if stabs[x] <= stabs[y]] for x in space.representatives
    })


def enumerate_R(group: FiniteGroup, q: int) -> MapFamily:
    """Stabiliser-preserving CA: each representative x goes to some y with G_x = G_y."""
    space = config_space(group, q)
    stabs = space.stabilizers
    return MapFamily(group, q, {
        x: [y for y in range(space.size) if stabs[x] == stabs[y]] for x in space.representatives
    })


def in_R(tau: EquivariantMap) -> bool:
    stabs = tau.space.stabilizers
    return all(stabs[x] == stabs[y] for x, y in enumerate(tau.table))


def submonoid_R_size(group: FiniteGroup, q: int) -> int:
    """Order of the product of wreath products (N(H)/H) wr Tran_alpha over boxes."""
    return math.prod(
        b.subgroups.quotient_order ** b.alpha * b.alpha ** b.alpha for b in boxes(group, q).boxes
    )
