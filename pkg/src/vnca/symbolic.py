"""Preimages of periodic configurations under 1D cellular automata.

Membership of a periodic configuration ``x`` (period p) in the image of a rule
with window [-l, r] is decided on a finite de Bruijn-style graph.  A node
``(i, u)`` means: the preimage cells ``i-l .. i+r-1`` read ``u``.  The edge
labelled ``a`` appends cell ``i+r``; it exists iff the rule maps the window
``u + a`` (cells ``i-l .. i+r``) to ``x_i``, and it leads to ``(i+1 mod p,
u[1:] + a)``.  Bi-infinite paths are exactly the preimages of ``x``, and a
finite graph carries a bi-infinite path iff it has a cycle.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .ca_core import PeriodicConfig, RuleTable, apply_words


def least_period(x: PeriodicConfig) -> int:
    c, p = x.cells, x.period
    for d in range(1, p + 1):
        if p % d == 0 and all(c[i] == c[i % d] for i in range(p)):
            return d
    return p  # unreachable


def _check(rule, x):
    if rule.q != x.q:
        raise ValueError(f"alphabet mismatch: {rule.q} != {x.q}")


@dataclass(frozen=True)
class PreimageGraph:
    """Node ``i * q**(l+r) + u`` stands for (residue i, overlap word u)."""

    period: int
    n_words: int
    succ: tuple[tuple[int, ...], ...]

    @property
    def n_nodes(self) -> int:
        return self.period * self.n_words

    def has_cycle(self) -> bool:
        # trim nodes without in- or out-edges until stable
        n = self.n_nodes
        indeg = [0] * n
        pred: list[list[int]] = [[] for _ in range(n)]
        for v, outs in enumerate(self.succ):
            for w in outs:
                indeg[w] += 1
                pred[w].append(v)
        outdeg = [len(s) for s in self.succ]
        alive = [True] * n
        queue = deque(v for v in range(n) if indeg[v] == 0 or outdeg[v] == 0)
        remaining = n
        while queue:
            v = queue.popleft()
            if not alive[v]:
                continue
            alive[v] = False
            remaining -= 1
            for w in self.succ[v]:
                if alive[w]:
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        queue.append(w)
            for u in pred[v]:
                if alive[u]:
                    outdeg[u] -= 1
                    if outdeg[u] == 0:
                        queue.append(u)
        return remaining > 0


def preimage_graph(rule: RuleTable, x: PeriodicConfig) -> PreimageGraph:
    _check(rule, x)
    q, p = rule.q, x.period
    overlap = rule.left + rule.right
    n_words = q ** overlap
    table = rule.table
    succ = []
    for i in range(p):
        target = x.cells[i]
        base_next = ((i + 1) % p) * n_words
        for u in range(n_words):
            outs = []
            for a in range(q):
                window = u * q + a
                if table[window] == target:
                    outs.append(base_next + window % n_words)
            succ.append(tuple(outs))
    return PreimageGraph(p, n_words, tuple(succ))


def has_preimage(rule: RuleTable, x: PeriodicConfig) -> bool:
    return preimage_graph(rule, x).has_cycle()


def all_words(q: int, length: int) -> np.ndarray:
    """Every word of the given length, in ascending base-q order, shape (q**length, length)."""
    idx = np.arange(q ** length, dtype=np.int64)
    return np.stack(
        [(idx // q ** (length - 1 - k)) % q for k in range(length)], axis=1
    ).astype(np.int64)


def _periodic_preimage_words(rule: RuleTable, x: PeriodicConfig, p: int) -> np.ndarray:
    words = all_words(rule.q, p)
    # column j of the padded word is cell j - l, read cyclically
    cols = (np.arange(p + rule.left + rule.right) - rule.left) % p
    images = apply_words(rule, words[:, cols])
    target = np.array([x.cells[i % x.period] for i in range(p)], dtype=np.uint8)
    return words[(images == target).all(axis=1)]


def periodic_preimages(rule: RuleTable, x: PeriodicConfig, p: int) -> set[PeriodicConfig]:
    """All p-periodic configurations mapped onto ``x``, screened over all q**p words."""
    _check(rule, x)
    if p < 1 or p % least_period(x):
        raise ValueError(f"period {p} is not a multiple of the least period of x")
    return {
        PeriodicConfig(rule.q, tuple(w)) for w in _periodic_preimage_words(rule, x, p).tolist()
    }


def has_periodic_preimage_bruteforce(rule: RuleTable, x: PeriodicConfig) -> bool:
    """Oracle for ``has_preimage``: try every period k*p with k <= q**(l+r)."""
    _check(rule, x)
    p = x.period
    for k in range(1, rule.q ** (rule.left + rule.right) + 1):
        if len(_periodic_preimage_words(rule, x, k * p)):
            return True
    return False


def necklaces(q: int, length: int, primitive: bool = True):
    """Lexicographically least rotation of each rotation class, ascending.

    With ``primitive`` only words of least period exactly ``length`` are kept.
    """
    for w in all_words(q, length).tolist():
        w = tuple(w)
        if any(w[k:] + w[:k] < w for k in range(1, length)):
            continue
        if primitive and any(
            length % d == 0 and w[d:] + w[:d] == w for d in range(1, length)
        ):
            continue
        yield PeriodicConfig(q, w)
