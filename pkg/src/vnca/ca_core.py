"""One-dimensional cellular automata given by explicit local-rule tables.

A rule with memory window ``[-left, right]`` over the alphabet ``{0..q-1}``
stores one output symbol per window word.  Words are indexed as base-q
integers with the leftmost cell most significant, so for elementary rules
the table read from index 7 down to 0 is the Wolfram number in binary.

Composition follows the right-action convention: ``compose(a, b)`` applies
``a`` first and then ``b``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

# Composed windows beyond this many cells are refused (q**width table entries).
MAX_TABLE_ENTRIES = 1 << 26


@dataclass(frozen=True)
class RuleTable:
    """Local rule of a 1D CA.

    ``table[i]`` is the output on the window word whose base-q value is ``i``
    (leftmost cell = most significant digit).
    """

    q: int
    left: int
    right: int
    table: bytes

    def __post_init__(self):
        if not 2 <= self.q <= 256:
            raise ValueError(f"alphabet size must be in 2..256, got {self.q}")
        if self.left < 0 or self.right < 0:
            raise ValueError("window bounds must be non-negative")
        if not isinstance(self.table, bytes):
            object.__setattr__(self, "table", bytes(self.table))
        if len(self.table) != self.q ** self.width:
            raise ValueError(
                f"table has {len(self.table)} entries, expected {self.q ** self.width}"
            )
        if self.table and max(self.table) >= self.q:
            raise ValueError("output symbol out of range")

    @property
    def width(self) -> int:
        return self.left + self.right + 1

    @cached_property
    def array(self) -> np.ndarray:
        return np.frombuffer(self.table, dtype=np.uint8)

    def __call__(self, word) -> int:
        """Output of the local rule on one window word (sequence of symbols)."""
        return self.table[word_index(word, self.q)]

    def __repr__(self):
        return f"RuleTable({format_rule(self)!r})"


@dataclass(frozen=True)
class PeriodicConfig:
    """A bi-infinite configuration of Z given by one stored period.

    The stored period ``len(cells)`` is kept as given; reduction to the
    least period is a separate query (``vnca.symbolic.least_period``).
    """

    q: int
    cells: tuple[int, ...]

    def __post_init__(self):
        cells = tuple(int(c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        if self.q < 2:
            raise ValueError("alphabet size must be at least 2")
        if not cells:
            raise ValueError("a periodic configuration needs at least one cell")
        if min(cells) < 0 or max(cells) >= self.q:
            raise ValueError("cell symbol out of range")

    @classmethod
    def from_string(cls, s: str, q: int = 2) -> PeriodicConfig:
        return cls(q, tuple(int(ch, 36) for ch in s))

    @classmethod
    def constant(cls, k: int, q: int = 2, period: int = 1) -> PeriodicConfig:
        return cls(q, (k,) * period)

    @property
    def period(self) -> int:
        return len(self.cells)

    def __str__(self):
        return "".join(np.base_repr(c, 36).lower() for c in self.cells)

    def rotate(self, k: int = 1) -> PeriodicConfig:
        """Shift so that new cell i is old cell i + k."""
        k %= self.period
        return PeriodicConfig(self.q, self.cells[k:] + self.cells[:k])

    def reversed(self) -> PeriodicConfig:
        """Reflection through the origin, ``(i)x_rev = (-i)x``."""
        c = self.cells
        return PeriodicConfig(self.q, (c[0],) + tuple(reversed(c[1:])))

    def complemented(self) -> PeriodicConfig:
        return PeriodicConfig(self.q, tuple(self.q - 1 - c for c in self.cells))

    def repeat(self, k: int) -> PeriodicConfig:
        return PeriodicConfig(self.q, self.cells * k)


def word_index(word, q: int) -> int:
    idx = 0
    for s in word:
        idx = idx * q + s
    return idx


def index_word(idx: int, q: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        idx, d = divmod(idx, q)
        out.append(d)
    return tuple(reversed(out))


def _digits(n_words: int, q: int, width: int) -> np.ndarray:
    """Digit matrix of shape (width, n_words): row k is cell k of every word."""
    idx = np.arange(n_words, dtype=np.int64)
    return np.stack([(idx // q ** (width - 1 - k)) % q for k in range(width)])


def _check_size(q: int, width: int):
    if q ** width > MAX_TABLE_ENTRIES:
        raise ValueError(f"window of {width} cells over q={q} is too large")


def _check_alphabets(a, b):
    if a.q != b.q:
        raise ValueError(f"alphabet mismatch: {a.q} != {b.q}")


def rule_from_function(q: int, left: int, right: int, fn) -> RuleTable:
    """Tabulate ``fn(word)`` over all window words."""
    width = left + right + 1
    _check_size(q, width)
    return RuleTable(
        q, left, right, bytes(fn(index_word(i, q, width)) for i in range(q ** width))
    )


def rule_from_wolfram(number: int) -> RuleTable:
    if not 0 <= number <= 255:
        raise ValueError(f"Wolfram number must be in 0..255, got {number}")
    return RuleTable(2, 1, 1, bytes((number >> i) & 1 for i in range(8)))


def wolfram_number(rule: RuleTable) -> int | None:
    """Wolfram number of a binary rule whose minimal window fits in [-1, 1]."""
    if rule.q != 2:
        return None
    m = minimal_memory(rule)
    if m.left > 1 or m.right > 1:
        return None
    t = extend(m, 1, 1).table
    return sum(t[i] << i for i in range(8))


def apply_periodic(rule: RuleTable, x: PeriodicConfig) -> PeriodicConfig:
    _check_alphabets(rule, x)
    cells = np.asarray(x.cells, dtype=np.int64)
    idx = np.zeros(len(cells), dtype=np.int64)
    for k in range(-rule.left, rule.right + 1):
        # cell i + k for every i
        idx = idx * rule.q + np.roll(cells, -k)
    return PeriodicConfig(x.q, tuple(rule.array[idx].tolist()))


def apply_words(rule: RuleTable, words: np.ndarray) -> np.ndarray:
    """Apply a rule to finite words without wrap-around.

    ``words`` has shape (n, L); the result has shape (n, L - width + 1).
    """
    n, length = words.shape
    out_len = length - rule.width + 1
    if out_len < 1:
        raise ValueError("words shorter than the rule window")
    idx = np.zeros((n, out_len), dtype=np.int64)
    for k in range(rule.width):
        idx = idx * rule.q + words[:, k : k + out_len]
    return rule.array[idx]


def extend(rule: RuleTable, left: int, right: int) -> RuleTable:
    """Same CA on the larger window [-left, right] with dummy outer cells."""
    if left < rule.left or right < rule.right:
        raise ValueError("can only extend to a window containing the current one")
    if (left, right) == (rule.left, rule.right):
        return rule
    width = left + right + 1
    _check_size(rule.q, width)
    q = rule.q
    idx = np.arange(q ** width, dtype=np.int64)
    # drop the (right - rule.right) trailing digits, keep rule.width digits
    inner = (idx // q ** (right - rule.right)) % q ** rule.width
    return RuleTable(q, left, right, rule.array[inner].tobytes())


def compose(a: RuleTable, b: RuleTable) -> RuleTable:
    """The CA that applies ``a`` and then ``b``."""
    _check_alphabets(a, b)
    q = a.q
    left, right = a.left + b.left, a.right + b.right
    width = left + right + 1
    _check_size(q, width)
    idx = np.arange(q ** width, dtype=np.int64)
    b_idx = np.zeros_like(idx)
    for j in range(b.width):
        # a's window starting at cell j of the long word
        a_idx = (idx // q ** (width - j - a.width)) % q ** a.width
        b_idx = b_idx * q + a.array[a_idx]
    return RuleTable(q, left, right, b.array[b_idx].tobytes())


def minimal_memory(rule: RuleTable) -> RuleTable:
    """Shrink the window while the dropped end cell is a dummy coordinate.

    The window always keeps cell 0.
    """
    q, left, right = rule.q, rule.left, rule.right
    t = rule.array
    while left > 0:
        rows = t.reshape(q, -1)
        if not (rows == rows[0]).all():
            break
        t, left = rows[0], left - 1
    while right > 0:
        cols = t.reshape(-1, q)
        if not (cols == cols[:, :1]).all():
            break
        t, right = cols[:, 0], right - 1
    if (left, right) == (rule.left, rule.right):
        return rule
    return RuleTable(q, left, right, np.ascontiguousarray(t).tobytes())


def rules_equal(a: RuleTable, b: RuleTable) -> bool:
    _check_alphabets(a, b)
    left, right = max(a.left, b.left), max(a.right, b.right)
    return extend(a, left, right).table == extend(b, left, right).table


def mirror(rule: RuleTable) -> RuleTable:
    q, width = rule.q, rule.width
    digits = _digits(q ** width, q, width)
    rev = np.zeros(q ** width, dtype=np.int64)
    for k in reversed(range(width)):
        rev = rev * q + digits[k]
    return RuleTable(q, rule.right, rule.left, rule.array[rev].tobytes())


def _require_binary(rule):
    if rule.q != 2:
        raise ValueError("complement rules are defined for q = 2 only")


def complement_left(rule: RuleTable) -> RuleTable:
    """Complement every cell, then apply ``rule`` (phi51 then rule)."""
    _require_binary(rule)
    return RuleTable(2, rule.left, rule.right, rule.array[::-1].tobytes())


def complement_right(rule: RuleTable) -> RuleTable:
    """Apply ``rule``, then complement (rule then phi51)."""
    _require_binary(rule)
    return RuleTable(2, rule.left, rule.right, (1 - rule.array).astype(np.uint8).tobytes())


IDENTITY = rule_from_wolfram(204)
COMPLEMENT = rule_from_wolfram(51)


# --- textual literals -------------------------------------------------------

_TABLE_RE = re.compile(r"table:q=(\d+),l=(\d+),r=(\d+),hex=([0-9a-fA-F]+)$")


def _hex_width(q: int, n_entries: int) -> int:
    return max(1, ((q ** n_entries - 1).bit_length() + 3) // 4)


def format_rule(rule: RuleTable) -> str:
    """``eca:N`` for radius-1 binary tables, ``table:...`` otherwise."""
    if rule.q == 2 and rule.left == rule.right == 1:
        return f"eca:{sum(rule.table[i] << i for i in range(8))}"
    value = 0
    for s in reversed(rule.table):  # descending input order, big-endian
        value = value * rule.q + s
    hexw = _hex_width(rule.q, len(rule.table))
    return f"table:q={rule.q},l={rule.left},r={rule.right},hex={value:0{hexw}x}"


def parse_rule(text: str) -> RuleTable:
    text = text.strip()
    if text.startswith("eca:"):
        return rule_from_wolfram(int(text[4:]))
    m = _TABLE_RE.match(text)
    if not m:
        raise ValueError(f"unrecognised rule literal: {text!r}")
    q, left, right = (int(g) for g in m.groups()[:3])
    n_entries = q ** (left + right + 1)
    if not 2 <= q <= 256 or n_entries > MAX_TABLE_ENTRIES:
        raise ValueError("table literal out of supported range")
    value = int(m.group(4), 16)
    if value >= q ** n_entries:
        raise ValueError("table literal value out of range")
    out = bytearray(n_entries)
    for i in range(n_entries):
        value, out[i] = divmod(value, q)
    return RuleTable(q, left, right, bytes(out))
