"""Finite ternary systems, finite Boolean algebras and the converters between them.

Elements are the integers ``0..n-1``.  The designated constants are stored
explicitly; canonical fixtures put them at indices 0 and 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class InvalidAlgebraError(ValueError):
    """Raised when an input structure fails the Boolean-algebra laws."""

    def __init__(self, law, counterexample=None):
        self.law = law
        self.counterexample = counterexample
        msg = f"not a Boolean algebra: {law} fails"
        if counterexample is not None:
            msg += f" at {counterexample}"
        super().__init__(msg)


class Formula(enum.Enum):
    ITE = "ite"
    GRAU = "grau"
    WHITEMAN = "whiteman"


def _frozen_table(values, shape, size, what):
    arr = np.array(values, dtype=np.int64)
    if arr.shape != shape:
        raise ValueError(f"{what} must have shape {shape}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= size):
        raise ValueError(f"{what} has a value outside 0..{size - 1}")
    arr.setflags(write=False)
    return arr


def _check_constants(size, lo, hi, names):
    if size < 2:
        raise ValueError(f"size must be at least 2, got {size}")
    for name, v in zip(names, (lo, hi)):
        if not 0 <= v < size:
            raise ValueError(f"{name}={v} is outside 0..{size - 1}")
    if lo == hi:
        raise ValueError(f"{names[0]} and {names[1]} must differ")


@dataclass(frozen=True, eq=False)
class FiniteTernarySystem:
    """A carrier ``{0..size-1}`` with constants ``zero``, ``one`` and a full table for p."""

    size: int
    zero: int
    one: int
    table: np.ndarray

    def __post_init__(self):
        _check_constants(self.size, self.zero, self.one, ("zero", "one"))
        n = self.size
        object.__setattr__(self, "table", _frozen_table(self.table, (n, n, n), n, "table"))

    @classmethod
    def from_function(cls, size, zero, one, fn):
        r = range(size)
        return cls(size, zero, one, [[[fn(a, b, c) for c in r] for b in r] for a in r])

    def key(self):
        """Flattened table, the sort key used by the model finder."""
        return tuple(self.table.ravel().tolist())

    def __eq__(self, other):
        if not isinstance(other, FiniteTernarySystem):
            return NotImplemented
        return (self.size, self.zero, self.one) == (other.size, other.zero, other.one) and \
            np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.size, self.zero, self.one, self.table.tobytes()))

    def __repr__(self):
        return f"FiniteTernarySystem(size={self.size}, zero={self.zero}, one={self.one}, table={self.key()})"


@dataclass(frozen=True, eq=False)
class FiniteBooleanAlgebra:
    """Candidate Boolean algebra given by tables.  Laws are not checked here."""

    size: int
    bottom: int
    top: int
    meet: np.ndarray
    join: np.ndarray
    neg: np.ndarray

    def __post_init__(self):
        _check_constants(self.size, self.bottom, self.top, ("bottom", "top"))
        n = self.size
        object.__setattr__(self, "meet", _frozen_table(self.meet, (n, n), n, "meet"))
        object.__setattr__(self, "join", _frozen_table(self.join, (n, n), n, "join"))
        object.__setattr__(self, "neg", _frozen_table(self.neg, (n,), n, "neg"))

    def __eq__(self, other):
        if not isinstance(other, FiniteBooleanAlgebra):
            return NotImplemented
        return (self.size, self.bottom, self.top) == (other.size, other.bottom, other.top) and \
            np.array_equal(self.meet, other.meet) and np.array_equal(self.join, other.join) and \
            np.array_equal(self.neg, other.neg)

    def __hash__(self):
        return hash((self.size, self.bottom, self.top, self.meet.tobytes(),
                     self.join.tobytes(), self.neg.tobytes()))


@dataclass(frozen=True, eq=False)
class DerivedSignature:
    """Negation, meet and join read off a ternary system."""

    neg: np.ndarray
    meet: np.ndarray
    join: np.ndarray


@dataclass(frozen=True, eq=False)
class RingOps:
    add: np.ndarray
    mul: np.ndarray


def eval_p(sys, a, b, c):
    n = sys.size
    for v in (a, b, c):
        if not 0 <= v < n:
            raise IndexError(f"element {v} is outside 0..{n - 1}")
    return int(sys.table[a, b, c])


def derive_signature(sys):
    """neg(a) = p(1,a,0), meet(a,b) = p(0,a,b), join(a,b) = p(a,b,1)."""
    t, z, o = sys.table, sys.zero, sys.one
    neg = t[o, :, z].copy()
    meet = t[z, :, :].copy()
    join = t[:, :, o].copy()
    for arr in (neg, meet, join):
        arr.setflags(write=False)
    return DerivedSignature(neg=neg, meet=meet, join=join)


def boolean_from_ternary(sys):
    """The candidate algebra of derived operations.  Never validated here."""
    sig = derive_signature(sys)
    return FiniteBooleanAlgebra(sys.size, sys.zero, sys.one, sig.meet, sig.join, sig.neg)


def _require_boolean(ba):
    # local import: properties imports this module
    from .properties import PropertyId, check_property

    report = check_property(ba, PropertyId.BA)
    if not report.holds:
        raise InvalidAlgebraError(report.law, report.counterexample)


def ternary_from_boolean(ba, formula=Formula.ITE):
    formula = Formula(formula.lower() if isinstance(formula, str) else formula)
    _require_boolean(ba)
    m, j, nb = ba.meet, ba.join, ba.neg
    a, b, c = np.ogrid[0:ba.size, 0:ba.size, 0:ba.size]
    if formula is Formula.ITE:
        table = j[m[nb[b], a], m[b, c]]
    elif formula is Formula.GRAU:
        table = j[j[m[a, b], m[b, c]], m[c, a]]
    else:
        table = j[j[m[nb[a], nb[b]], m[nb[b], nb[c]]], m[nb[c], nb[a]]]
    return FiniteTernarySystem(ba.size, ba.bottom, ba.top, table)


def ring_tables(ba):
    """add(a,b) = (b' & a) | (b & a'), mul = meet; no validation."""
    m, j, nb = ba.meet, ba.join, ba.neg
    a, b = np.ogrid[0:ba.size, 0:ba.size]
    add = j[m[nb[b], a], m[b, nb[a]]]
    mul = m.copy()
    add.setflags(write=False)
    mul.setflags(write=False)
    return RingOps(add=add, mul=mul)


def derive_ring_ops(ba):
    _require_boolean(ba)
    return ring_tables(ba)


def power_set_algebra(k):
    """Subsets of a k-element set as bit masks, with the full set moved to index 1."""
    if not 1 <= k <= 4:
        raise ValueError(f"k must be in 1..4, got {k}")
    n = 1 << k
    full = n - 1
    label = list(range(n))
    label[1], label[full] = label[full], label[1]
    mask = [0] * n
    for m, i in enumerate(label):
        mask[i] = m
    meet = [[label[mask[x] & mask[y]] for y in range(n)] for x in range(n)]
    join = [[label[mask[x] | mask[y]] for y in range(n)] for x in range(n)]
    neg = [label[full ^ mask[x]] for x in range(n)]
    return FiniteBooleanAlgebra(n, 0, 1, meet, join, neg)


def compare_tables(t1, t2):
    """First triple (lexicographic) where the two systems disagree, or None."""
    if t1.size != t2.size:
        raise ValueError(f"size mismatch: {t1.size} vs {t2.size}")
    diff = np.flatnonzero(t1.table.ravel() != t2.table.ravel())
    if diff.size == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(diff[0], t1.table.shape))
