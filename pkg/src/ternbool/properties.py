"""Exhaustive equational property checks on finite ternary systems and Boolean algebras.

Every property is a conjunction of clauses.  A clause is a universally
quantified identity whose variables are listed in order of first appearance;
the check evaluates it on the whole grid at once with numpy and reports the
first failing instantiation in that variable order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .structures import (FiniteBooleanAlgebra, FiniteTernarySystem, boolean_from_ternary,
                         derive_signature, ring_tables)


class PropertyId(enum.Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    CC = "CC"
    COND_II = "COND_II"
    COND_III = "COND_III"
    T4 = "T4"
    IDEM = "IDEM"
    COMM_MEET = "COMM_MEET"
    COMM_JOIN = "COMM_JOIN"
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    L5 = "L5"
    L6 = "L6"
    L7 = "L7"
    L8 = "L8"
    L9 = "L9"
    L10 = "L10"
    ABSORB = "ABSORB"
    COMPLEMENT = "COMPLEMENT"
    DIST = "DIST"
    BA = "BA"
    CONCL = "CONCL"
    RING_IDENT = "RING_IDENT"
    CANCEL = "CANCEL"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls(name.strip().upper())
        except ValueError:
            raise ValueError(f"unknown property {name!r}") from None


BOOLEAN_SIDE = frozenset({PropertyId.BA, PropertyId.RING_IDENT, PropertyId.CANCEL})

C_AXIOMS = (PropertyId.C1, PropertyId.C2, PropertyId.C3, PropertyId.C4)
A_AXIOMS = (PropertyId.A1, PropertyId.A2, PropertyId.A3)
B_AXIOMS = (PropertyId.B1, PropertyId.B2, PropertyId.B3, PropertyId.B4)
LEMMA1 = tuple(PropertyId(f"L{i}") for i in range(1, 11))


class PropertyKindError(TypeError):
    """Property applied to the wrong kind of structure."""


@dataclass(frozen=True)
class PropertyReport:
    property: PropertyId
    holds: bool
    counterexample: Optional[tuple] = None
    law: Optional[str] = None  # label of the failing clause

    def __str__(self):
        if self.holds:
            return f"PASS {self.property.value}"
        ce = "(" + ",".join(str(v) for v in self.counterexample) + ")"
        return f"FAIL {self.property.value} at {ce}"


class _Ternary:
    def __init__(self, sys, aux):
        sig = derive_signature(sys)
        self.n = sys.size
        self.p = sys.table
        self.z, self.o = sys.zero, sys.one
        self.neg, self.meet, self.join = sig.neg, sig.meet, sig.join
        self.prim = self.neg if aux is None else np.asarray(aux, dtype=np.int64)


class _Boolean:
    def __init__(self, ba):
        self.n = ba.size
        self.z, self.o = ba.bottom, ba.top
        self.neg, self.meet, self.join = ba.neg, ba.meet, ba.join


def _eq(*sides):
    out = sides[0] == sides[1]
    for s in sides[2:]:
        out = out & (sides[0] == s)
    return out


# Each clause: (label, variable names, function(ctx, *vars) -> boolean array).
# Variables are listed in order of first appearance in the identity.
_TERNARY = {
    PropertyId.C1: [("p(0,a,1)=a", "a", lambda s, a: s.p[s.z, a, s.o] == a)],
    PropertyId.C2: [("p(a,b,a)=a", "ab", lambda s, a, b: s.p[a, b, a] == a)],
    PropertyId.C3: [(
        "p(a,p(b1,b2,b3),c)=p(p(a,b1,c),b2,p(a,b3,c))", ("a", "b1", "b2", "b3", "c"),
        lambda s, a, b1, b2, b3, c:
            s.p[a, s.p[b1, b2, b3], c] == s.p[s.p[a, b1, c], b2, s.p[a, b3, c]])],
    PropertyId.C4: [("p(a,0,b)=a=p(b,1,a)", "ab",
                     lambda s, a, b: _eq(a, s.p[a, s.z, b], s.p[b, s.o, a]))],
    PropertyId.A1: [(
        "p(a,b,p(c,d,e))=p(p(a,b,c),d,p(a,b,e))", "abcde",
        lambda s, a, b, c, d, e: s.p[a, b, s.p[c, d, e]] == s.p[s.p[a, b, c], d, s.p[a, b, e]])],
    PropertyId.A2: [("p(a,b,b)=p(b,b,a)=b", "ab",
                     lambda s, a, b: _eq(b, s.p[a, b, b], s.p[b, b, a]))],
    PropertyId.A3: [("p(a,b,~b)=p(~b,b,a)", "ab",
                     lambda s, a, b: s.p[a, b, s.prim[b]] == s.p[s.prim[b], b, a])],
    PropertyId.B1: [("p(0,a,1)=a", "a", lambda s, a: s.p[s.z, a, s.o] == a)],
    PropertyId.B2: [("p(a,b,a)=a", "ab", lambda s, a, b: s.p[a, b, a] == a)],
    PropertyId.B3: [(
        "p(p(a,b,c),d,e)=p(p(a,d,e),b,p(c,d,e))", "abcde",
        lambda s, a, b, c, d, e: s.p[s.p[a, b, c], d, e] == s.p[s.p[a, d, e], b, s.p[c, d, e]])],
    PropertyId.B4: [("p(a,b,c)=p(b,a,c)=p(b,c,a)", "abc",
                     lambda s, a, b, c: _eq(s.p[a, b, c], s.p[b, a, c], s.p[b, c, a]))],
    PropertyId.CC: [("p(a,b,c)=p(a,c,b)=p(c,a,b)", "abc",
                     lambda s, a, b, c: _eq(s.p[a, b, c], s.p[a, c, b], s.p[c, a, b]))],
    PropertyId.COND_II: [(
        "p(a,b,c)=(~b^a)v(b^c)", "abc",
        lambda s, a, b, c: s.p[a, b, c] == s.join[s.meet[s.neg[b], a], s.meet[b, c]])],
    PropertyId.COND_III: [("p(a,a,b)=p(0,a,b)", "ab",
                           lambda s, a, b: s.p[a, a, b] == s.p[s.z, a, b])],
    PropertyId.T4: [("p(b,b,a)=p(0,b,a)=p(0,a,b)=p(a,a,b)", "ba",
                     lambda s, b, a: _eq(s.p[b, b, a], s.p[s.z, b, a], s.p[s.z, a, b], s.p[a, a, b]))],
    PropertyId.IDEM: [("p(0,a,a)=a=p(a,a,1)", "a",
                       lambda s, a: _eq(a, s.p[s.z, a, a], s.p[a, a, s.o]))],
    PropertyId.COMM_MEET: [("a^b=b^a", "ab", lambda s, a, b: s.meet[a, b] == s.meet[b, a])],
    PropertyId.COMM_JOIN: [("avb=bva", "ab", lambda s, a, b: s.join[a, b] == s.join[b, a])],
    PropertyId.L1: [
        ("~1=0", "", lambda s: np.bool_(s.neg[s.o] == s.z)),
        ("~0=1", "", lambda s: np.bool_(s.neg[s.z] == s.o)),
    ],
    PropertyId.L2: [("~~a=a", "a", lambda s, a: s.neg[s.neg[a]] == a)],
    PropertyId.L3: [("p(c,b,a)=p(a,~b,c)", "cba",
                     lambda s, c, b, a: s.p[c, b, a] == s.p[a, s.neg[b], c])],
    PropertyId.L4: [("~p(a,b,c)=p(~a,b,~c)", "abc",
                     lambda s, a, b, c: s.neg[s.p[a, b, c]] == s.p[s.neg[a], b, s.neg[c]])],
    PropertyId.L5: [("~p(a,b,c)=p(~c,~b,~a)", "abc",
                     lambda s, a, b, c: s.neg[s.p[a, b, c]] == s.p[s.neg[c], s.neg[b], s.neg[a]])],
    PropertyId.L6: [
        ("~(a^b)=~bv~a", "ab", lambda s, a, b: s.neg[s.meet[a, b]] == s.join[s.neg[b], s.neg[a]]),
        ("~(avb)=~b^~a", "ab", lambda s, a, b: s.neg[s.join[a, b]] == s.meet[s.neg[b], s.neg[a]]),
    ],
    PropertyId.L7: [
        ("(a^b)^c=a^(b^c)", "abc",
         lambda s, a, b, c: s.meet[s.meet[a, b], c] == s.meet[a, s.meet[b, c]]),
        ("a^1=a=1^a", "a", lambda s, a: _eq(a, s.meet[a, s.o], s.meet[s.o, a])),
    ],
    PropertyId.L8: [
        ("(avb)vc=av(bvc)", "abc",
         lambda s, a, b, c: s.join[s.join[a, b], c] == s.join[a, s.join[b, c]]),
        ("av0=a=0va", "a", lambda s, a: _eq(a, s.join[a, s.z], s.join[s.z, a])),
    ],
    PropertyId.L9: [("a^0=0=0^a", "a", lambda s, a: _eq(s.z, s.meet[a, s.z], s.meet[s.z, a]))],
    PropertyId.L10: [("av1=1=1va", "a", lambda s, a: _eq(s.o, s.join[a, s.o], s.join[s.o, a]))],
    PropertyId.ABSORB: [
        ("av(b^a)=a", "ab", lambda s, a, b: s.join[a, s.meet[b, a]] == a),
        ("(b^a)va=a", "ba", lambda s, b, a: s.join[s.meet[b, a], a] == a),
        ("(avb)^a=a", "ab", lambda s, a, b: s.meet[s.join[a, b], a] == a),
    ],
    PropertyId.COMPLEMENT: [
        ("~a^a=0", "a", lambda s, a: s.meet[s.neg[a], a] == s.z),
        ("~ava=1", "a", lambda s, a: s.join[s.neg[a], a] == s.o),
    ],
    PropertyId.DIST: [
        ("(b^a)v(c^a)=(bvc)^a", "bac",
         lambda s, b, a, c: s.join[s.meet[b, a], s.meet[c, a]] == s.meet[s.join[b, c], a]),
        ("(avb)^(avc)=av(b^c)", "abc",
         lambda s, a, b, c: s.meet[s.join[a, b], s.join[a, c]] == s.join[a, s.meet[b, c]]),
    ],
    PropertyId.CONCL: [("p(0,a,b)=p(0,b,a)=p(a,a,b)", "ab",
                        lambda s, a, b: _eq(s.p[s.z, a, b], s.p[s.z, b, a], s.p[a, a, b]))],
}

_BA_LAWS = [
    ("meet commutativity", "ab", lambda s, a, b: s.meet[a, b] == s.meet[b, a]),
    ("join commutativity", "ab", lambda s, a, b: s.join[a, b] == s.join[b, a]),
    ("meet associativity", "abc",
     lambda s, a, b, c: s.meet[s.meet[a, b], c] == s.meet[a, s.meet[b, c]]),
    ("join associativity", "abc",
     lambda s, a, b, c: s.join[s.join[a, b], c] == s.join[a, s.join[b, c]]),
    ("meet absorption", "ab", lambda s, a, b: s.meet[a, s.join[a, b]] == a),
    ("join absorption", "ab", lambda s, a, b: s.join[a, s.meet[a, b]] == a),
    ("meet distributivity", "abc",
     lambda s, a, b, c: s.meet[a, s.join[b, c]] == s.join[s.meet[a, b], s.meet[a, c]]),
    ("join distributivity", "abc",
     lambda s, a, b, c: s.join[a, s.meet[b, c]] == s.meet[s.join[a, b], s.join[a, c]]),
    ("bottom annihilates meet", "a", lambda s, a: s.meet[a, s.z] == s.z),
    ("top annihilates join", "a", lambda s, a: s.join[a, s.o] == s.o),
    ("top is meet identity", "a", lambda s, a: s.meet[a, s.o] == a),
    ("bottom is join identity", "a", lambda s, a: s.join[a, s.z] == a),
    ("meet complement", "a", lambda s, a: s.meet[a, s.neg[a]] == s.z),
    ("join complement", "a", lambda s, a: s.join[a, s.neg[a]] == s.o),
]


def _ring_ident(s, a, b, c):
    ring = s.ring
    left = s.join[s.meet[s.neg[b], a], s.meet[b, c]]
    right = ring.add[ring.mul[s.neg[b], a], ring.mul[b, c]]
    return left == right


def _cancel(s, x, x2, a):
    premise = (s.meet[x, a] == s.meet[x2, a]) & (s.join[a, x] == s.join[a, x2])
    return ~premise | (x == x2)


_BOOLEAN = {
    PropertyId.BA: _BA_LAWS,
    PropertyId.RING_IDENT: [("(~b^a)v(b^c)=~b*a+b*c", "abc", _ring_ident)],
    PropertyId.CANCEL: [("x^a=x'^a & avx=avx' => x=x'", ("x", "x'", "a"), _cancel)],
}


def _first_failure(ctx, clauses):
    n = ctx.n
    for label, names, fn in clauses:
        k = len(names)
        grids = [np.arange(n).reshape((1,) * i + (n,) + (1,) * (k - i - 1)) for i in range(k)]
        holds = np.broadcast_to(np.asarray(fn(ctx, *grids)), (n,) * k)
        bad = np.flatnonzero(~holds.ravel())
        if bad.size:
            idx = np.unravel_index(bad[0], (n,) * k) if k else ()
            return label, tuple(int(i) for i in idx)
    return None


def check_property(subject, prop, aux=None):
    """Exhaustively check one property; ``aux`` overrides the negation used by A3."""
    prop = PropertyId.parse(prop)
    if prop in BOOLEAN_SIDE:
        if not isinstance(subject, FiniteBooleanAlgebra):
            raise PropertyKindError(f"{prop.value} applies to Boolean algebras, not ternary systems")
        ctx = _Boolean(subject)
        if prop is PropertyId.RING_IDENT:
            ctx.ring = ring_tables(subject)
        clauses = _BOOLEAN[prop]
    else:
        if not isinstance(subject, FiniteTernarySystem):
            raise PropertyKindError(f"{prop.value} applies to ternary systems, not Boolean algebras")
        if aux is not None and len(aux) != subject.size:
            raise ValueError("aux negation table has the wrong length")
        ctx = _Ternary(subject, aux)
        clauses = _TERNARY[prop]
    failure = _first_failure(ctx, clauses)
    if failure is None:
        return PropertyReport(prop, True)
    law, ce = failure
    return PropertyReport(prop, False, ce, law)


def holds_all(subject, props, aux=None):
    return all(check_property(subject, p, aux).holds for p in props)


@dataclass(frozen=True)
class Theorem1Report:
    c_axioms: tuple
    meet_commutative: PropertyReport
    cond_i: PropertyReport
    cond_ii: PropertyReport
    cond_iii: PropertyReport
    equivalence_respected: bool

    @property
    def hypotheses_hold(self):
        return all(r.holds for r in self.c_axioms) and self.meet_commutative.holds

    def lines(self):
        out = [str(r) for r in self.c_axioms]
        out.append(str(self.meet_commutative))
        for name, r in (("cond_i", self.cond_i), ("cond_ii", self.cond_ii),
                        ("cond_iii", self.cond_iii)):
            out.append(str(r).replace(r.property.value, name, 1))
        out.append(("PASS" if self.equivalence_respected else "FAIL") + " equivalence")
        return out


def verify_theorem1(sys):
    """Check the hypotheses and the three equivalent conditions on one system."""
    c = tuple(check_property(sys, p) for p in C_AXIOMS)
    comm = check_property(sys, PropertyId.COMM_MEET)
    cond_i = check_property(boolean_from_ternary(sys), PropertyId.BA)
    cond_ii = check_property(sys, PropertyId.COND_II)
    cond_iii = check_property(sys, PropertyId.COND_III)
    hyp = all(r.holds for r in c) and comm.holds
    agree = cond_i.holds == cond_ii.holds == cond_iii.holds
    return Theorem1Report(c, comm, cond_i, cond_ii, cond_iii, (not hyp) or agree)
