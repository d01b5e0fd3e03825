"""Exhaustive search for finite ternary systems satisfying chosen axioms.

Cells forced by C1, C2 and C4 are pinned up front.  The remaining cells are
assigned in lexicographic triple order with values ``0..n-1``; after each
assignment only the C3 instances and equality constraints that mention the
new cell are re-checked.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .properties import PropertyId, check_property
from .structures import FiniteTernarySystem

UNASSIGNED = -1
MAX_SIZE = 4

C1, C2, C3, C4 = PropertyId.C1, PropertyId.C2, PropertyId.C3, PropertyId.C4
SEARCHABLE = frozenset({C1, C2, C3, C4, PropertyId.COMM_MEET, PropertyId.COND_III,
                        PropertyId.CC, PropertyId.IDEM, PropertyId.CONCL})
PINNING = (C1, C2, C4)


class SearchUsageError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """Raised when the time budget runs out; ``models`` holds what was found so far."""

    def __init__(self, models):
        self.models = models
        super().__init__(f"search budget exceeded after {len(models)} models")


class PinConflict(ValueError):
    def __init__(self, triple, old, new):
        self.triple = triple
        super().__init__(f"pins disagree at {triple}: {old} vs {new}")


@dataclass
class PartialTable:
    size: int
    zero: int
    one: int
    cells: list  # flat, UNASSIGNED where free

    def index(self, a, b, c):
        return (a * self.size + b) * self.size + c

    def triple(self, i):
        n = self.size
        return i // (n * n), (i // n) % n, i % n

    def get(self, a, b, c):
        v = self.cells[self.index(a, b, c)]
        return None if v == UNASSIGNED else v

    def free_cells(self):
        return [self.triple(i) for i, v in enumerate(self.cells) if v == UNASSIGNED]

    def is_complete(self):
        return UNASSIGNED not in self.cells

    def to_system(self):
        n = self.size
        return FiniteTernarySystem(n, self.zero, self.one,
                                   [[[self.cells[(a * n + b) * n + c] for c in range(n)]
                                     for b in range(n)] for a in range(n)])


def pin_forced_cells(n, zero=0, one=1, axioms=PINNING):
    """Assign every cell determined directly by the pinning axioms among ``axioms``."""
    if n < 2 or zero == one or not (0 <= zero < n and 0 <= one < n):
        raise SearchUsageError("need n >= 2 and distinct in-range zero/one")
    axioms = {PropertyId.parse(a) for a in axioms}
    pt = PartialTable(n, zero, one, [UNASSIGNED] * n ** 3)

    def pin(a, b, c, v):
        i = pt.index(a, b, c)
        if pt.cells[i] == UNASSIGNED:
            pt.cells[i] = v
        elif pt.cells[i] != v:
            raise PinConflict((a, b, c), pt.cells[i], v)

    r = range(n)
    for a in r:
        for b in r:
            if C4 in axioms:
                pin(a, zero, b, a)
                pin(b, one, a, a)
            if C2 in axioms:
                pin(a, b, a, a)
        if C1 in axioms:
            pin(zero, a, one, a)
    return pt


def _c3_instance_ok(t, n, a, b1, b2, b3, c):
    inner = t[(b1 * n + b2) * n + b3]
    if inner < 0:
        return True
    left = t[(a * n + inner) * n + c]
    r1 = t[(a * n + b1) * n + c]
    r3 = t[(a * n + b3) * n + c]
    if left < 0 or r1 < 0 or r3 < 0:
        return True
    right = t[(r1 * n + b2) * n + r3]
    return right < 0 or left == right


def c3_consistent(pt):
    """No fully assigned instance of C3 is violated."""
    t, n = pt.cells, pt.size
    return all(_c3_instance_ok(t, n, *inst) for inst in itertools.product(range(n), repeat=5))


def _c3_ok_after(t, n, i):
    """Check the C3 instances in which cell ``i`` plays any of its five roles."""
    x, y, z = i // (n * n), (i // n) % n, i % n
    r = range(n)
    ok = _c3_instance_ok
    for a in r:
        for c in r:
            if not ok(t, n, a, x, y, z, c):  # inner
                return False
    for u in r:
        for w in r:
            if not ok(t, n, x, y, u, w, z):  # p(a,b1,c)
                return False
            if not ok(t, n, x, u, w, y, z):  # p(a,b3,c)
                return False
    for b1 in r:
        for b2 in r:
            for b3 in r:
                if t[(b1 * n + b2) * n + b3] == y and not ok(t, n, x, b1, b2, b3, z):
                    return False
    for a in r:
        for c in r:
            base = a * n * n + c
            firsts = [b for b in r if t[base + b * n] == x]
            if not firsts:
                continue
            thirds = [b for b in r if t[base + b * n] == z]
            for b1 in firsts:
                for b3 in thirds:
                    if not ok(t, n, a, b1, y, b3, c):  # outer right
                        return False
    return True


def _equalities(n, zero, one, required):
    """Cell-level equalities implied by the required non-axiom properties.

    Each entry is (cell, other) where other is ('cell', j) or ('const', v).
    """
    def ix(a, b, c):
        return (a * n + b) * n + c

    pairs = []
    r = range(n)
    for prop in sorted(required, key=lambda p: p.value):
        for a in r:
            for b in r:
                if prop in (PropertyId.COMM_MEET, PropertyId.CONCL):
                    pairs.append((ix(zero, a, b), ("cell", ix(zero, b, a))))
                if prop in (PropertyId.COND_III, PropertyId.CONCL):
                    pairs.append((ix(a, a, b), ("cell", ix(zero, a, b))))
                if prop is PropertyId.CC:
                    for c in r:
                        pairs.append((ix(a, b, c), ("cell", ix(a, c, b))))
                        pairs.append((ix(a, b, c), ("cell", ix(c, a, b))))
            if prop is PropertyId.IDEM:
                pairs.append((ix(zero, a, a), ("const", a)))
                pairs.append((ix(a, a, one), ("const", a)))
    by_cell = [[] for _ in range(n ** 3)]
    for i, other in pairs:
        by_cell[i].append(other)
        if other[0] == "cell":
            by_cell[other[1]].append(("cell", i))
    return by_cell


@dataclass(frozen=True)
class SearchConstraints:
    size: int
    required: frozenset = frozenset({C1, C2, C3, C4})
    forbidden: frozenset = frozenset()
    limit: Optional[int] = None
    symmetry_reduce: bool = False

    def __post_init__(self):
        req = frozenset(PropertyId.parse(p) for p in self.required)
        forb = frozenset(PropertyId.parse(p) for p in self.forbidden)
        object.__setattr__(self, "required", req)
        object.__setattr__(self, "forbidden", forb)
        if not 2 <= self.size <= MAX_SIZE:
            raise SearchUsageError(f"size must be in 2..{MAX_SIZE}, got {self.size}")
        bad = sorted(p.value for p in req - SEARCHABLE)
        if bad:
            raise SearchUsageError(f"cannot search with required {', '.join(bad)}")
        if req & forb:
            raise SearchUsageError("a property cannot be both required and forbidden")
        if any(p in (PropertyId.BA, PropertyId.RING_IDENT, PropertyId.CANCEL) for p in forb):
            raise SearchUsageError("forbidden properties must apply to ternary systems")
        if self.limit is not None and self.limit < 0:
            raise SearchUsageError("limit must be non-negative")


class _Timeout(Exception):
    pass


def _permutations(n, zero, one):
    rest = [x for x in range(n) if x not in (zero, one)]
    for perm in itertools.permutations(rest):
        sigma = list(range(n))
        for src, dst in zip(rest, perm):
            sigma[src] = dst
        yield sigma


def _image_key(key, n, sigma):
    """Flattened table of the relabelled system: p'(sa,sb,sc) = s(p(a,b,c))."""
    out = [0] * len(key)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                out[(sigma[a] * n + sigma[b]) * n + sigma[c]] = sigma[key[(a * n + b) * n + c]]
    return tuple(out)


def orbit_min_key(sys):
    key = sys.key()
    return min(_image_key(key, sys.size, s) for s in _permutations(sys.size, sys.zero, sys.one))


def symmetry_reduce(models):
    """Keep the least member of each orbit under relabellings fixing zero and one."""
    models = list(models)
    if not models:
        return []
    shape = {(m.size, m.zero, m.one) for m in models}
    if len(shape) != 1:
        raise SearchUsageError("models must share size, zero and one")
    best = {}
    for m in models:
        orbit = orbit_min_key(m)
        if orbit not in best or m.key() < best[orbit].key():
            best[orbit] = m
    return sorted(best.values(), key=FiniteTernarySystem.key)


def _run(constraints, first_value, deadline):
    """DFS over free cells; returns (keys found, timed_out)."""
    n = constraints.size
    req = constraints.required
    pt = pin_forced_cells(n, 0, 1, [a for a in PINNING if a in req])
    t = pt.cells
    eqs = _equalities(n, 0, 1, req)
    use_c3 = C3 in req
    free = [i for i, v in enumerate(t) if v == UNASSIGNED]
    limit = constraints.limit
    perms = list(_permutations(n, 0, 1)) if constraints.symmetry_reduce else None
    found = []

    def eq_ok(i):
        v = t[i]
        for kind, x in eqs[i]:
            if kind == "const":
                if v != x:
                    return False
            elif t[x] != UNASSIGNED and t[x] != v:
                return False
        return True

    # constraints among pinned cells
    for i, v in enumerate(t):
        if v != UNASSIGNED and not eq_ok(i):
            return found, False
    if use_c3 and not c3_consistent(pt):
        return found, False

    nodes = [0]

    def emit():
        key = tuple(t)
        if perms is not None and min(_image_key(key, n, s) for s in perms) != key:
            return
        if constraints.forbidden:
            sys = pt.to_system()
            if any(check_property(sys, p).holds for p in constraints.forbidden):
                return
        found.append(key)

    def go(k):
        if limit is not None and len(found) >= limit:
            return
        if k == len(free):
            emit()
            return
        i = free[k]
        values = range(n) if k or first_value is None else (first_value,)
        for v in values:
            nodes[0] += 1
            if deadline is not None and nodes[0] % 512 == 0 and time.monotonic() > deadline:
                raise _Timeout
            t[i] = v
            if eq_ok(i) and (not use_c3 or _c3_ok_after(t, n, i)):
                go(k + 1)
                if limit is not None and len(found) >= limit:
                    break
        t[i] = UNASSIGNED

    try:
        go(0)
    except _Timeout:
        return found, True
    return found, False


def _branch(args):
    return _run(*args)


def search(constraints, workers=1, budget_seconds=None):
    """All models of ``constraints``, sorted by flattened table.

    ``workers > 1`` splits the tree on the first free cell across processes;
    the result is identical to the single-process run.  ``budget_seconds``
    bounds wall-clock time and raises SearchBudgetExceeded with partial results.
    """
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    n = constraints.size
    free = pin_forced_cells(n, 0, 1, [a for a in PINNING if a in constraints.required]).free_cells()
    if workers > 1 and free:
        jobs = [(constraints, v, deadline) for v in range(n)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_branch, jobs))
        keys = [k for part, _ in parts for k in part]
        timed_out = any(flag for _, flag in parts)
    else:
        keys, timed_out = _run(constraints, None, deadline)
    keys.sort()
    if constraints.limit is not None:
        keys = keys[:constraints.limit]
    models = [_from_key(n, k) for k in keys]
    for m in models:
        for p in constraints.required:
            if not check_property(m, p).holds:
                raise AssertionError(f"search produced a model violating {p.value}")
    if timed_out:
        raise SearchBudgetExceeded(models)
    return models


def _from_key(n, key):
    return PartialTable(n, 0, 1, list(key)).to_system()


def count_models(constraints, workers=1, budget_seconds=None):
    return len(search(constraints, workers, budget_seconds))
