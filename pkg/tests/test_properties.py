import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternbool import (FiniteTernarySystem, PropertyId, PropertyKindError, boolean_from_ternary,
                      check_property, derive_ring_ops, power_set_algebra, ternary_from_boolean,
                      verify_theorem1)
from ternbool.finder import SearchConstraints, search
from ternbool.properties import C_AXIOMS, LEMMA1

import oracles

P = PropertyId


@st.composite
def systems(draw, max_size=3):
    n = draw(st.integers(2, max_size))
    flat = draw(st.lists(st.integers(0, n - 1), min_size=n ** 3, max_size=n ** 3))
    return FiniteTernarySystem(n, 0, 1, np.array(flat).reshape(n, n, n))


def c_models():
    return [m for n in (2, 3) for m in search(SearchConstraints(n))]


def test_ite2_c4_holds(ite2):
    assert check_property(ite2, "C4").holds


def test_ite2_not_completely_commutative(ite2):
    r = check_property(ite2, P.CC)
    assert not r.holds
    assert r.counterexample == (0, 0, 1)


def test_grau_completely_commutative(ba4):
    assert check_property(ternary_from_boolean(ba4, "grau"), P.CC).holds


def test_cancel_on_two_element(ba2):
    assert check_property(ba2, P.CANCEL).holds


def test_kind_mismatch(ite2, ba2):
    with pytest.raises(PropertyKindError):
        check_property(ite2, P.BA)
    with pytest.raises(PropertyKindError):
        check_property(ba2, P.C1)
    with pytest.raises(ValueError):
        check_property(ite2, "NOPE")


def test_grau_fails_c4_at_0_1(ba2):
    r = check_property(ternary_from_boolean(ba2, "grau"), P.C4)
    assert not r.holds and r.counterexample == (0, 1)


def test_a3_uses_aux_negation(ba4):
    grau = ternary_from_boolean(ba4, "grau")
    assert check_property(grau, P.A3, aux=ba4.neg).holds
    # the multiplexer is not symmetric in its outer arguments, so A3 fails there
    assert not check_property(ternary_from_boolean(ba4, "ite"), P.A3, aux=ba4.neg).holds


@settings(max_examples=200, deadline=None)
@given(systems(), st.sampled_from([p for p in P if p not in (P.BA, P.RING_IDENT, P.CANCEL)]))
def test_report_invariant(sys, prop):
    r = check_property(sys, prop)
    assert r.holds == (r.counterexample is None)
    assert r.holds == (r.law is None)


@settings(max_examples=150, deadline=None)
@given(systems())
def test_counterexample_is_lexicographically_first(sys):
    t, n, z, o = oracles.table_of(sys), sys.size, sys.zero, sys.one
    neg = [t[o][a][z] for a in range(n)]
    meet = lambda a, b: t[z][a][b]  # noqa: E731
    join = lambda a, b: t[a][b][o]  # noqa: E731
    cases = {
        P.C2: (2, lambda a, b: t[a][b][a] == a),
        P.C4: (2, lambda a, b: t[a][z][b] == a and t[b][o][a] == a),
        P.C3: (5, lambda a, b1, b2, b3, c:
               t[a][t[b1][b2][b3]][c] == t[t[a][b1][c]][b2][t[a][b3][c]]),
        P.CC: (3, lambda a, b, c: t[a][b][c] == t[a][c][b] == t[c][a][b]),
        P.COND_II: (3, lambda a, b, c: t[a][b][c] == join(meet(neg[b], a), meet(b, c))),
        P.L3: (3, lambda c, b, a: t[c][b][a] == t[a][neg[b]][c]),
        P.T4: (2, lambda b, a: t[b][b][a] == t[z][b][a] == t[z][a][b] == t[a][a][b]),
    }
    for prop, (arity, pred) in cases.items():
        assert check_property(sys, prop).counterexample == oracles.first_failure(n, arity, pred), prop


@pytest.mark.parametrize("model", c_models(), ids=lambda m: str(m.key()))
def test_lemma1_on_c_models(model):
    for prop in LEMMA1:
        assert check_property(model, prop).holds, prop


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lemma1_on_ite_fixtures(k):
    t = ternary_from_boolean(power_set_algebra(k), "ite")
    for prop in LEMMA1:
        assert check_property(t, prop).holds


def n4_models():
    return search(SearchConstraints(4))


def test_duality_on_c_models():
    for m in c_models() + n4_models():
        assert check_property(m, P.COMM_MEET).holds == check_property(m, P.COMM_JOIN).holds
        idem_meet = all(m.table[0, a, a] == a for a in range(m.size))
        idem_join = all(m.table[a, a, 1] == a for a in range(m.size))
        assert idem_meet == idem_join


def test_lemma2_distributivity():
    seen = 0
    for m in c_models() + n4_models():
        if check_property(m, P.COMM_MEET).holds and check_property(m, P.IDEM).holds:
            seen += 1
            assert check_property(m, P.DIST).holds
            assert check_property(m, P.ABSORB).holds
    assert seen >= 2


def test_theorem1_on_all_small_models():
    for m in c_models() + n4_models():
        r = verify_theorem1(m)
        assert r.equivalence_respected
        if r.meet_commutative.holds and check_property(m, P.COND_III).holds:
            assert check_property(m, P.T4).holds


def test_theorem1_reports(ite2, ba2):
    r = verify_theorem1(ite2)
    assert r.hypotheses_hold and r.cond_i.holds and r.cond_ii.holds and r.cond_iii.holds
    assert r.equivalence_respected
    g = verify_theorem1(ternary_from_boolean(ba2, "grau"))
    assert not g.c_axioms[3].holds
    assert g.c_axioms[3].counterexample == (0, 1)
    assert g.equivalence_respected


def test_theorem1_sixteen():
    r = verify_theorem1(ternary_from_boolean(power_set_algebra(4), "ite"))
    assert all(x.holds for x in r.c_axioms)
    assert r.cond_i.holds and r.cond_ii.holds and r.cond_iii.holds and r.equivalence_respected


@pytest.mark.parametrize("k", [1, 2, 3])
def test_grau_axioms(k):
    ba = power_set_algebra(k)
    t = ternary_from_boolean(ba, "grau")
    for prop in (P.A1, P.A2, P.B1, P.B2, P.B3, P.B4, P.CC):
        assert check_property(t, prop).holds, prop
    assert check_property(t, P.A3, aux=ba.neg).holds
    assert check_property(t, P.A3).holds


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ite_round_trip_and_conditions(k):
    ba = power_set_algebra(k)
    t = ternary_from_boolean(ba, "ite")
    for prop in C_AXIOMS + (P.COND_III, P.CONCL, P.COND_II):
        assert check_property(t, prop).holds
    assert boolean_from_ternary(t) == ba


def test_reverse_round_trip_on_concl_models():
    models = [m for n in (2, 3, 4) for m in search(SearchConstraints(n, C_AXIOMS + (P.CONCL,)))]
    assert models
    for m in models:
        assert ternary_from_boolean(boolean_from_ternary(m), "ite") == m


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ring_laws(k):
    ba = power_set_algebra(k)
    ring = derive_ring_ops(ba)
    add, mul, r = ring.add, ring.mul, range(ba.size)
    for a, b, c in itertools.product(r, repeat=3):
        assert add[add[a, b], c] == add[a, add[b, c]]
        assert add[a, b] == add[b, a]
        assert mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]
    assert check_property(ba, P.RING_IDENT).holds


def test_ring_ident_four_by_loops(ba4):
    ring = derive_ring_ops(ba4)
    m, j, ng = ba4.meet, ba4.join, ba4.neg
    count = 0
    for a, b, c in itertools.product(range(4), repeat=3):
        left = j[m[ng[b], a], m[b, c]]
        right = ring.add[ring.mul[ng[b], a], ring.mul[b, c]]
        assert left == right
        count += 1
    assert count == 64


def test_whiteman_cc():
    for k in (1, 2, 3):
        assert check_property(ternary_from_boolean(power_set_algebra(k), "whiteman"), P.CC).holds


def test_l1_counterexample_is_empty_tuple():
    t = FiniteTernarySystem(2, 0, 1, np.zeros((2, 2, 2), dtype=int))
    r = check_property(t, P.L1)
    assert not r.holds and r.counterexample == ()
    assert str(r) == "FAIL L1 at ()"
