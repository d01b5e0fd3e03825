import itertools

import pytest

from ternbool import PropertyId, check_property
from ternbool.finder import SearchConstraints, search
from ternbool.kernel import (RewriteRule, ScriptSyntaxError, builtin_theory, check_step,
                             format_script, load_corpus, mutants, parse_scripts, verify_corpus)
from ternbool.terms import evaluate, parse_term, variables

T = parse_term

L2 = """script L2
use def-bar
use C3
use C4
use C1
goal bar(bar(a)) = a
start p(1,p(1,a,0),0)
step C3 p(p(1,1,0),a,p(1,0,0))
step C4 p(0,a,1)
step C1 a
qed
"""


def test_builtin_store():
    env = builtin_theory()
    assert len(env.rules) == 8
    assert "COMM_MEET" not in env and "COMM_MEET" in env.templates
    assert env.expand("C4") == ("C4a", "C4b")


def test_step_examples():
    env = builtin_theory()
    assert check_step(T("p(0,x,1)"), T("x"), env["C1"])
    assert check_step(T("x"), T("p(0,x,1)"), env["C1"])  # right to left
    assert not check_step(T("p(0,x,1)"), T("p(0,x,1)"), env["C1"])
    assert not check_step(T("p(1,x,0)"), T("x"), env["C1"])
    # two disjoint redexes in one step
    assert check_step(T("p(p(0,x,1),y,p(0,z,1))"), T("p(x,y,z)"), env["C1"])
    rules = [env["C4a"], env["C4b"]]
    assert check_step(T("p(p(a,0,b),c,p(d,1,e))"), T("p(a,c,e)"), rules)


def test_unbound_replacement_variable_is_bound_by_target():
    env = builtin_theory()
    # a -> p(a,0,b) introduces b; the next term fixes it
    assert check_step(T("x"), T("p(x,0,y)"), env["C4a"])


def test_l2_verifies_in_three_steps():
    [report] = verify_corpus(parse_scripts(L2))
    assert report.verified and str(report) == "L2: VERIFIED (3 steps)"


def test_l2_broken_step_two():
    text = L2.replace("step C4 p(0,a,1)", "step C4 p(1,a,1)")
    [report] = verify_corpus(parse_scripts(text))
    assert not report.verified and report.failed_step == 2
    assert str(report).startswith("L2: FAILED at step 2")


def test_undeclared_rule_fails():
    text = L2.replace("use C1\n", "")
    [report] = verify_corpus(parse_scripts(text))
    assert not report.verified and report.failed_step == 3


def test_wrong_endpoint():
    text = L2.replace("goal bar(bar(a)) = a", "goal bar(bar(a)) = bar(a)")
    [report] = verify_corpus(parse_scripts(text))
    assert not report.verified


def test_format_round_trip():
    for s in load_corpus():
        assert parse_scripts(format_script(s)) == [s] or \
            [format_script(x) for x in parse_scripts(format_script(s))] == [format_script(s)]


@pytest.mark.parametrize("text, line", [
    ("script X\ngoal a = a\nqed\n", 3),
    ("step C1 a\n", 1),
    ("script X\ngoal a = a\nstart a\nstep C1\nqed\n", 4),
    ("script X\ngoal a == a\n", 2),
    ("script X\ngoal a = a\nstart a\n", 1),
    ("script X\nfrobnicate\n", 2),
])
def test_syntax_errors(text, line):
    with pytest.raises(ScriptSyntaxError) as exc:
        parse_scripts(text)
    assert exc.value.line == line


def test_cycle_detected():
    text = """script A
use B
goal a = a
start a
step B a
qed
script B
use A
goal a = a
start a
step A a
qed
"""
    reports = verify_corpus(parse_scripts(text))
    assert all(not r.verified and "cyclic" in r.message for r in reports)


def test_cannot_redefine_builtin():
    text = L2.replace("script L2", "script C1")
    [report] = verify_corpus(parse_scripts(text))
    assert not report.verified and "redefine" in report.message


def test_template_must_be_assumed():
    text = """script X
use COMM_MEET
goal p(0,a,b) = p(0,b,a)
start p(0,a,b)
step COMM_MEET p(0,b,a)
qed
"""
    [report] = verify_corpus(parse_scripts(text))
    assert not report.verified and "assume" in report.message


def test_mismatched_assumption_rejected():
    text = """script X
assume COMM_MEET: p(0,a,b) = p(0,a,a)
goal p(0,a,b) = p(0,a,a)
start p(0,a,b)
step COMM_MEET p(0,a,a)
qed
"""
    [report] = verify_corpus(parse_scripts(text))
    assert not report.verified


def test_hypotheses_propagate():
    env = builtin_theory()
    reports = verify_corpus(load_corpus(), env)
    assert all(r.verified for r in reports)
    assert [h.name for h in env["T4_FROM_III"].hypotheses] == ["COND_III", "COMM_MEET"]
    assert env["L2"].hypotheses == ()
    # using ABSORB without its assumptions is refused
    text = """script Y
use ABSORB
goal p(p(0,b,a),a,1) = a
start p(p(0,b,a),a,1)
step ABSORB a
qed
"""
    [report] = verify_corpus(parse_scripts(text), env)
    assert not report.verified and "requires hypothesis" in report.message


def test_corpus_all_verified():
    reports = verify_corpus(load_corpus())
    assert len(reports) == 32
    assert all(r.verified for r in reports), [str(r) for r in reports if not r.verified]


def _models():
    return [m for n in (2, 3, 4) for m in search(SearchConstraints(n))]


def _holds(lhs, rhs, m):
    names = sorted({v.name for v in variables(lhs) + variables(rhs)})
    for vals in itertools.product(range(m.size), repeat=len(names)):
        env = dict(zip(names, vals))
        if evaluate(lhs, m, env) != evaluate(rhs, m, env):
            return False
    return True


def test_lemmas_are_sound_on_small_models():
    env = builtin_theory()
    verify_corpus(load_corpus(), env)
    models = _models()
    checked = 0
    for lemma in env.lemmas():
        for m in models:
            if all(_holds(h.lhs, h.rhs, m) for h in lemma.hypotheses):
                assert _holds(lemma.lhs, lemma.rhs, m), (lemma.name, m.key())
                checked += 1
    assert checked > 100


def test_hypothesis_free_lemmas_hold_without_assumptions():
    # a lemma with no hypotheses must hold in every C model, non-commutative ones included
    env = builtin_theory()
    verify_corpus(load_corpus(), env)
    noncomm = [m for m in _models() if not check_property(m, PropertyId.COMM_MEET).holds]
    assert noncomm
    for lemma in env.lemmas():
        if not lemma.hypotheses:
            assert all(_holds(lemma.lhs, lemma.rhs, m) for m in noncomm), lemma.name


def test_mutation_pass_rejects_everything():
    scripts = load_corpus()
    env = builtin_theory()
    verify_corpus(scripts, env)
    total = 0
    for s in scripts:
        base = env.copy()
        base.rules.pop(s.name)
        for desc, mutant in mutants(s, base):
            total += 1
            [r] = verify_corpus([mutant], base.copy())
            assert not r.verified, f"{s.name}: {desc}"
    assert total > 200


def test_rewrite_rule_str():
    r = RewriteRule("C1", T("p(0,a,1)"), T("a"), "axiom")
    assert str(r) == "C1: p(0,a,1) = a"
