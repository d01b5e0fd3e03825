"""Replay of equational proof chains.

A step names a rule (or a ``+``-joined group of rules) and the term it
produces.  The step is accepted when the new term arises from the previous
one by replacing one or more disjoint subterms, each an instance of one side
of a named rule, by the matching instance of the other side.  Variables that
occur only on the replacement side are bound by matching against the new
term.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Optional

from .terms import App, Const, Var, match, parse_term, unfold


class ScriptSyntaxError(ValueError):
    def __init__(self, message, line):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: object
    rhs: object
    kind: str  # axiom | definition | hypothesis | lemma
    hypotheses: tuple = ()  # hypothesis rules a lemma was proven under

    def __str__(self):
        return f"{self.name}: {self.lhs} = {self.rhs}"


def _rule(name, lhs, rhs, kind):
    return RewriteRule(name, parse_term(lhs), parse_term(rhs), kind)


class RuleStore:
    """Active rules by name, inactive hypothesis templates, and rule-group aliases."""

    def __init__(self, rules=(), templates=(), groups=None):
        self.rules = {r.name: r for r in rules}
        self.templates = {r.name: r for r in templates}
        self.groups = dict(groups or {})

    def copy(self):
        return RuleStore(self.rules.values(), self.templates.values(), self.groups)

    def __contains__(self, name):
        return name in self.rules or name in self.groups

    def __getitem__(self, name):
        return self.rules[name]

    def register(self, rule):
        if rule.name in self.rules and self.rules[rule.name].kind != "lemma":
            raise ValueError(f"{rule.name} is a built-in rule and cannot be redefined")
        if rule.name in self.groups:
            raise ValueError(f"{rule.name} is a rule group")
        self.rules[rule.name] = rule

    def expand(self, name):
        return self.groups.get(name, (name,))

    def lemmas(self):
        return [r for r in self.rules.values() if r.kind == "lemma"]


def builtin_theory():
    axioms = [
        _rule("C1", "p(0,a,1)", "a", "axiom"),
        _rule("C2", "p(a,b,a)", "a", "axiom"),
        _rule("C3", "p(a,p(b1,b2,b3),c)", "p(p(a,b1,c),b2,p(a,b3,c))", "axiom"),
        _rule("C4a", "p(a,0,b)", "a", "axiom"),
        _rule("C4b", "p(b,1,a)", "a", "axiom"),
        _rule("def-bar", "bar(a)", "p(1,a,0)", "definition"),
        _rule("def-meet", "meet(a,b)", "p(0,a,b)", "definition"),
        _rule("def-join", "join(a,b)", "p(a,b,1)", "definition"),
    ]
    templates = [
        _rule("COMM_MEET", "p(0,a,b)", "p(0,b,a)", "hypothesis"),
        _rule("COMM_JOIN", "p(a,b,1)", "p(b,a,1)", "hypothesis"),
        _rule("IDEM_MEET", "p(0,a,a)", "a", "hypothesis"),
        _rule("IDEM_JOIN", "p(a,a,1)", "a", "hypothesis"),
        _rule("COND_II", "p(a,b,c)", "join(meet(bar(b),a),meet(b,c))", "hypothesis"),
        _rule("COND_III", "p(a,a,b)", "p(0,a,b)", "hypothesis"),
        _rule("T4", "p(b,b,a)", "p(0,a,b)", "hypothesis"),
    ]
    return RuleStore(axioms, templates, {"C4": ("C4a", "C4b")})


def _definitions(rules):
    defs = {}
    for r in rules:
        if r.kind == "definition" and isinstance(r.lhs, App):
            defs[r.lhs.op] = ([v.name for v in r.lhs.args], r.rhs)
    return defs


_ALL_DEFS = _definitions(builtin_theory().rules.values())


def _alpha_equivalent(l1, r1, l2, r2):
    """Equations equal up to a bijective renaming of variables."""
    for a, b in (((l1, r1), (l2, r2)), ((l2, r2), (l1, r1))):
        sigma = match(App("p", (a[0], a[1], Const(0))), App("p", (b[0], b[1], Const(0))), {})
        if sigma is None:
            return False
        images = list(sigma.values())
        if not all(isinstance(v, Var) for v in images) or len(set(images)) != len(images):
            return False
    return True


def _same_equation(h1, h2):
    l1, r1 = unfold(h1.lhs, _ALL_DEFS), unfold(h1.rhs, _ALL_DEFS)
    l2, r2 = unfold(h2.lhs, _ALL_DEFS), unfold(h2.rhs, _ALL_DEFS)
    return _alpha_equivalent(l1, r1, l2, r2) or _alpha_equivalent(l1, r1, r2, l2)


# -- one step -----------------------------------------------------------------

def _rewrites_at_root(s, t, rules):
    for r in rules:
        for lhs, rhs in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
            sigma = match(lhs, s, {})
            if sigma is not None and match(rhs, t, sigma) is not None:
                return True
    return False


def _parallel(s, t, rules):
    if s == t:
        return True
    if _rewrites_at_root(s, t, rules):
        return True
    if isinstance(s, App) and isinstance(t, App) and s.op == t.op:
        return all(_parallel(a, b, rules) for a, b in zip(s.args, t.args))
    return False


@dataclass(frozen=True)
class StepVerdict:
    ok: bool
    message: str = ""

    def __bool__(self):
        return self.ok


def check_step(prev, next, rule):
    """Is ``next`` one (parallel) rewrite of ``prev`` by ``rule``, in either direction?"""
    rules = [rule] if isinstance(rule, RewriteRule) else list(rule)
    names = "+".join(r.name for r in rules)
    if prev == next:
        return StepVerdict(False, f"step with {names} does not change the term {prev}")
    if _parallel(prev, next, rules):
        return StepVerdict(True)
    return StepVerdict(False, f"no rewrite with {names} turns {prev} into {next}")


# -- scripts --------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    label: str
    term: object
    line: int = 0


@dataclass(frozen=True)
class Chain:
    start: object
    steps: tuple


@dataclass(frozen=True)
class ProofScript:
    name: str
    uses: tuple
    hypotheses: tuple
    goal: tuple  # (lhs, rhs)
    chains: tuple
    line: int = 0

    @property
    def step_count(self):
        return sum(len(c.steps) for c in self.chains)

    def labels(self):
        return {s.label for c in self.chains for s in c.steps}

    def dependencies(self):
        """Rule names this script needs from its environment."""
        deps = set(self.uses)
        for label in self.labels():
            deps.update(label.split("+"))
        return deps - {h.name for h in self.hypotheses}


def _parse_equation(text, lineno):
    if text.count("=") != 1:
        raise ScriptSyntaxError("expected exactly one '=' in equation", lineno)
    left, right = text.split("=")
    return _term(left, lineno), _term(right, lineno)


def _term(text, lineno):
    try:
        return parse_term(text)
    except ValueError as e:
        raise ScriptSyntaxError(str(e), lineno) from None


def parse_scripts(text):
    """Parse every ``script ... qed`` block in a proof file."""
    scripts = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if cur is None:
            if word != "script" or not rest:
                raise ScriptSyntaxError("expected 'script <name>'", lineno)
            cur = {"name": rest, "uses": [], "hyps": [], "goal": None, "chains": [],
                   "line": lineno, "want_start": True}
            continue
        if word == "use":
            if not rest:
                raise ScriptSyntaxError("use needs a rule name", lineno)
            cur["uses"].append(rest)
        elif word == "assume":
            name, colon, eq = rest.partition(":")
            if not colon or not name.strip():
                raise ScriptSyntaxError("expected 'assume <name>: <term> = <term>'", lineno)
            lhs, rhs = _parse_equation(eq, lineno)
            cur["hyps"].append(RewriteRule(name.strip(), lhs, rhs, "hypothesis"))
        elif word == "goal":
            if cur["goal"] is not None:
                raise ScriptSyntaxError("duplicate goal", lineno)
            cur["goal"] = _parse_equation(rest, lineno)
        elif word == "start":
            if not cur["want_start"]:
                raise ScriptSyntaxError("start must open a chain", lineno)
            cur["chains"].append([_term(rest, lineno), []])
            cur["want_start"] = False
        elif word == "step":
            if cur["want_start"]:
                raise ScriptSyntaxError("step before start", lineno)
            label, _, term = rest.partition(" ")
            if not label or not term.strip():
                raise ScriptSyntaxError("expected 'step <rule> <term>'", lineno)
            cur["chains"][-1][1].append(Step(label, _term(term, lineno), lineno))
        elif word == "chain":
            if cur["want_start"] or len(cur["chains"]) != 1:
                raise ScriptSyntaxError("a second chain may follow exactly one chain", lineno)
            cur["want_start"] = True
        elif word == "qed":
            if cur["goal"] is None:
                raise ScriptSyntaxError("script has no goal", lineno)
            if cur["want_start"]:
                raise ScriptSyntaxError("script ends without a chain", lineno)
            scripts.append(ProofScript(
                cur["name"], tuple(cur["uses"]), tuple(cur["hyps"]), cur["goal"],
                tuple(Chain(s, tuple(st)) for s, st in cur["chains"]), cur["line"]))
            cur = None
        else:
            raise ScriptSyntaxError(f"unknown directive {word!r}", lineno)
    if cur is not None:
        raise ScriptSyntaxError(f"script {cur['name']} is missing qed", cur["line"])
    return scripts


def format_script(script):
    out = [f"script {script.name}"]
    out += [f"use {u}" for u in script.uses]
    out += [f"assume {h.name}: {h.lhs} = {h.rhs}" for h in script.hypotheses]
    out.append(f"goal {script.goal[0]} = {script.goal[1]}")
    for i, chain in enumerate(script.chains):
        if i:
            out.append("chain")
        out.append(f"start {chain.start}")
        out += [f"step {s.label} {s.term}" for s in chain.steps]
    out.append("qed")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ScriptReport:
    name: str
    verified: bool
    steps: int = 0
    failed_step: Optional[int] = None
    message: str = ""

    def __str__(self):
        if self.verified:
            return f"{self.name}: VERIFIED ({self.steps} step{'' if self.steps == 1 else 's'})"
        where = f" at step {self.failed_step}" if self.failed_step is not None else ""
        return f"{self.name}: FAILED{where}: {self.message}"


def _fail(script, message, step=None):
    return ScriptReport(script.name, False, script.step_count, step, message)


def check_script(script, env):
    """Replay ``script`` against ``env``; on success register its goal as a lemma."""
    hyps = {h.name: h for h in script.hypotheses}
    if len(hyps) != len(script.hypotheses):
        return _fail(script, "duplicate assume")
    builtin = env.rules.get(script.name)
    if script.name in env.groups or script.name in env.templates or \
            (builtin is not None and builtin.kind != "lemma"):
        return _fail(script, f"{script.name} would redefine a built-in rule")
    if script.name in script.dependencies():
        return _fail(script, f"cyclic dependency: {script.name} uses itself")

    for h in script.hypotheses:
        template = env.templates.get(h.name)
        if template is not None and not _same_equation(h, template):
            return _fail(script, f"assumption {h.name} does not match the hypothesis {template}")

    allowed = {}
    for u in script.uses:
        if u in hyps:
            continue
        if u in env.templates and u not in env.rules:
            return _fail(script, f"hypothesis {u} must be declared with assume")
        if u not in env:
            return _fail(script, f"unresolved rule {u}")
        for name in env.expand(u):
            allowed[name] = env[name]
    for r in allowed.values():
        for h in r.hypotheses:
            if h.name not in hyps or not _same_equation(h, hyps[h.name]):
                return _fail(script, f"{r.name} requires hypothesis {h}")

    defs = _definitions(allowed.values())

    def norm(t):
        return unfold(t, defs)

    lhs, rhs = script.goal
    sides = (norm(lhs), norm(rhs))
    first = norm(script.chains[0].start)
    if first not in sides:
        return _fail(script, f"chain start {script.chains[0].start} matches neither side of the goal")
    other = sides[1] if first == sides[0] else sides[0]
    if len(script.chains) == 2 and norm(script.chains[1].start) != other:
        return _fail(script, f"second chain start {script.chains[1].start} does not match {other}")

    used_hyps = []
    index = 0
    ends = []
    for chain in script.chains:
        prev = chain.start
        for step in chain.steps:
            index += 1
            rules = []
            for part in step.label.split("+"):
                names = (part,) if part in hyps else env.expand(part)
                for name in names:
                    if name in hyps:
                        rules.append(hyps[name])
                    elif name in allowed:
                        rules.append(allowed[name])
                    else:
                        return _fail(script, f"rule {name} is not declared in this script", index)
            verdict = check_step(prev, step.term, rules)
            if not verdict:
                return _fail(script, verdict.message, index)
            for r in rules:
                carried = (r,) if r.kind == "hypothesis" else r.hypotheses
                for h in carried:
                    if h.name not in [u.name for u in used_hyps]:
                        used_hyps.append(hyps[h.name])
            prev = step.term
        ends.append(prev)

    if len(script.chains) == 1:
        if norm(ends[0]) != other:
            return _fail(script, f"chain ends at {ends[0]}, expected {other}")
    elif norm(ends[0]) != norm(ends[1]):
        return _fail(script, f"chains end at different terms {ends[0]} and {ends[1]}")

    order = [h.name for h in script.hypotheses]
    used_hyps.sort(key=lambda h: order.index(h.name))
    env.register(RewriteRule(script.name, lhs, rhs, "lemma", tuple(used_hyps)))
    return ScriptReport(script.name, True, script.step_count)


def verify_corpus(scripts, env=None):
    """Check scripts in dependency order.  Returns one report per script, in that order."""
    env = builtin_theory() if env is None else env
    by_name = {}
    reports = {}
    for s in scripts:
        if s.name in by_name:
            reports[s.name] = _fail(s, "duplicate script name")
        by_name.setdefault(s.name, s)
    deps = {name: {d for d in s.dependencies() if d in by_name and d != name}
            for name, s in by_name.items()}
    try:
        graphlib.TopologicalSorter(deps).prepare()
    except graphlib.CycleError as e:
        cycle = " -> ".join(e.args[1])
        for name in set(e.args[1]):
            reports[name] = _fail(by_name[name], f"cyclic dependency: {cycle}")

    done = set(reports)
    order = []
    pending = [n for n in by_name if n not in done]
    while pending:
        ready = next((n for n in pending if deps[n] <= done), None)
        if ready is None:
            for n in pending:
                reports[n] = _fail(by_name[n], "cyclic dependency")
            order += pending
            break
        pending.remove(ready)
        done.add(ready)
        bad = sorted(d for d in deps[ready] if not reports[d].verified)
        if bad:
            reports[ready] = _fail(by_name[ready], f"depends on unverified lemma {bad[0]}")
        else:
            reports[ready] = check_script(by_name[ready], env)
        order.append(ready)
    first = [n for n in by_name if n not in order]
    return [reports[n] for n in first + order]


def corpus_dir():
    return Path(str(resources.files("ternbool") / "corpus"))


def load_corpus(directory=None):
    directory = corpus_dir() if directory is None else Path(directory)
    scripts = []
    for path in sorted(directory.glob("*.tbp")):
        scripts.extend(parse_scripts(path.read_text()))
    return scripts


# -- mutation ---------------------------------------------------------------------

def _corrupt(t):
    """Flip the first leaf in preorder: 0<->1, a variable to a fresh one."""
    if isinstance(t, Const):
        return Const(1 - t.value)
    if isinstance(t, Var):
        return Var("z" if t.name != "z" else "y")
    return App(t.op, (_corrupt(t.args[0]),) + t.args[1:])


def mutants(script, env):
    """Every single-step corruption of ``script``: each alternative rule label, and a broken result term."""
    available = sorted(set(script.uses) | {h.name for h in script.hypotheses})
    for ci, chain in enumerate(script.chains):
        for si, step in enumerate(chain.steps):
            original = {n for part in step.label.split("+") for n in env.expand(part)}
            for alt in available:
                if original & set(env.expand(alt)):
                    continue
                yield f"step {si + 1} of chain {ci + 1}: rule {step.label} -> {alt}", \
                    _replace_step(script, ci, si, replace(step, label=alt))
            yield f"step {si + 1} of chain {ci + 1}: term {step.term} -> {_corrupt(step.term)}", \
                _replace_step(script, ci, si, replace(step, term=_corrupt(step.term)))


def _replace_step(script, ci, si, step):
    chains = list(script.chains)
    steps = list(chains[ci].steps)
    steps[si] = step
    chains[ci] = Chain(chains[ci].start, tuple(steps))
    return replace(script, chains=tuple(chains))
