"""First-order terms over the signature {p/3, bar/1, meet/2, join/2, 0, 1}."""

from __future__ import annotations

import re
from dataclasses import dataclass

ARITY = {"p": 3, "bar": 1, "meet": 2, "join": 2}


class TermSyntaxError(ValueError):
    def __init__(self, message, pos):
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class App:
    op: str
    args: tuple

    def __post_init__(self):
        if ARITY.get(self.op) != len(self.args):
            raise ValueError(f"{self.op} expects {ARITY.get(self.op)} arguments, got {len(self.args)}")

    def __str__(self):
        return f"{self.op}(" + ",".join(str(a) for a in self.args) + ")"


ZERO = Const(0)
ONE = Const(1)

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*'*)|([0-9]+)|(.)")


def _tokens(text):
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        yield m.lastindex, m.group(m.lastindex), pos
        pos = m.end()
    yield 0, None, len(text)


class _Parser:
    def __init__(self, text):
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, ch):
        kind, val, pos = self.take()
        if kind != 3 or val != ch:
            found = "end of input" if kind == 0 else repr(val)
            raise TermSyntaxError(f"expected {ch!r}, found {found}", pos)

    def term(self):
        kind, val, pos = self.take()
        if kind == 1:
            if val in ARITY:
                self.expect("(")
                args = [self.term()]
                for _ in range(ARITY[val] - 1):
                    self.expect(",")
                    args.append(self.term())
                self.expect(")")
                return App(val, tuple(args))
            return Var(val)
        if kind == 2:
            if val in ("0", "1"):
                return Const(int(val))
            raise TermSyntaxError(f"only constants 0 and 1 exist, found {val!r}", pos)
        found = "end of input" if kind == 0 else repr(val)
        raise TermSyntaxError(f"expected a term, found {found}", pos)


def parse_term(text):
    parser = _Parser(text)
    t = parser.term()
    kind, val, pos = parser.peek()
    if kind != 0:
        raise TermSyntaxError(f"unexpected {val!r} after term", pos)
    return t


def variables(t, acc=None):
    acc = [] if acc is None else acc
    if isinstance(t, Var):
        if t not in acc:
            acc.append(t)
    elif isinstance(t, App):
        for a in t.args:
            variables(a, acc)
    return acc


def substitute(t, sigma):
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if isinstance(t, App):
        return App(t.op, tuple(substitute(a, sigma) for a in t.args))
    return t


def match(pattern, t, sigma):
    """Extend ``sigma`` so that ``pattern`` instantiates to ``t``; None if impossible."""
    if isinstance(pattern, Var):
        bound = sigma.get(pattern.name)
        if bound is None:
            out = dict(sigma)
            out[pattern.name] = t
            return out
        return sigma if bound == t else None
    if isinstance(pattern, Const):
        return sigma if pattern == t else None
    if not isinstance(t, App) or t.op != pattern.op:
        return None
    for pa, ta in zip(pattern.args, t.args):
        sigma = match(pa, ta, sigma)
        if sigma is None:
            return None
    return sigma


def unfold(t, defs):
    """Replace every application of an operator in ``defs`` by its definition body.

    ``defs`` maps an operator name to ``(params, body)``.
    """
    if isinstance(t, App):
        args = tuple(unfold(a, defs) for a in t.args)
        if t.op in defs:
            params, body = defs[t.op]
            return unfold(substitute(body, dict(zip(params, args))), defs)
        return App(t.op, args)
    return t


def positions(t, path=()):
    yield path, t
    if isinstance(t, App):
        for i, a in enumerate(t.args):
            yield from positions(a, path + (i,))


def evaluate(t, sys, env):
    """Value of ``t`` in a finite ternary system, with bar/meet/join derived from p."""
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Const):
        return sys.zero if t.value == 0 else sys.one
    args = [evaluate(a, sys, env) for a in t.args]
    table = sys.table
    if t.op == "p":
        return int(table[args[0], args[1], args[2]])
    if t.op == "bar":
        return int(table[sys.one, args[0], sys.zero])
    if t.op == "meet":
        return int(table[sys.zero, args[0], args[1]])
    return int(table[args[0], args[1], sys.one])
