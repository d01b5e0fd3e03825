"""Text format for ternary systems (.tba) and Boolean algebras (.bba).

    ternary-system v1          boolean-algebra v1
    size 2                     size 2
    zero 0                     zero 0
    one 1                      one 1
    table                      meet
    p 0 0 0 = 0                m 0 0 = 0
    ...                        ...
    end                        join
                               j 0 0 = 0
                               ...
                               neg
                               n 0 = 1
                               ...
                               end

``#`` starts a comment.  Cells may appear in any order inside their section.
"""

from __future__ import annotations

import itertools
import re

from .structures import FiniteBooleanAlgebra, FiniteTernarySystem


class ModelFileError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_HEADERS = {"ternary-system v1": "ternary", "boolean-algebra v1": "boolean"}
_SECTIONS = {"ternary": [("table", "p", 3)],
             "boolean": [("meet", "m", 2), ("join", "j", 2), ("neg", "n", 1)]}


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int_field(entry, key):
    lineno, line = entry
    m = re.fullmatch(rf"{key}\s+(\d+)", line)
    if not m:
        raise ModelFileError(f"expected '{key} <integer>', got {line!r}", lineno)
    return int(m.group(1))


def parse_model_file(text):
    lines = list(_lines(text))
    if len(lines) < 4:
        raise ModelFileError("file too short for a header", lines[-1][0] if lines else None)
    lineno, head = lines[0]
    kind = _HEADERS.get(" ".join(head.split()))
    if kind is None:
        raise ModelFileError(f"unknown header {head!r}", lineno)
    n = _int_field(lines[1], "size")
    zero = _int_field(lines[2], "zero")
    one = _int_field(lines[3], "one")
    if n < 2:
        raise ModelFileError("size must be at least 2", lines[1][0])
    for entry, v in ((lines[2], zero), (lines[3], one)):
        if v >= n:
            raise ModelFileError(f"element {v} out of range for size {n}", entry[0])
    if zero == one:
        raise ModelFileError("zero and one must differ", lines[3][0])

    tables = {}
    pos = 4
    for section, letter, arity in _SECTIONS[kind]:
        if pos >= len(lines) or lines[pos][1] != section:
            where = lines[pos][0] if pos < len(lines) else lines[-1][0]
            raise ModelFileError(f"expected section '{section}'", where)
        pos += 1
        cells = {}
        pattern = re.compile(rf"{letter}" + r"\s+(\d+)" * arity + r"\s*=\s*(\d+)")
        while pos < len(lines):
            lineno, line = lines[pos]
            m = pattern.fullmatch(line)
            if not m:
                break
            *args, v = (int(g) for g in m.groups())
            for x in (*args, v):
                if x >= n:
                    raise ModelFileError(f"element {x} out of range for size {n}", lineno)
            if tuple(args) in cells:
                raise ModelFileError(f"duplicate cell {_fmt(args)}", lineno)
            cells[tuple(args)] = v
            pos += 1
        end_line = lines[pos][0] if pos < len(lines) else lines[-1][0]
        for args in itertools.product(range(n), repeat=arity):
            if args not in cells:
                raise ModelFileError(f"missing cell {_fmt(args)}", end_line)
        tables[section] = cells
    if pos >= len(lines) or lines[pos][1] != "end":
        where = lines[pos][0] if pos < len(lines) else lines[-1][0]
        got = repr(lines[pos][1]) if pos < len(lines) else "end of file"
        raise ModelFileError(f"malformed line {got}, expected a cell or 'end'", where)
    if pos + 1 < len(lines):
        raise ModelFileError("content after 'end'", lines[pos + 1][0])

    r = range(n)
    if kind == "ternary":
        t = tables["table"]
        return FiniteTernarySystem(n, zero, one, [[[t[a, b, c] for c in r] for b in r] for a in r])
    m, j, ng = tables["meet"], tables["join"], tables["neg"]
    return FiniteBooleanAlgebra(n, zero, one,
                                [[m[a, b] for b in r] for a in r],
                                [[j[a, b] for b in r] for a in r],
                                [ng[(a,)] for a in r])


def _fmt(args):
    return "(" + ",".join(str(a) for a in args) + ")"


def write_model_file(obj):
    if not isinstance(obj, (FiniteTernarySystem, FiniteBooleanAlgebra)):
        raise TypeError(f"cannot write {type(obj).__name__}")
    n = obj.size
    r = range(n)
    if isinstance(obj, FiniteTernarySystem):
        out = ["ternary-system v1", f"size {n}", f"zero {obj.zero}", f"one {obj.one}", "table"]
        out += [f"p {a} {b} {c} = {obj.table[a, b, c]}" for a in r for b in r for c in r]
    else:
        out = ["boolean-algebra v1", f"size {n}", f"zero {obj.bottom}", f"one {obj.top}", "meet"]
        out += [f"m {a} {b} = {obj.meet[a, b]}" for a in r for b in r]
        out.append("join")
        out += [f"j {a} {b} = {obj.join[a, b]}" for a in r for b in r]
        out.append("neg")
        out += [f"n {a} = {obj.neg[a]}" for a in r]
    out.append("end")
    return "\n".join(out) + "\n"
