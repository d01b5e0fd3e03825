"""Command-line front end.

Exit codes: 0 success, 1 a check or proof failed, 2 usage or parse error,
3 search budget exceeded (partial results printed).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .finder import SearchBudgetExceeded, SearchConstraints, SearchUsageError, search
from .kernel import ScriptSyntaxError, corpus_dir, load_corpus, parse_scripts, verify_corpus
from .modelfile import ModelFileError, parse_model_file, write_model_file
from .properties import (A_AXIOMS, B_AXIOMS, BOOLEAN_SIDE, C_AXIOMS, LEMMA1, PropertyId,
                         check_property, verify_theorem1)
from .structures import (FiniteBooleanAlgebra, FiniteTernarySystem, Formula, InvalidAlgebraError,
                         boolean_from_ternary, compare_tables, ternary_from_boolean)

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3

GROUPS = {
    "all-c": C_AXIOMS,
    "all-a": A_AXIOMS,
    "all-b": B_AXIOMS,
    "lemma1": LEMMA1,
}


class UsageError(Exception):
    pass


def _err(msg):
    print(f"ternbool: {msg}", file=sys.stderr)


def parse_props(text, allow_theorem=True):
    out = []
    for item in text.split(","):
        item = item.strip().lower()
        if not item:
            continue
        if item in GROUPS:
            out.extend(GROUPS[item])
        elif item == "theorem1" and allow_theorem:
            out.append("theorem1")
        else:
            try:
                out.append(PropertyId.parse(item))
            except ValueError as e:
                raise UsageError(str(e)) from None
    if not out:
        raise UsageError("empty property list")
    return out


def _load(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_model_file(text)
    except (ModelFileError, ValueError) as e:
        raise UsageError(f"{path}: {e}") from None


def _emit(text, out_path):
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_check(args):
    obj = _load(args.file)
    props = parse_props(args.props)
    is_ba = isinstance(obj, FiniteBooleanAlgebra)
    for p in props:
        if p == "theorem1":
            if is_ba:
                raise UsageError("theorem1 applies to ternary systems")
        elif (p in BOOLEAN_SIDE) != is_ba:
            kind = "Boolean algebras" if p in BOOLEAN_SIDE else "ternary systems"
            raise UsageError(f"{p.value} applies to {kind}")
    aux = None
    if args.aux_neg:
        try:
            aux = [int(x) for x in args.aux_neg.split(",")]
        except ValueError:
            raise UsageError("--aux-neg expects comma-separated integers") from None
        if len(aux) != obj.size or any(not 0 <= x < obj.size for x in aux):
            raise UsageError("--aux-neg must list one in-range value per element")
    failed = False
    for p in props:
        if p == "theorem1":
            lines = verify_theorem1(obj).lines()
            failed |= any(line.startswith("FAIL") for line in lines)
            print("\n".join(lines))
            continue
        report = check_property(obj, p, aux)
        print(report)
        if not report.holds:
            failed = True
            _err(f"{p.value}: {report.law} fails at {report.counterexample}")
    return FAILED if failed else OK


def cmd_derive(args):
    ba = _load(args.file)
    if not isinstance(ba, FiniteBooleanAlgebra):
        raise UsageError("derive needs a boolean-algebra file")
    try:
        sys_ = ternary_from_boolean(ba, Formula(args.formula))
    except InvalidAlgebraError as e:
        _err(str(e))
        return FAILED
    _emit(write_model_file(sys_), args.output)
    return OK


def cmd_to_boolean(args):
    sys_ = _load(args.file)
    if not isinstance(sys_, FiniteTernarySystem):
        raise UsageError("to-boolean needs a ternary-system file")
    ba = boolean_from_ternary(sys_)
    _emit(write_model_file(ba), args.output)
    if args.validate:
        report = check_property(ba, PropertyId.BA)
        print(report)
        if not report.holds:
            _err(f"BA: {report.law} fails at {report.counterexample}")
            return FAILED
    return OK


def _print_models(models, out_dir, label):
    print(f"models: {len(models)}{label}")
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        width = max(3, len(str(len(models))))
        for i, m in enumerate(models, 1):
            path = out_dir / f"model_{i:0{width}d}.tba"
            path.write_text(write_model_file(m))
            print(f"wrote {path}")
        return
    for i, m in enumerate(models, 1):
        print(f"# model {i}")
        sys.stdout.write(write_model_file(m))


def cmd_search(args):
    required = parse_props(args.require, allow_theorem=False)
    forbidden = parse_props(args.forbid, allow_theorem=False) if args.forbid else []
    try:
        constraints = SearchConstraints(args.size, frozenset(required), frozenset(forbidden),
                                        args.limit, args.sym)
    except SearchUsageError as e:
        raise UsageError(str(e)) from None
    out_dir = Path(args.output) if args.output else None
    try:
        models = search(constraints, workers=args.workers, budget_seconds=args.budget_seconds)
    except SearchBudgetExceeded as e:
        _err(f"budget of {args.budget_seconds}s exceeded; results are partial")
        if args.count_only:
            print(f"models: {len(e.models)} (partial)")
        else:
            _print_models(e.models, out_dir, " (partial)")
        return BUDGET
    if args.count_only:
        print(f"models: {len(models)}")
    else:
        _print_models(models, out_dir, "")
    return OK


def cmd_prove(args):
    if not args.files and not args.corpus and not args.builtin_corpus:
        raise UsageError("prove needs script files, --corpus or --builtin-corpus")
    context = []
    try:
        if args.builtin_corpus:
            context += load_corpus(corpus_dir())
        if args.corpus:
            if not Path(args.corpus).is_dir():
                raise UsageError(f"{args.corpus} is not a directory")
            context += load_corpus(args.corpus)
        requested = []
        for f in args.files:
            try:
                requested += parse_scripts(Path(f).read_text())
            except OSError as e:
                raise UsageError(f"cannot read {f}: {e.strerror}") from None
    except ScriptSyntaxError as e:
        raise UsageError(str(e)) from None
    names = {s.name for s in requested}
    scripts = [s for s in context if s.name not in names] + requested
    reports = {r.name: r for r in verify_corpus(scripts)}
    shown = [s.name for s in requested] if requested else [s.name for s in scripts]
    failed = False
    for name in dict.fromkeys(shown):
        print(reports[name])
        failed |= not reports[name].verified
    return FAILED if failed else OK


def cmd_roundtrip(args):
    obj = _load(args.file)
    try:
        if isinstance(obj, FiniteBooleanAlgebra):
            back = boolean_from_ternary(ternary_from_boolean(obj))
            diff = None
            for name in ("meet", "join", "neg"):
                a, b = getattr(obj, name), getattr(back, name)
                if (a != b).any():
                    idx = tuple(int(i) for i in next(zip(*(a != b).nonzero())))
                    diff = f"{name} at ({','.join(map(str, idx))})"
                    break
        else:
            back = ternary_from_boolean(boolean_from_ternary(obj))
            triple = compare_tables(obj, back)
            diff = None if triple is None else f"p at ({','.join(map(str, triple))})"
    except InvalidAlgebraError as e:
        print(f"FAIL roundtrip: {e}")
        return FAILED
    if diff is None:
        print("PASS roundtrip")
        return OK
    print(f"FAIL roundtrip {diff}")
    return FAILED


def build_parser():
    ap = argparse.ArgumentParser(prog="ternbool", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check properties of a model file")
    p.add_argument("file")
    p.add_argument("--props", required=True,
                   help="comma list of property ids or all-c, all-a, all-b, lemma1, theorem1")
    p.add_argument("--aux-neg", help="primitive negation for A3, e.g. 1,0,3,2")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", help="ternary system from a Boolean algebra")
    p.add_argument("file")
    p.add_argument("--formula", choices=[f.value for f in Formula], required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("to-boolean", help="derived operations of a ternary system")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--validate", action="store_true")
    p.set_defaults(func=cmd_to_boolean)

    p = sub.add_parser("search", help="enumerate ternary systems")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--require", required=True)
    p.add_argument("--forbid")
    p.add_argument("--limit", type=int)
    p.add_argument("--sym", action="store_true", help="one representative per relabelling orbit")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", help="directory for model files")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("prove", help="replay proof scripts")
    p.add_argument("files", nargs="*")
    p.add_argument("--corpus", help="directory of .tbp scripts available as lemmas")
    p.add_argument("--builtin-corpus", action="store_true",
                   help="load the shipped lemma corpus")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("roundtrip", help="Boolean algebra <-> ternary system round trip")
    p.add_argument("file")
    p.set_defaults(func=cmd_roundtrip)
    return ap


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE
    try:
        return args.func(args)
    except UsageError as e:
        _err(str(e))
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
