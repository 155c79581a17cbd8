"""Command-line front end.

Exit status: 0 when the requested check holds or the query succeeded, 1 when
an axiom fails, a category or functor is invalid, or the oracle disagrees,
2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Callable, Optional, Sequence

from .additive import (
    add_roofs,
    check_additive_localization,
    check_L2_doubleprime,
    validate_preadditive,
)
from .category import FiniteCategory, check_functor, opposite, validate_category
from .errors import (
    AxiomFailure,
    BoundsError,
    Disagreement,
    NotLocal,
    ParallelismError,
    ParseError,
)
from .fileformat import CategoryData, load_category, parse_functor
from .fractions import (
    FractionCategory,
    Roof,
    check_axioms,
    factor_functor,
    is_roof,
    localize,
    localize_right,
    roof_equivalent,
    roof_equivalent_weak,
)
from .oracle import DEFAULT_MAX_STEPS, oracle_compare, word_equal


class UsageError(Exception):
    pass


class Outcome:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.status = 0

    def say(self, text: str) -> None:
        self.lines.extend(text.splitlines() or [""])

    def fail(self, text: Optional[str] = None) -> None:
        if text is not None:
            self.say(text)
        self.status = max(self.status, 1)


def _load(path: str) -> CategoryData:
    try:
        return load_category(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _object(C: FiniteCategory, name: str) -> int:
    try:
        return C.object_id(name)
    except KeyError:
        raise UsageError(f"unknown object {name!r}") from None


_ROOF = re.compile(r"^\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)$")


def _roof(data: CategoryData, text: str) -> Roof:
    m = _ROOF.match(text.strip())
    if not m:
        raise UsageError(f"expected a roof written (f,w), got {text!r}")
    C = data.category
    try:
        r = Roof(C.morphism_id(m.group(1)), C.morphism_id(m.group(2)))
    except KeyError as exc:
        raise UsageError(f"unknown morphism {exc.args[0]!r}") from None
    if not is_roof(C, data.W, r):
        raise UsageError(f"{text} is not a roof: need a common codomain and w in W")
    return r


def _localize(data: CategoryData, right: bool) -> FractionCategory:
    return (localize_right if right else localize)(data.category, data.W)


def _axiom_failure(out: Outcome, C: FiniteCategory, exc: AxiomFailure) -> None:
    out.fail(exc.report.format(C))


# --- subcommands ------------------------------------------------------------

def cmd_validate(args: argparse.Namespace, out: Outcome) -> None:
    data = _load(args.file)
    C = data.category
    report = validate_category(C)
    out.say(f"category: {report.format()}")
    if not report.ok:
        out.fail()
        return
    if data.preadditive is not None:
        pre = validate_preadditive(C, data.preadditive)
        out.say(f"preadditive: {pre.format()}")
        if not pre.ok:
            out.fail()


def cmd_check(args: argparse.Namespace, out: Outcome) -> None:
    data = _load(args.file)
    C = data.category
    if not validate_category(C).ok:
        out.fail("category: invalid (run validate)")
        return
    host = opposite(C) if args.right else C
    reports = check_axioms(host, data.W, weak=args.weak, all_witnesses=args.all)
    if data.preadditive is not None and not args.right and not args.weak \
            and validate_preadditive(C, data.preadditive).ok:
        reports.append(check_L2_doubleprime(C, data.W, data.preadditive, args.all))
    for rep in reports:
        name = rep.axiom.replace("L", "R", 1) if args.right and rep.axiom != "L0" else rep.axiom
        line = rep.format(C, args.all).replace(f"axiom {rep.axiom}:", f"axiom {name}:")
        if rep.holds:
            out.say(line)
        else:
            out.fail(line)


def cmd_localize(args: argparse.Namespace, out: Outcome) -> None:
    data = _load(args.file)
    try:
        L = _localize(data, args.right)
    except AxiomFailure as exc:
        _axiom_failure(out, data.category, exc)
        return
    out.say(L.format())
    if data.preadditive is not None and not args.right:
        rep = check_additive_localization(data.category, data.W, data.preadditive, L)
        out.say(f"additive: {rep.format()}")
        if not rep.ok:
            out.fail()


def cmd_hom(args: argparse.Namespace, out: Outcome) -> None:
    data = _load(args.file)
    C = data.category
    a, b = _object(C, args.source), _object(C, args.target)
    try:
        L = _localize(data, args.right)
    except AxiomFailure as exc:
        _axiom_failure(out, C, exc)
        return
    out.say(L.format([(a, b)]))


def cmd_equal(args: argparse.Namespace, out: Outcome) -> None:
    data = _load(args.file)
    C = data.category
    r1, r2 = _roof(data, args.roof1), _roof(data, args.roof2)
    if (r1.source(C), r1.target(C)) != (r2.source(C), r2.target(C)):
        raise UsageError("roofs are not parallel")
    wit = (roof_equivalent_weak if args.weak else roof_equivalent)(C, data.W, r1, r2)
    if wit is None:
        out.say("not equivalent")
    else:
        kind = "weakly equivalent" if args.weak else "equivalent"
        out.say(f"{kind} g={C.name(wit.g)} h={C.name(wit.h)}")


def cmd_add(args: argparse.Namespace, out: Outcome) -> None:
    data = _load(args.file)
    C = data.category
    if data.preadditive is None:
        raise UsageError("the category file has no additive structure")
    r1, r2 = _roof(data, args.roof1), _roof(data, args.roof2)
    if (r1.source(C), r1.target(C)) != (r2.source(C), r2.target(C)):
        raise UsageError("roofs are not parallel")
    try:
        L = localize(C, data.W)
    except AxiomFailure as exc:
        _axiom_failure(out, C, exc)
        return
    s = add_roofs(C, data.W, data.preadditive, r1, r2)
    i = L.classify(s)
    k = [j for j, _ in L.hom_classes(r1.source(C), r1.target(C))].index(i)
    out.say(f"{r1.format(C)} + {r2.format(C)} = {s.format(C)}")
    out.say(f"class {k}: {L.reps[i].format(C)}")


def cmd_factor(args: argparse.Namespace, out: Outcome) -> None:
    data = _load(args.file)
    target = _load(args.target)
    C, D = data.category, target.category
    try:
        with open(args.functor, encoding="utf-8") as fh:
            F = parse_functor(fh.read(), C, D)
    except OSError as exc:
        raise UsageError(f"cannot read {args.functor}: {exc.strerror}") from None
    except ParseError as exc:
        raise UsageError(f"{args.functor}: {exc}") from None
    report = check_functor(F)
    if not report.ok:
        out.fail(f"functor: {report.format()}")
        return
    try:
        L = localize(C, data.W)
    except AxiomFailure as exc:
        _axiom_failure(out, C, exc)
        return
    try:
        G = factor_functor(L, F)
    except NotLocal as exc:
        out.fail(f"not local: F({C.name(exc.w)}) is not an isomorphism")
        return
    for a, x in enumerate(G.obj_map):
        out.say(f"object {C.objects[a]} -> {D.objects[x]}")
    for i, g in enumerate(G.mor_map):
        out.say(f"morphism {L.reps[i].format(C)} -> {D.name(g)}")
    out.say("factorization: G . loc = F holds")


def cmd_oracle(args: argparse.Namespace, out: Outcome) -> None:
    data = _load(args.file)
    C = data.category
    try:
        report = oracle_compare(C, data.W, args.max_len, args.max_steps)
        out.say(report.format())
        out.say(f"unknown rate {report.unknown_rate:.4f}")
    except AxiomFailure as exc:
        _axiom_failure(out, C, exc)
    except Disagreement as exc:
        r1, r2 = exc.roofs
        out.fail(f"DISAGREEMENT {r1.format(C)} {r2.format(C)}: oracle says {exc.verdict}")
    except BoundsError as exc:
        raise UsageError(str(exc)) from None
    words = data.words
    for k in range(0, len(words) - 1, 2):
        s1, s2 = words[k], words[k + 1]
        label = f"word {s1.format(C)} vs {s2.format(C)}"
        try:
            verdict = word_equal(C, data.W, s1, s2, args.max_len, args.max_steps)
        except ParallelismError:
            verdict = "not parallel"
        except BoundsError as exc:
            raise UsageError(str(exc)) from None
        out.say(f"{label}: {verdict}")


# --- argument parsing -------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="catfrac", description="Localize finite categories by a calculus of fractions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="category file")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check the category (and additive) laws")
    sp = add("check", cmd_check, "check the fraction axioms for W")
    sp.add_argument("--weak", action="store_true", help="check the variants using W_L")
    sp.add_argument("--all", action="store_true", help="list every counterexample")
    sp.add_argument("--right", action="store_true", help="check the right-fraction axioms")
    sp = add("localize", cmd_localize, "build the category of fractions")
    sp.add_argument("--right", action="store_true", help="use right fractions")
    sp = add("hom", cmd_hom, "list the roof classes from one object to another")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--right", action="store_true", help="use right fractions")
    sp = add("equal", cmd_equal, "decide whether two roofs are equivalent")
    sp.add_argument("roof1", help="roof written (f,w)")
    sp.add_argument("roof2", help="roof written (f,w)")
    sp.add_argument("--weak", action="store_true", help="allow the W_L-weakened witness")
    sp = add("add", cmd_add, "add two parallel roofs")
    sp.add_argument("roof1")
    sp.add_argument("roof2")
    sp = add("factor", cmd_factor, "factor a functor through the localization")
    sp.add_argument("functor", help="functor file (object X -> Y / morphism f -> g)")
    sp.add_argument("target", help="category file of the functor's target")
    sp = add("oracle", cmd_oracle, "cross-check roof classes against word rewriting")
    sp.add_argument("--max-len", type=_positive, default=None)
    sp.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
    return p


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one invocation; returns ``(status, stdout, stderr)``."""
    out = Outcome()
    try:
        args = build_parser().parse_args(list(argv))
        args.func(args, out)
    except UsageError as exc:
        return 2, "", f"error: {exc}\n"
    except SystemExit as exc:  # --help
        return int(exc.code or 0), "", ""
    text = "\n".join(out.lines)
    return out.status, text + "\n" if text else "", ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    status, stdout, stderr = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
