"""Line-oriented text format for categories, W, additive tables and strings.

::

    # comment
    object A
    morphism f : A -> B
    identity A = id_A
    compose g . f = h
    w f
    zero A B = z
    add f + g = h
    neg f = g
    word A : g,~w,f

Names map to ids in file order.  Every composable pair needs a ``compose``
line.  ``neg`` lines may be left out when the addition table determines them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .additive import PreadditiveStructure
from .category import FiniteCategory, Functor, MorphClass, Morphism
from .errors import ParseError
from .oracle import Literal, LiteralString


@dataclass(frozen=True)
class CategoryData:
    category: FiniteCategory
    W: MorphClass
    preadditive: Optional[PreadditiveStructure] = None
    words: tuple[LiteralString, ...] = field(default=())

    __hash__ = None  # type: ignore[assignment]


def _split_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


class _Parser:
    def __init__(self) -> None:
        self.objects: list[str] = []
        self.obj_ids: dict[str, int] = {}
        self.morphisms: list[Morphism] = []
        self.mor_ids: dict[str, int] = {}
        self.mor_line: list[int] = []
        self.identity: dict[int, int] = {}
        self.comp: dict[tuple[int, int], int] = {}
        self.W: list[int] = []
        self.zero: dict[tuple[int, int], int] = {}
        self.add: dict[tuple[int, int], int] = {}
        self.neg: dict[int, int] = {}
        self.additive = False
        self.raw_words: list[tuple[int, int, list[str]]] = []
        self.last_line = 0

    def obj(self, name: str, ln: int) -> int:
        try:
            return self.obj_ids[name]
        except KeyError:
            raise ParseError(ln, f"undefined object {name!r}") from None

    def mor(self, name: str, ln: int) -> int:
        try:
            return self.mor_ids[name]
        except KeyError:
            raise ParseError(ln, f"undefined morphism {name!r}") from None

    def line(self, ln: int, text: str) -> None:
        parts = text.split()
        kw, rest = parts[0], parts[1:]
        handler = getattr(self, f"do_{kw}", None)
        if handler is None:
            raise ParseError(ln, f"unknown keyword {kw!r}")
        handler(ln, rest, text)

    def do_object(self, ln: int, rest: list[str], text: str) -> None:
        if len(rest) != 1:
            raise ParseError(ln, "expected: object <name>")
        name = rest[0]
        if name in self.obj_ids:
            raise ParseError(ln, f"duplicate object {name!r}")
        self.obj_ids[name] = len(self.objects)
        self.objects.append(name)

    def do_morphism(self, ln: int, rest: list[str], text: str) -> None:
        if len(rest) != 5 or rest[1] != ":" or rest[3] != "->":
            raise ParseError(ln, "expected: morphism <name> : <dom> -> <cod>")
        name = rest[0]
        if name in self.mor_ids:
            raise ParseError(ln, f"duplicate morphism {name!r}")
        self.mor_ids[name] = len(self.morphisms)
        self.morphisms.append(Morphism(name, self.obj(rest[2], ln), self.obj(rest[4], ln)))
        self.mor_line.append(ln)

    def do_identity(self, ln: int, rest: list[str], text: str) -> None:
        if len(rest) != 3 or rest[1] != "=":
            raise ParseError(ln, "expected: identity <object> = <morphism>")
        a, i = self.obj(rest[0], ln), self.mor(rest[2], ln)
        if a in self.identity:
            raise ParseError(ln, f"duplicate identity for {rest[0]!r}")
        m = self.morphisms[i]
        if m.dom != a or m.cod != a:
            raise ParseError(ln, f"{rest[2]!r} is not an endomorphism of {rest[0]!r}")
        self.identity[a] = i

    def do_compose(self, ln: int, rest: list[str], text: str) -> None:
        if len(rest) != 5 or rest[1] != "." or rest[3] != "=":
            raise ParseError(ln, "expected: compose <g> . <f> = <h>")
        g, f, h = (self.mor(rest[k], ln) for k in (0, 2, 4))
        if self.morphisms[f].cod != self.morphisms[g].dom:
            raise ParseError(ln, f"cannot compose {rest[0]!r} after {rest[2]!r}: "
                                 f"codomain and domain differ")
        if (g, f) in self.comp:
            raise ParseError(ln, f"duplicate composite {rest[0]} . {rest[2]}")
        self.comp[(g, f)] = h

    def do_w(self, ln: int, rest: list[str], text: str) -> None:
        if len(rest) != 1:
            raise ParseError(ln, "expected: w <morphism>")
        f = self.mor(rest[0], ln)
        if f in self.W:
            raise ParseError(ln, f"duplicate W member {rest[0]!r}")
        self.W.append(f)

    def do_zero(self, ln: int, rest: list[str], text: str) -> None:
        if len(rest) != 4 or rest[2] != "=":
            raise ParseError(ln, "expected: zero <A> <B> = <morphism>")
        a, b, z = self.obj(rest[0], ln), self.obj(rest[1], ln), self.mor(rest[3], ln)
        if (self.morphisms[z].dom, self.morphisms[z].cod) != (a, b):
            raise ParseError(ln, f"{rest[3]!r} does not go from {rest[0]!r} to {rest[1]!r}")
        if (a, b) in self.zero:
            raise ParseError(ln, f"duplicate zero for {rest[0]} {rest[1]}")
        self.zero[(a, b)] = z
        self.additive = True

    def do_add(self, ln: int, rest: list[str], text: str) -> None:
        if len(rest) != 5 or rest[1] != "+" or rest[3] != "=":
            raise ParseError(ln, "expected: add <f> + <g> = <h>")
        f, g, h = (self.mor(rest[k], ln) for k in (0, 2, 4))
        ends = {(self.morphisms[x].dom, self.morphisms[x].cod) for x in (f, g, h)}
        if len(ends) != 1:
            raise ParseError(ln, "summands and sum must be parallel")
        if (f, g) in self.add:
            raise ParseError(ln, f"duplicate sum {rest[0]} + {rest[2]}")
        self.add[(f, g)] = h
        self.additive = True

    def do_neg(self, ln: int, rest: list[str], text: str) -> None:
        if len(rest) != 3 or rest[1] != "=":
            raise ParseError(ln, "expected: neg <f> = <g>")
        f, g = self.mor(rest[0], ln), self.mor(rest[2], ln)
        if (self.morphisms[f].dom, self.morphisms[f].cod) != \
                (self.morphisms[g].dom, self.morphisms[g].cod):
            raise ParseError(ln, "negative must be parallel")
        if f in self.neg:
            raise ParseError(ln, f"duplicate negative of {rest[0]!r}")
        self.neg[f] = g
        self.additive = True

    def do_word(self, ln: int, rest: list[str], text: str) -> None:
        body = text.split(None, 1)[1]
        if ":" not in body:
            raise ParseError(ln, "expected: word <object> : <lit>,<lit>,...")
        head, lits = body.split(":", 1)
        anchor = self.obj(head.strip(), ln)
        names = [x.strip() for x in lits.split(",") if x.strip()]
        self.raw_words.append((ln, anchor, names))

    def finish(self) -> CategoryData:
        end = self.last_line
        for a, name in enumerate(self.objects):
            if a not in self.identity:
                raise ParseError(end, f"object {name!r} has no identity")
        by_cod: dict[int, list[int]] = {}
        for f, m in enumerate(self.morphisms):
            by_cod.setdefault(m.cod, []).append(f)
        for g, mg in enumerate(self.morphisms):
            for f in by_cod.get(mg.dom, ()):
                if (g, f) not in self.comp:
                    raise ParseError(max(self.mor_line[g], self.mor_line[f]),
                                     f"missing composite {mg.name} . {self.morphisms[f].name}")
        C = FiniteCategory(
            tuple(self.objects), tuple(self.morphisms),
            tuple(self.identity[a] for a in range(len(self.objects))), dict(self.comp))
        W = MorphClass.of(self.W)
        P = self._preadditive(C) if self.additive else None
        words = []
        for ln, anchor, names in self.raw_words:
            lits = []
            for nm in names:
                inverse = nm.startswith("~")
                lits.append(Literal(self.mor(nm.lstrip("~"), ln), inverse))
            try:
                words.append(LiteralString.make(C, W, lits, anchor))
            except ValueError as exc:
                raise ParseError(ln, str(exc)) from None
        return CategoryData(C, W, P, tuple(words))

    def _preadditive(self, C: FiniteCategory) -> PreadditiveStructure:
        end = self.last_line
        n = C.n_objects
        for a in range(n):
            for b in range(n):
                if (a, b) not in self.zero:
                    raise ParseError(end, f"no zero for {C.objects[a]} {C.objects[b]}")
                hom = C.hom(a, b)
                for f in hom:
                    for g in hom:
                        if (f, g) not in self.add:
                            raise ParseError(end, f"missing sum {C.name(f)} + {C.name(g)}")
        neg = dict(self.neg)
        for f in range(C.n_morphisms):
            if f in neg:
                continue
            z = self.zero[(C.dom(f), C.cod(f))]
            cands = [g for g in C.hom(C.dom(f), C.cod(f)) if self.add[(f, g)] == z]
            if len(cands) != 1:
                raise ParseError(end, f"cannot derive neg {C.name(f)}: "
                                      f"{len(cands)} candidates")
            neg[f] = cands[0]
        return PreadditiveStructure(dict(self.zero), dict(self.add), neg)


def parse_category(text: str) -> CategoryData:
    p = _Parser()
    for ln, raw in enumerate(text.splitlines(), 1):
        p.last_line = ln
        line = _split_comment(raw)
        if line:
            p.line(ln, line)
    return p.finish()


def load_category(path: str | Path) -> CategoryData:
    return parse_category(Path(path).read_text(encoding="utf-8"))


def serialize_category(data: CategoryData) -> str:
    C = data.category
    name, obj = C.name, C.objects
    out = []
    out += [f"object {o}" for o in obj]
    out += [f"morphism {m.name} : {obj[m.dom]} -> {obj[m.cod]}" for m in C.morphisms]
    out += [f"identity {obj[a]} = {name(i)}" for a, i in enumerate(C.identity)]
    out += [f"compose {name(g)} . {name(f)} = {name(h)}" for (g, f), h in sorted(C.comp.items())]
    out += [f"w {name(w)}" for w in data.W]
    P = data.preadditive
    if P is not None:
        out += [f"zero {obj[a]} {obj[b]} = {name(z)}" for (a, b), z in sorted(P.zero.items())]
        out += [f"add {name(f)} + {name(g)} = {name(h)}" for (f, g), h in sorted(P.add.items())]
        out += [f"neg {name(f)} = {name(g)}" for f, g in sorted(P.neg.items())]
    for s in data.words:
        out.append(f"word {obj[s.start]} : " + ",".join(lit.format(C) for lit in s.literals))
    return "\n".join(out) + "\n"


def parse_functor(text: str, source: FiniteCategory, target: FiniteCategory) -> Functor:
    """Read ``object X -> Y`` and ``morphism f -> g`` lines naming a functor."""
    objs: dict[str, str] = {}
    mors: dict[str, str] = {}
    last = 0
    for ln, raw in enumerate(text.splitlines(), 1):
        last = ln
        line = _split_comment(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4 or parts[2] != "->" or parts[0] not in ("object", "morphism"):
            raise ParseError(ln, "expected: object <X> -> <Y> or morphism <f> -> <g>")
        table, names, tnames = (
            (objs, source.objects, target.objects) if parts[0] == "object"
            else (mors, [m.name for m in source.morphisms], [m.name for m in target.morphisms]))
        if parts[1] not in names:
            raise ParseError(ln, f"undefined source name {parts[1]!r}")
        if parts[3] not in tnames:
            raise ParseError(ln, f"undefined target name {parts[3]!r}")
        if parts[1] in table:
            raise ParseError(ln, f"duplicate mapping for {parts[1]!r}")
        table[parts[1]] = parts[3]
    for o in source.objects:
        if o not in objs:
            raise ParseError(last, f"object {o!r} is not mapped")
    for m in source.morphisms:
        if m.name not in mors:
            raise ParseError(last, f"morphism {m.name!r} is not mapped")
    return Functor.from_names(source, target, objs, mors)
