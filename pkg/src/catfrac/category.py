"""Finite categories given by explicit composition tables, and functors between them.

Objects and morphisms are dense integer ids in declaration order.  Names are
kept only for reporting; every algorithm works on ids.  Searches that could
return several answers return the smallest id (lexicographic on tuples).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: int
    cod: int


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def format(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"invalid {v}" for v in self.violations)


@dataclass(frozen=True)
class FiniteCategory:
    """A category with finitely many objects and morphisms.

    ``comp`` maps ``(g, f)`` to the id of ``g . f`` (``f`` first).  A table that
    breaks the category laws can still be represented; :func:`validate_category`
    says what is wrong with it.
    """

    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identity: tuple[int, ...]
    comp: Mapping[tuple[int, int], int] = field(repr=False)

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def build(cls, objects: Iterable[str], morphisms: Iterable[tuple[str, int, int]],
              identity: Iterable[int], comp: Mapping[tuple[int, int], int]) -> FiniteCategory:
        return cls(
            tuple(objects),
            tuple(Morphism(n, d, c) for n, d, c in morphisms),
            tuple(identity),
            dict(comp),
        )

    # basic accessors

    def dom(self, f: int) -> int:
        return self.morphisms[f].dom

    def cod(self, f: int) -> int:
        return self.morphisms[f].cod

    def name(self, f: int) -> str:
        return self.morphisms[f].name

    def compose(self, g: int, f: int) -> int:
        """Return ``g . f``; raises KeyError when the pair is not composable."""
        return self.comp[(g, f)]

    def composable(self, g: int, f: int) -> bool:
        return self.morphisms[f].cod == self.morphisms[g].dom

    def is_identity(self, f: int) -> bool:
        return self.identity[self.morphisms[f].dom] == f

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    @cached_property
    def _object_ids(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.objects)}

    @cached_property
    def _morphism_ids(self) -> dict[str, int]:
        return {m.name: i for i, m in enumerate(self.morphisms)}

    def object_id(self, name: str) -> int:
        return self._object_ids[name]

    def morphism_id(self, name: str) -> int:
        return self._morphism_ids[name]

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for i, m in enumerate(self.morphisms):
            homs.setdefault((m.dom, m.cod), []).append(i)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.objects]
        for i, m in enumerate(self.morphisms):
            out[m.dom].append(i)
        return tuple(tuple(v) for v in out)

    @cached_property
    def _into(self) -> tuple[tuple[int, ...], ...]:
        into: list[list[int]] = [[] for _ in self.objects]
        for i, m in enumerate(self.morphisms):
            into[m.cod].append(i)
        return tuple(tuple(v) for v in into)

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._homs.get((a, b), ())

    def out_of(self, a: int) -> tuple[int, ...]:
        """Morphisms with domain ``a``, ascending."""
        return self._out[a]

    def into(self, b: int) -> tuple[int, ...]:
        """Morphisms with codomain ``b``, ascending."""
        return self._into[b]

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        """All ``(g, f)`` with ``cod(f) == dom(g)``, ordered by ``(g, f)``."""
        for g, mg in enumerate(self.morphisms):
            for f in self._into[mg.dom]:
                yield g, f


@dataclass(frozen=True)
class MorphClass:
    """A set of morphism ids of one category, standing in for W or W_L.

    ``derivation`` optionally records, for each member, one factorisation into
    seed morphisms (outermost factor first); closures fill it in.
    """

    members: frozenset[int]
    derivation: Mapping[int, tuple[int, ...]] = field(
        default_factory=dict, compare=False, repr=False)

    def __contains__(self, f: object) -> bool:
        return f in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    @classmethod
    def of(cls, members: Iterable[int]) -> MorphClass:
        return cls(frozenset(members))

    def names(self, C: FiniteCategory) -> list[str]:
        return [C.name(f) for f in self]


@dataclass(frozen=True)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, f: int) -> int:
        return self.mor_map[f]

    @classmethod
    def from_names(cls, source: FiniteCategory, target: FiniteCategory,
                   objs: Mapping[str, str], mors: Mapping[str, str]) -> Functor:
        return cls(
            source, target,
            tuple(target.object_id(objs[o]) for o in source.objects),
            tuple(target.morphism_id(mors[m.name]) for m in source.morphisms),
        )


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, tuple(range(C.n_objects)), tuple(range(C.n_morphisms)))


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G . F``."""
    return Functor(
        F.source, G.target,
        tuple(G.obj_map[a] for a in F.obj_map),
        tuple(G.mor_map[f] for f in F.mor_map),
    )


def validate_category(C: FiniteCategory) -> ValidationReport:
    """Scan the whole table and collect every broken category law."""
    found: list[Violation] = []
    n = C.n_morphisms
    name = C.name

    if len(C.identity) != C.n_objects:
        found.append(Violation("identity", (), "identity map does not cover every object"))
        return ValidationReport(tuple(found))
    for a, i in enumerate(C.identity):
        if not 0 <= i < n:
            found.append(Violation("identity", (a,), f"object {C.objects[a]} has no identity"))
        elif C.dom(i) != a or C.cod(i) != a:
            found.append(Violation(
                "identity", (a, i), f"{name(i)} is not an endomorphism of {C.objects[a]}"))
    for f, m in enumerate(C.morphisms):
        if not (0 <= m.dom < C.n_objects and 0 <= m.cod < C.n_objects):
            found.append(Violation("endpoints", (f,), f"{m.name} has an unknown endpoint"))
    if found:
        return ValidationReport(tuple(found))

    for (g, f), h in C.comp.items():
        if not (0 <= g < n and 0 <= f < n and 0 <= h < n):
            found.append(Violation("table", (g, f), f"entry ({g}, {f}) -> {h} out of range"))
        elif not C.composable(g, f):
            found.append(Violation(
                "defined-on-noncomposable", (g, f),
                f"comp({name(g)}, {name(f)}) defined but cod({name(f)}) != dom({name(g)})"))
    for g, f in C.composable_pairs():
        if (g, f) not in C.comp:
            found.append(Violation(
                "totality", (g, f), f"comp({name(g)}, {name(f)}) is missing"))
    for g, f in C.composable_pairs():
        h = C.comp.get((g, f))
        if h is None or not 0 <= h < n:
            continue
        if C.dom(h) != C.dom(f) or C.cod(h) != C.cod(g):
            found.append(Violation(
                "coherence", (g, f),
                f"comp({name(g)}, {name(f)}) = {name(h)} has the wrong domain or codomain"))
    if any(v.kind == "table" for v in found):
        return ValidationReport(tuple(found))

    for f, m in enumerate(C.morphisms):
        left = C.comp.get((C.identity[m.cod], f))
        if left is not None and left != f:
            found.append(Violation(
                "left-identity", (C.identity[m.cod], f),
                f"comp({name(C.identity[m.cod])}, {m.name}) = {name(left)} != {m.name}"))
        right = C.comp.get((f, C.identity[m.dom]))
        if right is not None and right != f:
            found.append(Violation(
                "right-identity", (f, C.identity[m.dom]),
                f"comp({m.name}, {name(C.identity[m.dom])}) = {name(right)} != {m.name}"))

    comp = C.comp
    for g, f in C.composable_pairs():
        gf = comp.get((g, f))
        if gf is None:
            continue
        for h in C.out_of(C.cod(g)):
            hg = comp.get((h, g))
            if hg is None:
                continue
            lhs = comp.get((h, gf))
            rhs = comp.get((hg, f))
            if lhs is not None and rhs is not None and lhs != rhs:
                found.append(Violation(
                    "associativity", (h, g, f),
                    f"({name(h)} . {name(g)}) . {name(f)} = {name(rhs)} but "
                    f"{name(h)} . ({name(g)} . {name(f)}) = {name(lhs)}"))
    return ValidationReport(tuple(found))


def opposite(C: FiniteCategory) -> FiniteCategory:
    return FiniteCategory(
        C.objects,
        tuple(Morphism(m.name, m.cod, m.dom) for m in C.morphisms),
        C.identity,
        {(f, g): h for (g, f), h in C.comp.items()},
    )


def is_iso(C: FiniteCategory, f: int) -> Optional[int]:
    """Two-sided inverse of ``f`` or None."""
    a, b = C.dom(f), C.cod(f)
    ida, idb = C.identity[a], C.identity[b]
    for g in C.hom(b, a):
        if C.comp[(g, f)] == ida and C.comp[(f, g)] == idb:
            return g
    return None


def left_inverse(C: FiniteCategory, m: int) -> Optional[int]:
    """Smallest ``e`` with ``e . m = id``, or None."""
    ida = C.identity[C.dom(m)]
    for e in C.hom(C.cod(m), C.dom(m)):
        if C.comp[(e, m)] == ida:
            return e
    return None


def split_monos(C: FiniteCategory) -> MorphClass:
    return MorphClass.of(m for m in range(C.n_morphisms) if left_inverse(C, m) is not None)


def check_functor(F: Functor) -> ValidationReport:
    """Exhaustively verify that ``F`` respects endpoints, identities and composition.

    Stops at the first violation; the witness is the offending morphism or pair.
    """
    S, T = F.source, F.target
    if len(F.obj_map) != S.n_objects or len(F.mor_map) != S.n_morphisms:
        return ValidationReport((Violation("shape", (), "map sizes do not match source"),))
    for f, m in enumerate(S.morphisms):
        Ff = F.mor_map[f]
        if T.dom(Ff) != F.obj_map[m.dom]:
            return ValidationReport((Violation(
                "dom", (f,), f"dom F({m.name}) != F(dom {m.name})"),))
        if T.cod(Ff) != F.obj_map[m.cod]:
            return ValidationReport((Violation(
                "cod", (f,), f"cod F({m.name}) != F(cod {m.name})"),))
    for a, i in enumerate(S.identity):
        if F.mor_map[i] != T.identity[F.obj_map[a]]:
            return ValidationReport((Violation(
                "identity", (i,), f"F({S.name(i)}) is not an identity"),))
    for g, f in S.composable_pairs():
        lhs = F.mor_map[S.comp[(g, f)]]
        rhs = T.comp[(F.mor_map[g], F.mor_map[f])]
        if lhs != rhs:
            return ValidationReport((Violation(
                "composition", (g, f),
                f"F({S.name(g)} . {S.name(f)}) != F({S.name(g)}) . F({S.name(f)})"),))
    return ValidationReport()


def functors_equal(F: Functor, G: Functor) -> bool:
    return F.obj_map == G.obj_map and F.mor_map == G.mor_map
