"""Calculus of left fractions on a finite category.

A roof ``(f, w)`` is the formal fraction ``w^-1 . f``: ``f`` and ``w`` share a
codomain (the apex) and ``w`` lies in W.  It runs from ``dom(f)`` to ``dom(w)``.

W may be passed as any collection of morphism ids (set, frozenset,
:class:`MorphClass`).  All searches are exhaustive and return the smallest
witness in id order, so every result here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterator, Mapping, Optional, Sequence

from .category import (
    FiniteCategory,
    Functor,
    MorphClass,
    ValidationReport,
    Violation,
    check_functor,
    is_iso,
    left_inverse,
    opposite,
    split_monos,
)
from .errors import AxiomFailure, ComposabilityError, NoWitness, NotLocal, ParallelismError
from .unionfind import UnionFind

Morphisms = Collection[int]


@dataclass(frozen=True)
class Roof:
    f: int
    w: int

    @property
    def key(self) -> tuple[int, int]:
        """Sort key for canonical representatives: W-leg first, then f."""
        return (self.w, self.f)

    def source(self, C: FiniteCategory) -> int:
        return C.dom(self.f)

    def target(self, C: FiniteCategory) -> int:
        return C.dom(self.w)

    def apex(self, C: FiniteCategory) -> int:
        return C.cod(self.f)

    def format(self, C: FiniteCategory) -> str:
        return f"({C.name(self.f)},{C.name(self.w)})"


@dataclass(frozen=True)
class EquivWitness:
    """``g . f1 = h . f2`` and ``g . w1 = h . w2`` with the latter in W (or W_L if weak)."""

    g: int
    h: int
    weak: bool = False


@dataclass(frozen=True)
class L1Witness:
    """Completion of ``(w, f)`` to a square ``w_prime . f = f_prime . w``."""

    f_prime: int
    w_prime: int


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witnesses: tuple[tuple[tuple[str, int], ...], ...] = ()

    @property
    def witness(self) -> Optional[tuple[tuple[str, int], ...]]:
        return self.witnesses[0] if self.witnesses else None

    def witness_ids(self) -> Optional[tuple[int, ...]]:
        if not self.witnesses:
            return None
        return tuple(v for _, v in self.witnesses[0])

    def format(self, C: FiniteCategory, all_witnesses: bool = False) -> str:
        if self.holds:
            return f"axiom {self.axiom}: holds"
        shown = self.witnesses if all_witnesses else self.witnesses[:1]
        return "\n".join(
            f"axiom {self.axiom}: FAILS witness "
            + " ".join(f"{label}={C.name(v)}" for label, v in wit)
            for wit in shown
        )


def _report(axiom: str, found: list) -> AxiomReport:
    return AxiomReport(axiom, not found, tuple(found))


def is_roof(C: FiniteCategory, W: Morphisms, r: Roof) -> bool:
    return r.w in W and C.cod(r.f) == C.cod(r.w)


def _require_roof(C: FiniteCategory, W: Morphisms, r: Roof) -> None:
    if not is_roof(C, W, r):
        raise ValueError(f"{r.format(C)} is not a roof")


def roofs_between(C: FiniteCategory, W: Morphisms, a: int, b: int) -> list[Roof]:
    """All roofs from ``a`` to ``b``, sorted by ``(w, f)``."""
    out = []
    for w in sorted(W):
        if C.dom(w) != b:
            continue
        for f in C.hom(a, C.cod(w)):
            out.append(Roof(f, w))
    return out


# --- closures -------------------------------------------------------------

def saturate(C: FiniteCategory, seeds: Morphisms) -> MorphClass:
    """Smallest class containing ``seeds`` and all identities, closed under composition.

    Each member's derivation lists seed factors, outermost first.
    """
    deriv: dict[int, tuple[int, ...]] = {}
    for s in sorted(seeds):
        deriv[s] = (s,)
    for i in C.identity:
        deriv.setdefault(i, (i,))
    grown = True
    while grown:
        grown = False
        current = sorted(deriv)
        for g in current:
            for f in current:
                if not C.composable(g, f):
                    continue
                h = C.comp[(g, f)]
                if h not in deriv:
                    deriv[h] = deriv[g] + deriv[f]
                    grown = True
    return MorphClass(frozenset(deriv), deriv)


def generate_WL(C: FiniteCategory, W: Morphisms) -> MorphClass:
    """W together with every split mono, closed under composition."""
    return saturate(C, set(W) | split_monos(C).members)


# --- axioms ---------------------------------------------------------------

def check_L0(C: FiniteCategory, W: Morphisms, all_witnesses: bool = False) -> AxiomReport:
    found = []
    for i in C.identity:
        if i not in W:
            found.append((("missing", i),))
            if not all_witnesses:
                return _report("L0", found)
    for w2 in sorted(W):
        for w1 in sorted(W):
            if C.composable(w2, w1) and C.comp[(w2, w1)] not in W:
                found.append((("w2", w2), ("w1", w1), ("comp", C.comp[(w2, w1)])))
                if not all_witnesses:
                    return _report("L0", found)
    return _report("L0", found)


def _l1_square_exists(C: FiniteCategory, W_out: Morphisms, w: int, f: int) -> bool:
    comp = C.comp
    lower = {comp[(wp, f)] for wp in C.out_of(C.cod(f)) if wp in W_out}
    return any(comp[(fp, w)] in lower for fp in C.out_of(C.cod(w)))


def _check_l1_shape(axiom: str, C: FiniteCategory, W_in: Morphisms, W_out: Morphisms,
                    all_witnesses: bool) -> AxiomReport:
    found = []
    for w in sorted(W_in):
        for f in C.out_of(C.dom(w)):
            if not _l1_square_exists(C, W_out, w, f):
                found.append((("w", w), ("f", f)))
                if not all_witnesses:
                    return _report(axiom, found)
    return _report(axiom, found)


def check_L1(C: FiniteCategory, W: Morphisms, all_witnesses: bool = False) -> AxiomReport:
    """Every span ``f <- . -> w`` with ``w`` in W completes to a square with W bottom edge."""
    return _check_l1_shape("L1", C, W, W, all_witnesses)


def check_L1_prime(C: FiniteCategory, W: Morphisms, all_witnesses: bool = False) -> AxiomReport:
    """As :func:`check_L1` but with ``w`` ranging over W_L (the new edge still in W)."""
    return _check_l1_shape("L1'", C, generate_WL(C, W), W, all_witnesses)


def _check_l2_shape(axiom: str, C: FiniteCategory, W: Morphisms, coeq: Morphisms,
                    all_witnesses: bool) -> AxiomReport:
    comp = C.comp
    found = []
    for w in sorted(W):
        b = C.cod(w)
        out = C.out_of(b)
        for i, f1 in enumerate(out):
            c = C.cod(f1)
            for f2 in out[i + 1:]:
                if C.cod(f2) != c or comp[(f1, w)] != comp[(f2, w)]:
                    continue
                if not any(comp[(wp, f1)] == comp[(wp, f2)]
                           for wp in C.out_of(c) if wp in coeq):
                    found.append((("w", w), ("f1", f1), ("f2", f2)))
                    if not all_witnesses:
                        return _report(axiom, found)
    return _report(axiom, found)


def check_L2(C: FiniteCategory, W: Morphisms, all_witnesses: bool = False) -> AxiomReport:
    return _check_l2_shape("L2", C, W, W, all_witnesses)


def check_L2_prime(C: FiniteCategory, W: Morphisms, all_witnesses: bool = False) -> AxiomReport:
    return _check_l2_shape("L2'", C, W, generate_WL(C, W), all_witnesses)


def check_axioms(C: FiniteCategory, W: Morphisms, weak: bool = False,
                 all_witnesses: bool = False) -> list[AxiomReport]:
    if weak:
        return [check_L0(C, W, all_witnesses), check_L1_prime(C, W, all_witnesses),
                check_L2_prime(C, W, all_witnesses)]
    return [check_L0(C, W, all_witnesses), check_L1(C, W, all_witnesses),
            check_L2(C, W, all_witnesses)]


# --- (L1) completions -----------------------------------------------------

def l1_witnesses(C: FiniteCategory, W: Morphisms, w: int, f: int) -> Iterator[L1Witness]:
    """Every completion of ``(w, f)``, ordered by ``(w_prime, f_prime)``."""
    comp = C.comp
    for wp in C.out_of(C.cod(f)):
        if wp not in W:
            continue
        target = comp[(wp, f)]
        for fp in C.hom(C.cod(w), C.cod(wp)):
            if comp[(fp, w)] == target:
                yield L1Witness(fp, wp)


def l1_complete(C: FiniteCategory, W: Morphisms, w: int, f: int) -> L1Witness:
    """Deterministic (L1) square for ``(w, f)``.

    An identity ``w`` always gets the trivial square ``(f, id)``; otherwise the
    first completion in ``(w_prime, f_prime)`` order.
    """
    if C.dom(f) != C.dom(w):
        raise ValueError(f"dom({C.name(f)}) != dom({C.name(w)})")
    if C.is_identity(w) and C.identity[C.cod(f)] in W:
        return L1Witness(f, C.identity[C.cod(f)])
    for wit in l1_witnesses(C, W, w, f):
        return wit
    raise NoWitness(f"no (L1) square for w={C.name(w)}, f={C.name(f)}", (w, f))


def find_k(C: FiniteCategory, W: Morphisms, w_prime: int,
           decomposition: Optional[Sequence[int]] = None) -> int:
    """Return ``k`` with ``k . w_prime`` in W, for ``w_prime`` in W_L.

    ``decomposition`` lists factors of ``w_prime`` outermost first; each factor
    is in W or a split mono.  Defaults to the derivation recorded by
    :func:`generate_WL`.  Factors are absorbed from the outside in: a factor in
    W is swallowed by closure, while a split mono ``m`` with left inverse ``e``
    is killed by completing the (L1) square on ``(current, e)``.
    """
    if w_prime in W:
        return C.identity[C.cod(w_prime)]
    if decomposition is None:
        WL = generate_WL(C, W)
        if w_prime not in WL:
            raise ValueError(f"{C.name(w_prime)} is not in W_L")
        decomposition = WL.derivation[w_prime]
    decomposition = list(decomposition)
    total = decomposition[-1]
    for x in reversed(decomposition[:-1]):
        total = C.comp[(x, total)]
    if total != w_prime:
        raise ValueError("decomposition does not compose to w_prime")

    top = C.identity[C.cod(w_prime)]
    k = top
    current = top  # k . (factors absorbed so far), always in W
    for x in decomposition:
        if x in W:
            current = C.comp[(current, x)]
            continue
        e = left_inverse(C, x)
        if e is None:
            raise ValueError(f"factor {C.name(x)} is neither in W nor a split mono")
        try:
            sq = l1_complete(C, W, current, e)
        except NoWitness as exc:
            raise NoWitness(
                f"(L1) failed at factor {C.name(x)} while building k: {exc}", exc.pair) from exc
        k = C.comp[(sq.f_prime, k)]
        current = sq.w_prime
    if C.comp[(k, w_prime)] not in W:
        raise NoWitness(f"k . {C.name(w_prime)} not in W; W violates (L0)", (w_prime,))
    return k


# --- roof equivalence -----------------------------------------------------

def _require_parallel(C: FiniteCategory, r1: Roof, r2: Roof) -> None:
    if r1.source(C) != r2.source(C) or r1.target(C) != r2.target(C):
        raise ParallelismError(f"roofs {r1.format(C)} and {r2.format(C)} are not parallel")


def _equivalence_witness(C: FiniteCategory, member: Morphisms, r1: Roof, r2: Roof
                         ) -> Optional[tuple[int, int]]:
    if r1 == r2:
        i = C.identity[r1.apex(C)]
        return i, i
    comp = C.comp
    best: dict[tuple[int, int], int] = {}
    for h in C.out_of(r2.apex(C)):
        best.setdefault((comp[(h, r2.f)], comp[(h, r2.w)]), h)
    for g in C.out_of(r1.apex(C)):
        gw = comp[(g, r1.w)]
        if gw not in member:
            continue
        h = best.get((comp[(g, r1.f)], gw))
        if h is not None:
            return g, h
    return None


def roof_equivalent(C: FiniteCategory, W: Morphisms, r1: Roof, r2: Roof) -> Optional[EquivWitness]:
    """Smallest ``(g, h)`` making the two roofs agree on a common third roof.

    A roof compared with itself gets ``(id, id)``.
    """
    _require_parallel(C, r1, r2)
    found = _equivalence_witness(C, W, r1, r2)
    return None if found is None else EquivWitness(*found)


def roof_equivalent_weak(C: FiniteCategory, W: Morphisms, r1: Roof, r2: Roof,
                         WL: Optional[Morphisms] = None) -> Optional[EquivWitness]:
    """Like :func:`roof_equivalent` but the common leg need only lie in W_L."""
    _require_parallel(C, r1, r2)
    if WL is None:
        WL = generate_WL(C, W)
    found = _equivalence_witness(C, WL, r1, r2)
    return None if found is None else EquivWitness(*found, weak=True)


def roof_partition(C: FiniteCategory, W: Morphisms, a: int, b: int) -> list[list[Roof]]:
    """Classes of roofs ``a -> b`` under the relation generated by single 2-morphisms.

    A 2-morphism ``g: (f, w) => (g.f, g.w)`` exists whenever ``g.w`` is in W.
    Classes come back sorted by their smallest ``(w, f)`` member, members sorted too.
    """
    roofs = roofs_between(C, W, a, b)
    uf: UnionFind[Roof] = UnionFind(roofs)
    comp = C.comp
    for r in roofs:
        for g in C.out_of(r.apex(C)):
            gw = comp[(g, r.w)]
            if gw in W:
                uf.union(r, Roof(comp[(g, r.f)], gw))
    classes = [sorted(c, key=lambda r: r.key) for c in uf.groups()]
    classes.sort(key=lambda c: c[0].key)
    return classes


def roof_equivalent_generated(C: FiniteCategory, W: Morphisms, r1: Roof, r2: Roof) -> bool:
    _require_parallel(C, r1, r2)
    for cls in roof_partition(C, W, r1.source(C), r1.target(C)):
        if r1 in cls:
            return r2 in cls
    raise ValueError(f"{r1.format(C)} is not a roof")


def compose_roofs(C: FiniteCategory, W: Morphisms, r1: Roof, r2: Roof) -> Roof:
    """``r2 . r1``: complete ``(w1, f2)`` to a square and compose along its sides."""
    if r1.target(C) != r2.source(C):
        raise ComposabilityError(f"{r1.format(C)} does not end where {r2.format(C)} starts")
    sq = l1_complete(C, W, r1.w, r2.f)
    return Roof(C.comp[(sq.f_prime, r1.f)], C.comp[(sq.w_prime, r2.w)])


# --- the category of fractions --------------------------------------------

@dataclass(frozen=True)
class FractionCategory:
    """C[W^-1] as an explicit finite category.

    ``base`` has one morphism per roof class; ``reps[i]`` is the canonical roof
    of base morphism ``i`` and ``class_of`` sends every roof of ``source`` to its
    base morphism.  With ``right=True`` the roofs live in the opposite category
    and ``(f, w)`` stands for ``f . w^-1``.
    """

    source: FiniteCategory
    W: MorphClass
    base: FiniteCategory
    reps: tuple[Roof, ...]
    class_of: Mapping[Roof, int]
    loc: Functor
    right: bool = False

    __hash__ = None  # type: ignore[assignment]

    @property
    def roof_category(self) -> FiniteCategory:
        """The category in which the roofs are formed."""
        return opposite(self.source) if self.right else self.source

    @property
    def class_rep(self) -> dict[Roof, Roof]:
        return {r: self.reps[i] for r, i in self.class_of.items()}

    def classify(self, r: Roof) -> int:
        return self.class_of[r]

    def hom_classes(self, a: int, b: int) -> list[tuple[int, Roof]]:
        return [(i, self.reps[i]) for i in self.base.hom(a, b)]

    def members(self, i: int) -> list[Roof]:
        return sorted((r for r, j in self.class_of.items() if j == i), key=lambda r: r.key)

    def inverse_of_loc(self, w: int) -> int:
        """Base morphism inverse to ``loc(w)``: the class of ``(id, w)``."""
        C = self.roof_category
        return self.class_of[Roof(C.identity[C.cod(w)], w)]

    def format(self, homs: Optional[Sequence[tuple[int, int]]] = None) -> str:
        C = self.roof_category
        if homs is None:
            n = self.base.n_objects
            homs = [(a, b) for a in range(n) for b in range(n)]
        lines = []
        for a, b in homs:
            classes = self.hom_classes(a, b)
            lines.append(f"hom {self.base.objects[a]} {self.base.objects[b]}: "
                         f"{len(classes)} classes")
            for k, (_, r) in enumerate(classes):
                lines.append(f"class {k}: {r.format(C)}")
        return "\n".join(lines)


def _require_axioms(C: FiniteCategory, W: Morphisms, names: Sequence[str] = ("L0", "L1", "L2")
                    ) -> None:
    for check, name in zip((check_L0, check_L1, check_L2), names):
        rep = check(C, W)
        if not rep.holds:
            raise AxiomFailure(AxiomReport(name, False, rep.witnesses))


def localize(C: FiniteCategory, W: Morphisms) -> FractionCategory:
    """Build C[W^-1] from roof classes; raises :class:`AxiomFailure` unless (L0)-(L2) hold."""
    W = W if isinstance(W, MorphClass) else MorphClass.of(W)
    _require_axioms(C, W)
    return _build(C, W)


def _build(C: FiniteCategory, W: MorphClass) -> FractionCategory:
    morphisms: list[tuple[str, int, int]] = []
    reps: list[Roof] = []
    class_of: dict[Roof, int] = {}
    n = C.n_objects
    for a in range(n):
        for b in range(n):
            for cls in roof_partition(C, W, a, b):
                rep = cls[0]
                # the generated relation must agree with direct witness search
                for r in cls[1:]:
                    if roof_equivalent(C, W, rep, r) is None:
                        raise RuntimeError(f"generated class of {rep.format(C)} is not "
                                           f"witnessed for {r.format(C)}")
                idx = len(reps)
                reps.append(rep)
                morphisms.append((rep.format(C), a, b))
                for r in cls:
                    class_of[r] = idx
            starts = [i for i in range(len(reps)) if morphisms[i][1:] == (a, b)]
            for i in starts:
                for j in starts:
                    if i < j and roof_equivalent(C, W, reps[i], reps[j]) is not None:
                        raise RuntimeError("two generated classes are directly equivalent")

    identity = [class_of[Roof(i, i)] for i in C.identity]
    comp: dict[tuple[int, int], int] = {}
    homs_into: dict[int, list[int]] = {}
    for i, (_, a, b) in enumerate(morphisms):
        homs_into.setdefault(b, []).append(i)
    for g, (_, b, c) in enumerate(morphisms):
        for f in homs_into.get(b, ()):
            comp[(g, f)] = class_of[compose_roofs(C, W, reps[f], reps[g])]
    base = FiniteCategory.build(C.objects, morphisms, identity, comp)
    loc = Functor(
        C, base, tuple(range(n)),
        tuple(class_of[Roof(f, C.identity[C.cod(f)])] for f in range(C.n_morphisms)),
    )
    return FractionCategory(C, W, base, tuple(reps), class_of, loc)


def localize_right(C: FiniteCategory, W: Morphisms) -> FractionCategory:
    """Calculus of right fractions, obtained by localizing the opposite category."""
    W = W if isinstance(W, MorphClass) else MorphClass.of(W)
    Cop = opposite(C)
    _require_axioms(Cop, W, ("L0", "R1", "R2"))
    L = _build(Cop, W)
    loc = Functor(C, opposite(L.base), L.loc.obj_map, L.loc.mor_map)
    return FractionCategory(C, W, opposite(L.base), L.reps, L.class_of, loc, right=True)


def check_decomposition(L: FractionCategory) -> ValidationReport:
    """Every class factors as ``loc(w)^-1 . loc(f)`` (``loc(f) . loc(w)^-1`` when right)."""
    C = L.roof_category
    B = L.base
    for r, i in sorted(L.class_of.items(), key=lambda kv: kv[0].key):
        lw = L.loc.mor_map[r.w]
        inv = L.inverse_of_loc(r.w)
        if B.comp.get((inv, lw)) != B.identity[B.dom(lw)] or \
                B.comp.get((lw, inv)) != B.identity[B.cod(lw)]:
            return ValidationReport((Violation(
                "inverse", (r.w,), f"class of (id,{C.name(r.w)}) is not inverse to loc"),))
        lf = L.loc.mor_map[r.f]
        got = B.comp[(lf, inv)] if L.right else B.comp[(inv, lf)]
        if got != i:
            return ValidationReport((Violation(
                "decomposition", (r.f, r.w), f"{r.format(C)} does not factor through loc"),))
    return ValidationReport()


def factor_functor(L: FractionCategory, F: Functor) -> Functor:
    """The unique ``G`` on C[W^-1] with ``G . loc = F``.

    ``G`` sends the class of ``(f, w)`` to ``F(w)^-1 . F(f)``.  Raises
    :class:`NotLocal` when ``F`` does not invert some member of W.
    """
    if F.source != L.source:
        raise ValueError("functor does not start at the localized category")
    report = check_functor(F)
    if not report.ok:
        raise ValueError(f"not a functor: {report.violations[0]}")
    D = F.target
    inverses: dict[int, int] = {}
    for w in L.W:
        inv = is_iso(D, F.mor_map[w])
        if inv is None:
            raise NotLocal(w)
        inverses[w] = inv

    def value(r: Roof) -> int:
        if L.right:
            return D.comp[(F.mor_map[r.f], inverses[r.w])]
        return D.comp[(inverses[r.w], F.mor_map[r.f])]

    mor_map = tuple(value(r) for r in L.reps)
    for r, i in L.class_of.items():
        if value(r) != mor_map[i]:
            raise RuntimeError(f"F does not respect the class of {r.format(L.roof_category)}")
    G = Functor(L.base, D, F.obj_map, mor_map)
    report = check_functor(G)
    if not report.ok:
        raise RuntimeError(f"induced map is not a functor: {report.violations[0]}")
    if tuple(G.mor_map[f] for f in L.loc.mor_map) != F.mor_map:
        raise RuntimeError("G . loc != F")
    report = check_decomposition(L)
    if not report.ok:
        raise RuntimeError(f"uniqueness check failed: {report.violations[0]}")
    return G
