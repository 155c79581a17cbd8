"""Preadditive structure on finite categories and on their categories of fractions.

Hom-groups are raw tables: one zero per ordered object pair, an addition table
over parallel pairs and a negation table.  Addition of roofs brings both roofs
to a common W-leg first and then adds the numerators in C.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .category import FiniteCategory, ValidationReport, Violation
from .fractions import (
    FractionCategory,
    AxiomReport,
    Morphisms,
    Roof,
    _require_parallel,
    l1_complete,
    localize,
)


@dataclass(frozen=True)
class PreadditiveStructure:
    zero: Mapping[tuple[int, int], int]
    add: Mapping[tuple[int, int], int]
    neg: Mapping[int, int]

    __hash__ = None  # type: ignore[assignment]

    def plus(self, f: int, g: int) -> int:
        return self.add[(f, g)]


@dataclass(frozen=True)
class BiproductDiagram:
    obj: int
    i1: int
    i2: int
    p1: int
    p2: int


def validate_preadditive(C: FiniteCategory, P: PreadditiveStructure) -> ValidationReport:
    """Abelian group laws on every hom-set, then bilinearity of composition."""
    found: list[Violation] = []
    name = C.name
    n = C.n_objects
    for a in range(n):
        for b in range(n):
            hom = C.hom(a, b)
            z = P.zero.get((a, b))
            if z is None or z not in hom:
                found.append(Violation("zero", (a, b),
                                       f"no zero morphism {C.objects[a]} -> {C.objects[b]}"))
                continue
            broken = False
            for f in hom:
                for g in hom:
                    s = P.add.get((f, g))
                    if s is None or s not in hom:
                        found.append(Violation("add-total", (f, g),
                                               f"{name(f)} + {name(g)} missing or misplaced"))
                        broken = True
                nf = P.neg.get(f)
                if nf is None or nf not in hom:
                    found.append(Violation("neg-total", (f,), f"-{name(f)} missing or misplaced"))
                    broken = True
            if broken:
                continue
            add = P.add
            for f in hom:
                if add[(f, z)] != f or add[(z, f)] != f:
                    found.append(Violation("add-identity", (f, z), f"{name(f)} + 0 != {name(f)}"))
                if add[(f, P.neg[f])] != z:
                    found.append(Violation("add-inverse", (f, P.neg[f]),
                                           f"{name(f)} + (-{name(f)}) != 0"))
                for g in hom:
                    if add[(f, g)] != add[(g, f)]:
                        found.append(Violation(
                            "add-commutative", (f, g),
                            f"{name(f)} + {name(g)} = {name(add[(f, g)])} but "
                            f"{name(g)} + {name(f)} = {name(add[(g, f)])}"))
                    for h in hom:
                        if add[(add[(f, g)], h)] != add[(f, add[(g, h)])]:
                            found.append(Violation(
                                "add-associative", (f, g, h),
                                f"({name(f)} + {name(g)}) + {name(h)} != "
                                f"{name(f)} + ({name(g)} + {name(h)})"))
    if found:
        return ValidationReport(tuple(found))

    comp, add, zero = C.comp, P.add, P.zero
    for a in range(n):
        for b in range(n):
            hom_ab = C.hom(a, b)
            for c in range(n):
                for g in C.hom(b, c):
                    if comp[(g, zero[(a, b)])] != zero[(a, c)]:
                        found.append(Violation("zero-composition", (g, zero[(a, b)]),
                                               f"{name(g)} . 0 != 0"))
                    for f1 in hom_ab:
                        for f2 in hom_ab:
                            if comp[(g, add[(f1, f2)])] != add[(comp[(g, f1)], comp[(g, f2)])]:
                                found.append(Violation(
                                    "bilinear-left", (g, f1, f2),
                                    f"{name(g)} . ({name(f1)} + {name(f2)}) != "
                                    f"{name(g)} . {name(f1)} + {name(g)} . {name(f2)}"))
                for f in hom_ab:
                    if comp[(zero[(b, c)], f)] != zero[(a, c)]:
                        found.append(Violation("zero-composition", (zero[(b, c)], f),
                                               f"0 . {name(f)} != 0"))
                    hom_bc = C.hom(b, c)
                    for g1 in hom_bc:
                        for g2 in hom_bc:
                            if comp[(add[(g1, g2)], f)] != add[(comp[(g1, f)], comp[(g2, f)])]:
                                found.append(Violation(
                                    "bilinear-right", (g1, g2, f),
                                    f"({name(g1)} + {name(g2)}) . {name(f)} != "
                                    f"{name(g1)} . {name(f)} + {name(g2)} . {name(f)}"))
    return ValidationReport(tuple(found))


def zero_objects(C: FiniteCategory, P: PreadditiveStructure) -> list[int]:
    return [a for a in range(C.n_objects) if C.identity[a] == P.zero.get((a, a))]


# --- roof arithmetic --------------------------------------------------------

def common_denominator(C: FiniteCategory, W: Morphisms, r1: Roof, r2: Roof
                       ) -> tuple[int, int, int]:
    """Rewrite two parallel roofs over one W-leg; returns ``(f1_new, f2_new, w_common)``."""
    _require_parallel(C, r1, r2)
    sq = l1_complete(C, W, r1.w, r2.w)
    g, wt = sq.f_prime, sq.w_prime
    return C.comp[(g, r1.f)], C.comp[(wt, r2.f)], C.comp[(wt, r2.w)]


def add_roofs(C: FiniteCategory, W: Morphisms, P: PreadditiveStructure,
              r1: Roof, r2: Roof) -> Roof:
    f1, f2, w = common_denominator(C, W, r1, r2)
    return Roof(P.add[(f1, f2)], w)


def negate_roof(P: PreadditiveStructure, r: Roof) -> Roof:
    return Roof(P.neg[r.f], r.w)


def zero_roof(C: FiniteCategory, P: PreadditiveStructure, a: int, b: int) -> Roof:
    return Roof(P.zero[(a, b)], C.identity[b])


def check_L2_doubleprime(C: FiniteCategory, W: Morphisms, P: PreadditiveStructure,
                         all_witnesses: bool = False) -> AxiomReport:
    """Whenever ``f . w = 0`` with ``w`` in W, some ``w'`` in W has ``w' . f = 0``."""
    comp, zero = C.comp, P.zero
    found = []
    for w in sorted(W):
        a = C.dom(w)
        for f in C.out_of(C.cod(w)):
            c = C.cod(f)
            if comp[(f, w)] != zero[(a, c)]:
                continue
            if not any(comp[(wp, f)] == zero[(C.dom(f), C.cod(wp))]
                       for wp in C.out_of(c) if wp in W):
                found.append((("w", w), ("f", f)))
                if not all_witnesses:
                    return AxiomReport("L2''", False, tuple(found))
    return AxiomReport("L2''", not found, tuple(found))


# --- biproducts -------------------------------------------------------------

def is_biproduct(C: FiniteCategory, P: PreadditiveStructure, a: int, b: int,
                 d: BiproductDiagram) -> bool:
    comp = C.comp
    try:
        return (comp[(d.p1, d.i1)] == C.identity[a]
                and comp[(d.p2, d.i2)] == C.identity[b]
                and comp[(d.p1, d.i2)] == P.zero[(b, a)]
                and comp[(d.p2, d.i1)] == P.zero[(a, b)]
                and P.add[(comp[(d.i1, d.p1)], comp[(d.i2, d.p2)])] == C.identity[d.obj])
    except KeyError:
        return False


def find_biproduct(C: FiniteCategory, P: PreadditiveStructure, a: int, b: int
                   ) -> Optional[BiproductDiagram]:
    """Smallest ``(P, i1, i2, p1, p2)`` exhibiting ``P`` as ``a (+) b``, or None."""
    comp = C.comp
    ida, idb = C.identity[a], C.identity[b]
    for p in range(C.n_objects):
        idp = C.identity[p]
        for i1 in C.hom(a, p):
            p1s = [p1 for p1 in C.hom(p, a) if comp[(p1, i1)] == ida]
            if not p1s:
                continue
            for i2 in C.hom(b, p):
                p2s = [p2 for p2 in C.hom(p, b) if comp[(p2, i2)] == idb]
                if not p2s:
                    continue
                for p1 in p1s:
                    if comp[(p1, i2)] != P.zero[(b, a)]:
                        continue
                    left = comp[(i1, p1)]
                    for p2 in p2s:
                        if comp[(p2, i1)] == P.zero[(a, b)] and \
                                P.add[(left, comp[(i2, p2)])] == idp:
                            return BiproductDiagram(p, i1, i2, p1, p2)
    return None


# --- induced structure on C[W^-1] ------------------------------------------

def induced_preadditive(L: FractionCategory, P: PreadditiveStructure) -> PreadditiveStructure:
    """Hom-group tables of C[W^-1], computed on canonical representatives."""
    if L.right:
        raise NotImplementedError("induced additive structure is built for left fractions")
    C, W, B = L.source, L.W, L.base
    n = B.n_objects
    zero = {(a, b): L.class_of[zero_roof(C, P, a, b)] for a in range(n) for b in range(n)}
    add: dict[tuple[int, int], int] = {}
    neg: dict[int, int] = {}
    for a in range(n):
        for b in range(n):
            hom = B.hom(a, b)
            for i in hom:
                neg[i] = L.class_of[negate_roof(P, L.reps[i])]
                for j in hom:
                    add[(i, j)] = L.class_of[add_roofs(C, W, P, L.reps[i], L.reps[j])]
    return PreadditiveStructure(zero, add, neg)


def check_additive_localization(C: FiniteCategory, W: Morphisms, P: PreadditiveStructure,
                                L: Optional[FractionCategory] = None) -> ValidationReport:
    """Certify that C[W^-1] is preadditive, that loc is additive, and that biproducts
    and zero objects of C survive localization."""
    base_report = validate_preadditive(C, P)
    if not base_report.ok:
        return ValidationReport(tuple(
            Violation("input-" + v.kind, v.witness, v.message) for v in base_report.violations))
    if L is None:
        L = localize(C, W)
    B = L.base
    Pi = induced_preadditive(L, P)
    found = list(validate_preadditive(B, Pi).violations)

    loc = L.loc.mor_map
    n = C.n_objects
    for a in range(n):
        for b in range(n):
            hom = C.hom(a, b)
            if loc[P.zero[(a, b)]] != Pi.zero[(a, b)]:
                found.append(Violation("loc-zero", (a, b), "loc does not preserve zero"))
            for f in hom:
                for g in hom:
                    if loc[P.add[(f, g)]] != Pi.add[(loc[f], loc[g])]:
                        found.append(Violation(
                            "loc-additive", (f, g),
                            f"loc({C.name(f)} + {C.name(g)}) != loc({C.name(f)}) + loc({C.name(g)})"))

    for a in range(n):
        for b in range(n):
            d = find_biproduct(C, P, a, b)
            if d is None:
                continue
            image = BiproductDiagram(L.loc.obj_map[d.obj], loc[d.i1], loc[d.i2],
                                     loc[d.p1], loc[d.p2])
            if not is_biproduct(B, Pi, a, b, image):
                found.append(Violation(
                    "biproduct", (a, b),
                    f"biproduct of {C.objects[a]}, {C.objects[b]} is not preserved"))

    for z in zero_objects(C, P):
        if B.identity[z] != Pi.zero[(z, z)]:
            found.append(Violation("zero-object", (z,),
                                   f"{C.objects[z]} is no longer a zero object"))
    return ValidationReport(tuple(found))
