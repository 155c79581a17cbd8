"""Independent check of the roof calculus by rewriting strings with formal inverses.

A string ``<l1, ..., ln>`` denotes ``l1 . l2 . ... . ln`` (``ln`` acts first).
Each literal is a morphism of C or the formal inverse ``~w`` of some ``w`` in W.
Strings are identified by the congruence generated by

    <>_A ~ <id_A>,   <g, f> ~ <g.f>,   <w, ~w> ~ <>,   <~w, w> ~ <>.

Internally a literal is an int: ``f >= 0`` for a morphism, ``-(w + 1)`` for
``~w``.  The search runs on reduced strings (maximal runs of morphisms composed,
identities dropped).  Every elementary step between arbitrary strings shows up
as at most one cancel or expand move between reduced strings, and the two move
kinds undo each other, so the explored graph is symmetric.  A reduced string is
never longer than the strings it stands for, hence the length bound only ever
admits more than the same bound on raw strings would.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .category import FiniteCategory
from .errors import BoundsError, Disagreement, ParallelismError
from .fractions import Morphisms, Roof, localize, roofs_between
from .unionfind import UnionFind

EQUAL = "equal"
DISTINCT = "distinct"
UNKNOWN = "unknown"

DEFAULT_MAX_STEPS = 100_000


def default_max_len(*strings: LiteralString) -> int:
    return 2 * max((len(s) for s in strings), default=0) + 4


@dataclass(frozen=True)
class Literal:
    mor: int
    inverse: bool = False

    def dom(self, C: FiniteCategory) -> int:
        return C.cod(self.mor) if self.inverse else C.dom(self.mor)

    def cod(self, C: FiniteCategory) -> int:
        return C.dom(self.mor) if self.inverse else C.cod(self.mor)

    def code(self) -> int:
        return -(self.mor + 1) if self.inverse else self.mor

    @classmethod
    def decode(cls, x: int) -> Literal:
        return cls(-x - 1, True) if x < 0 else cls(x)

    def format(self, C: FiniteCategory) -> str:
        return ("~" if self.inverse else "") + C.name(self.mor)


@dataclass(frozen=True)
class LiteralString:
    """Composable literals, outermost first.  ``start`` is the domain, ``end`` the codomain."""

    literals: tuple[Literal, ...]
    start: int
    end: int

    def __len__(self) -> int:
        return len(self.literals)

    @classmethod
    def make(cls, C: FiniteCategory, W: Morphisms, literals: Iterable[Literal],
             start: Optional[int] = None) -> LiteralString:
        lits = tuple(literals)
        if not lits:
            if start is None:
                raise ValueError("the empty string needs an anchor object")
            return cls((), start, start)
        for lit in lits:
            if lit.inverse and lit.mor not in W:
                raise ValueError(f"{C.name(lit.mor)} is not in W and has no formal inverse")
        for outer, inner in zip(lits, lits[1:]):
            if outer.dom(C) != inner.cod(C):
                raise ValueError(f"{inner.format(C)} then {outer.format(C)} is not composable")
        if start is not None and start != lits[-1].dom(C):
            raise ValueError("anchor object does not match the first literal's domain")
        return cls(lits, lits[-1].dom(C), lits[0].cod(C))

    @classmethod
    def of_roof(cls, C: FiniteCategory, r: Roof) -> LiteralString:
        """``<~w, f>``, the string spelling ``w^-1 . f``."""
        return cls((Literal(r.w, True), Literal(r.f)), C.dom(r.f), C.dom(r.w))

    def codes(self) -> tuple[int, ...]:
        return tuple(lit.code() for lit in self.literals)

    def format(self, C: FiniteCategory) -> str:
        return "<" + ",".join(lit.format(C) for lit in self.literals) + ">"


def _lit_dom(C: FiniteCategory, x: int) -> int:
    return C.morphisms[-x - 1].cod if x < 0 else C.morphisms[x].dom


def _lit_cod(C: FiniteCategory, x: int) -> int:
    return C.morphisms[-x - 1].dom if x < 0 else C.morphisms[x].cod


def rewrite_step(C: FiniteCategory, W: Morphisms, s: LiteralString) -> set[LiteralString]:
    """Every string one elementary equivalence (either direction, any position) away."""
    lits = s.codes()
    n = len(lits)
    comp = C.comp
    out: set[tuple[int, ...]] = set()

    def slot_object(p: int) -> int:
        if p == n:
            return s.start
        return _lit_cod(C, lits[p])

    for p in range(n + 1):
        x = slot_object(p)
        out.add(lits[:p] + (C.identity[x],) + lits[p:])
        for w in W:
            if C.cod(w) == x:
                out.add(lits[:p] + (w, -(w + 1)) + lits[p:])
            if C.dom(w) == x:
                out.add(lits[:p] + (-(w + 1), w) + lits[p:])
    for k, x in enumerate(lits):
        if x >= 0:
            if C.is_identity(x):
                out.add(lits[:k] + lits[k + 1:])
            # every factorisation x = g . f
            for f in C.out_of(C.dom(x)):
                for g in C.hom(C.cod(f), C.cod(x)):
                    if comp[(g, f)] == x:
                        out.add(lits[:k] + (g, f) + lits[k + 1:])
        if k + 1 < n:
            y = lits[k + 1]
            if x >= 0 and y >= 0:
                out.add(lits[:k] + (comp[(x, y)],) + lits[k + 2:])
            if x >= 0 and y == -(x + 1) or y >= 0 and x == -(y + 1):
                out.add(lits[:k] + lits[k + 2:])
    return {LiteralString(tuple(Literal.decode(c) for c in t), s.start, s.end) for t in out}


class _Searcher:
    """Reduced strings between two fixed objects and the moves between them."""

    def __init__(self, C: FiniteCategory, W: Morphisms, start: int, end: int, max_len: int):
        self.C = C
        self.start = start
        self.end = end
        self.max_len = max_len
        self.W = frozenset(W)
        self.inv_ids = frozenset(-(i + 1) for i in C.identity)
        self.nonid_W = tuple(w for w in sorted(W) if not C.is_identity(w))
        self._neighbours: dict[tuple[int, ...], tuple[tuple[int, ...], ...]] = {}
        comp = C.comp
        # factorisations of each morphism, by morphism id
        self.factors: dict[int, list[tuple[int, int]]] = {}
        for g, f in C.composable_pairs():
            self.factors.setdefault(comp[(g, f)], []).append((g, f))

    def reduce(self, lits: Iterable[int]) -> tuple[int, ...]:
        C = self.C
        comp = C.comp
        out: list[int] = []
        for x in lits:
            if x in self.inv_ids:
                continue
            if x >= 0 and out and out[-1] >= 0:
                out[-1] = comp[(out[-1], x)]
            else:
                out.append(x)
        return tuple(x for x in out if x < 0 or not C.is_identity(x))

    def _slot_object(self, t: tuple[int, ...], p: int) -> int:
        if p == len(t):
            return self.start
        return _lit_cod(self.C, t[p])

    def neighbours(self, t: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
        cached = self._neighbours.get(t)
        if cached is not None:
            return cached
        C, comp = self.C, self.C.comp
        n = len(t)
        found: set[tuple[int, ...]] = set()
        red = self.reduce

        # cancel: <~w, w.b> -> <b>  and  <a.w, ~w> -> <a>
        for k, x in enumerate(t):
            if x >= 0:
                continue
            w = -x - 1
            nxt = t[k + 1] if k + 1 < n and t[k + 1] >= 0 else None
            c = nxt if nxt is not None else C.identity[C.cod(w)]
            for b in C.hom(C.dom(c), C.dom(w)):
                if comp[(w, b)] == c:
                    found.add(red(t[:k] + (b,) + t[k + 1 + (nxt is not None):]))
            prv = t[k - 1] if k > 0 and t[k - 1] >= 0 else None
            c = prv if prv is not None else C.identity[C.dom(w)]
            for a in C.hom(C.cod(w), C.cod(c)):
                if comp[(a, w)] == c:
                    found.add(red(t[:k - (prv is not None)] + (a,) + t[k + 1:]))

        # expand: z = a.b  ->  <a, ~w, w.b>  or  <a.w, ~w, b>
        slots: list[tuple[int, int, int]] = []  # (start, stop, z)
        for k, x in enumerate(t):
            if x >= 0:
                slots.append((k, k + 1, x))
        for p in range(n + 1):
            left_fwd = p > 0 and t[p - 1] >= 0
            right_fwd = p < n and t[p] >= 0
            if not (left_fwd or right_fwd):
                slots.append((p, p, C.identity[self._slot_object(t, p)]))
        for lo, hi, z in slots:
            head, tail = t[:lo], t[hi:]
            for a, b in self.factors.get(z, ()):
                mid = C.cod(b)
                for w in self.nonid_W:
                    if C.dom(w) == mid:
                        found.add(red(head + (a, -(w + 1), comp[(w, b)]) + tail))
                    if C.cod(w) == mid:
                        found.add(red(head + (comp[(a, w)], -(w + 1), b) + tail))

        found.discard(t)
        result = tuple(sorted(u for u in found if len(u) <= self.max_len))
        self._neighbours[t] = result
        return result

    def closure(self, t: tuple[int, ...], max_steps: int) -> tuple[set[tuple[int, ...]], bool]:
        """Breadth-first component of ``t``; the flag says whether it was exhausted."""
        seen = {t}
        queue = deque([t])
        steps = 0
        while queue:
            if steps >= max_steps:
                return seen, False
            u = queue.popleft()
            steps += 1
            for v in self.neighbours(u):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen, True

    def components(self, sources: list[tuple[int, ...]], max_steps: int
                   ) -> tuple[UnionFind[tuple[int, ...]], set[tuple[int, ...]]]:
        """One breadth-first search from all sources at once.

        Sources whose searches collide are joined.  Returns the joins and the
        roots of groups whose bounded component was fully explored.  Stops early
        once every source sits in one group.
        """
        uf: UnionFind[tuple[int, ...]] = UnionFind(sources)
        owner = {t: t for t in sources}
        queue = deque(owner)
        groups = len({uf.find(t) for t in sources})
        steps = 0
        while queue and groups > 1 and steps < max_steps:
            u = queue.popleft()
            steps += 1
            for v in self.neighbours(u):
                o = owner.get(v)
                if o is None:
                    owner[v] = owner[u]
                    queue.append(v)
                elif uf.union(o, owner[u]):
                    groups -= 1
        pending = {uf.find(owner[u]) for u in queue}
        return uf, {uf.find(t) for t in sources} - pending

    def meet(self, s: tuple[int, ...], t: tuple[int, ...], max_steps: int) -> str:
        if s == t:
            return EQUAL
        seen = [{s}, {t}]
        frontier = [deque([s]), deque([t])]
        steps = 0
        while frontier[0] and frontier[1]:
            side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
            nxt: deque = deque()
            for u in frontier[side]:
                if steps >= max_steps:
                    return UNKNOWN
                steps += 1
                for v in self.neighbours(u):
                    if v in seen[1 - side]:
                        return EQUAL
                    if v not in seen[side]:
                        seen[side].add(v)
                        nxt.append(v)
            frontier[side] = nxt
        # one bounded component ran dry without touching the other
        return DISTINCT


def word_equal(C: FiniteCategory, W: Morphisms, s1: LiteralString, s2: LiteralString,
               max_len: Optional[int] = None, max_steps: int = DEFAULT_MAX_STEPS) -> str:
    """Decide ``s1 ~ s2`` by bounded bidirectional search.

    ``equal`` comes with a rewriting path, so it is certain.  ``distinct`` means
    the component of one side among strings of length at most ``max_len`` was
    exhausted without reaching the other.  Anything else is ``unknown``.
    """
    if (s1.start, s1.end) != (s2.start, s2.end):
        raise ParallelismError("strings are not parallel")
    if max_len is None:
        max_len = default_max_len(s1, s2)
    if max_len < max(len(s1), len(s2)):
        raise BoundsError(f"max_len {max_len} is shorter than an input string")
    search = _Searcher(C, W, s1.start, s1.end, max_len)
    return search.meet(search.reduce(s1.codes()), search.reduce(s2.codes()), max_steps)


@dataclass
class AgreementReport:
    pairs: int = 0
    agree: int = 0
    unknown: int = 0
    equal: int = 0
    distinct: int = 0
    max_len: int = 0
    max_steps: int = 0
    unknown_pairs: list[tuple[Roof, Roof]] = field(default_factory=list, repr=False)

    @property
    def unknown_rate(self) -> float:
        return self.unknown / self.pairs if self.pairs else 0.0

    def format(self) -> str:
        return (f"oracle max_len={self.max_len} max_steps={self.max_steps}\n"
                f"pairs {self.pairs}: agree {self.agree} (equal {self.equal}, "
                f"distinct {self.distinct}), unknown {self.unknown}")


def oracle_compare(C: FiniteCategory, W: Morphisms, max_len: Optional[int] = None,
                   max_steps: int = DEFAULT_MAX_STEPS) -> AgreementReport:
    """Compare roof classes with word equality of ``<~w, f>`` on every ordered parallel pair.

    All words of one hom-set are searched together (see ``components``), with
    a budget of ``max_steps`` expansions per distinct word.  Raises
    :class:`Disagreement` on the first certified verdict that contradicts the
    class partition of :func:`localize`.
    """
    L = localize(C, W)
    report = AgreementReport(max_steps=max_steps)
    n = C.n_objects
    for a in range(n):
        for b in range(n):
            roofs = roofs_between(C, L.W, a, b)
            if not roofs:
                continue
            words = [LiteralString.of_roof(C, r) for r in roofs]
            bound = max_len if max_len is not None else default_max_len(*words)
            if bound < 2:
                raise BoundsError(f"max_len {bound} is shorter than the roof words")
            report.max_len = max(report.max_len, bound)
            search = _Searcher(C, L.W, a, b, bound)
            reduced = [search.reduce(wd.codes()) for wd in words]
            uf, exhausted = search.components(reduced, max_steps * len(set(reduced)))
            for i, ri in enumerate(roofs):
                for j, rj in enumerate(roofs):
                    report.pairs += 1
                    if uf.same(reduced[i], reduced[j]):
                        verdict = EQUAL
                    elif uf.find(reduced[i]) in exhausted or uf.find(reduced[j]) in exhausted:
                        verdict = DISTINCT
                    else:
                        verdict = UNKNOWN
                    same = L.class_of[ri] == L.class_of[rj]
                    if verdict == UNKNOWN:
                        report.unknown += 1
                        report.unknown_pairs.append((ri, rj))
                    elif (verdict == EQUAL) != same:
                        raise Disagreement(ri, rj, verdict)
                    else:
                        report.agree += 1
                        if verdict == EQUAL:
                            report.equal += 1
                        else:
                            report.distinct += 1
    return report
