"""Random finite categories and morphism classes for property testing.

Categories are drawn as subcategories of finite sets: a few random functions
between small sets, closed under composition.  That makes every sample a
valid category without rejection on the category laws.  Preorders are drawn
separately because they are thin and exercise different corners.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator, Optional

from .additive import PreadditiveStructure
from .category import FiniteCategory, MorphClass
from .fractions import check_L0, check_L1, check_L2, saturate

Arrow = tuple[int, int, tuple[int, ...]]


def _close(sizes: list[int], gens: list[Arrow], limit: int) -> Optional[list[Arrow]]:
    arrows: list[Arrow] = [(a, a, tuple(range(n))) for a, n in enumerate(sizes)]
    seen = set(arrows)
    for g in gens:
        if g not in seen:
            seen.add(g)
            arrows.append(g)
    grew = True
    while grew:
        grew = False
        for g, f in product(list(arrows), repeat=2):
            if f[1] != g[0]:
                continue
            h = (f[0], g[1], tuple(g[2][x] for x in f[2]))
            if h not in seen:
                if len(arrows) >= limit:
                    return None
                seen.add(h)
                arrows.append(h)
                grew = True
    return arrows


def _from_arrows(sizes: list[int], arrows: list[Arrow]) -> FiniteCategory:
    index = {x: i for i, x in enumerate(arrows)}
    comp = {}
    for (i, g), (j, f) in product(enumerate(arrows), repeat=2):
        if f[1] == g[0]:
            comp[(i, j)] = index[(f[0], g[1], tuple(g[2][x] for x in f[2]))]
    return FiniteCategory.build(
        [f"X{a}" for a in range(len(sizes))],
        [(f"a{i}", d, c) for i, (d, c, _) in enumerate(arrows)],
        range(len(sizes)),
        comp,
    )


def random_concrete(rng: random.Random, max_objects: int = 4, max_morphisms: int = 12,
                    max_set: int = 3) -> Optional[FiniteCategory]:
    """Random functions between small sets, closed under composition; None if too big."""
    n = rng.randint(1, max_objects)
    sizes = [rng.randint(1, max_set + (n == 1)) for _ in range(n)]
    gens = []
    for _ in range(rng.randint(1, 5)):
        a, b = rng.randrange(n), rng.randrange(n)
        gens.append((a, b, tuple(rng.randrange(sizes[b]) for _ in range(sizes[a]))))
    arrows = _close(sizes, gens, max_morphisms)
    return None if arrows is None else _from_arrows(sizes, arrows)


def random_preorder(rng: random.Random, max_objects: int = 4,
                    max_morphisms: int = 12) -> Optional[FiniteCategory]:
    n = rng.randint(1, max_objects)
    rel = {(a, a) for a in range(n)}
    p = rng.random()
    rel |= {(a, b) for a in range(n) for b in range(n) if rng.random() < p / 2}
    changed = True
    while changed:
        extra = {(a, c) for a, b in rel for b2, c in rel if b == b2} - rel
        changed = bool(extra)
        rel |= extra
    if len(rel) > max_morphisms:
        return None
    arrows = sorted(rel, key=lambda ab: (ab[0] != ab[1], ab))
    index = {x: i for i, x in enumerate(arrows)}
    comp = {(index[(b, c)], index[(a, b)]): index[(a, c)]
            for a, b in arrows for b2, c in arrows if b == b2}
    return FiniteCategory.build(
        [f"X{a}" for a in range(n)],
        [(f"a{i}", a, b) for i, (a, b) in enumerate(arrows)],
        range(n), comp)


def random_category(rng: random.Random, max_objects: int = 4,
                    max_morphisms: int = 12) -> FiniteCategory:
    """Draw until a category within the size limits comes out."""
    while True:
        if rng.random() < 0.2:
            C = random_preorder(rng, max_objects, max_morphisms)
        else:
            C = random_concrete(rng, max_objects, max_morphisms)
        if C is not None:
            return C


def random_W(rng: random.Random, C: FiniteCategory, max_seeds: int = 3) -> MorphClass:
    """Saturation of a few random non-identity morphisms (sometimes none)."""
    pool = [f for f in range(C.n_morphisms) if not C.is_identity(f)]
    k = 0 if rng.random() < 0.1 else rng.randint(1, max_seeds)
    return saturate(C, rng.sample(pool, k=min(k, len(pool))))


def corpus(seed: int, size: int, axioms: tuple[str, ...] = ("L0", "L1", "L2"),
           max_objects: int = 4, max_morphisms: int = 12
           ) -> Iterator[tuple[FiniteCategory, MorphClass]]:
    """``size`` random pairs ``(C, W)`` satisfying the named axioms.

    W is always saturated, so L0 holds by construction; the other axioms are
    enforced by rejection.
    """
    checks = {"L0": check_L0, "L1": check_L1, "L2": check_L2}
    rng = random.Random(seed)
    made = 0
    while made < size:
        C = random_category(rng, max_objects, max_morphisms)
        W = random_W(rng, C)
        if all(checks[a](C, W).holds for a in axioms):
            made += 1
            yield C, W


# --- preadditive corpus ---------------------------------------------------

def ring_category(elements: list[str], add, mul, one: int, zero: int
                  ) -> tuple[FiniteCategory, PreadditiveStructure]:
    """A finite ring as a one-object category; ``add`` and ``mul`` act on indices."""
    n = len(elements)
    C = FiniteCategory.build(
        ["•"], [(e, 0, 0) for e in elements], [one],
        {(g, f): mul(g, f) for g in range(n) for f in range(n)})
    neg = {a: next(b for b in range(n) if add(a, b) == zero) for a in range(n)}
    P = PreadditiveStructure({(0, 0): zero},
                             {(a, b): add(a, b) for a in range(n) for b in range(n)}, neg)
    return C, P


def _poly_f2_mod(modulus: int, degree: int):
    """Multiplication of F2[x] polynomials (bitmasks) reduced by ``modulus``."""
    def mul(a: int, b: int) -> int:
        r = 0
        for i in range(degree):
            if b >> i & 1:
                r ^= a << i
        for i in range(2 * degree - 2, degree - 1, -1):
            if r >> i & 1:
                r ^= modulus << (i - degree)
        return r
    return mul


def small_rings() -> Iterator[tuple[str, FiniteCategory, PreadditiveStructure]]:
    for n in range(1, 13):
        yield (f"Z/{n}", *ring_category([str(k) for k in range(n)],
                                         lambda a, b, n=n: (a + b) % n,
                                         lambda a, b, n=n: a * b % n, 1 % n, 0))
    # Z/2 x Z/2, componentwise
    els = [(a, b) for a in range(2) for b in range(2)]
    idx = {e: i for i, e in enumerate(els)}
    yield ("Z/2xZ/2", *ring_category(
        [f"{a}{b}" for a, b in els],
        lambda x, y: idx[tuple((p + q) % 2 for p, q in zip(els[x], els[y]))],
        lambda x, y: idx[tuple(p * q for p, q in zip(els[x], els[y]))],
        idx[(1, 1)], idx[(0, 0)]))
    # Z/2 x Z/3 is Z/6 again; Z/2 x Z/4 is not cyclic
    els24 = [(a, b) for a in range(2) for b in range(4)]
    idx24 = {e: i for i, e in enumerate(els24)}
    yield ("Z/2xZ/4", *ring_category(
        [f"{a}.{b}" for a, b in els24],
        lambda x, y: idx24[((els24[x][0] + els24[y][0]) % 2, (els24[x][1] + els24[y][1]) % 4)],
        lambda x, y: idx24[(els24[x][0] * els24[y][0] % 2, els24[x][1] * els24[y][1] % 4)],
        idx24[(1, 1)], idx24[(0, 0)]))
    # F2[x]/(x^2) and F4 = F2[x]/(x^2+x+1), elements as bitmasks
    for name, modulus in (("F2[x]/(x^2)", 0b100), ("F4", 0b111)):
        mul = _poly_f2_mod(modulus, 2)
        yield (name, *ring_category([f"p{k}" for k in range(4)],
                                    lambda a, b: a ^ b, mul, 1, 0))


def saturated_classes(C: FiniteCategory, seeds: Optional[list[list[int]]] = None
                      ) -> list[MorphClass]:
    """Distinct saturations of the given seed sets (all subsets by default)."""
    if seeds is None:
        seeds = [[f for f in range(C.n_morphisms) if mask >> f & 1]
                 for mask in range(2 ** C.n_morphisms)]
    out: dict[frozenset, MorphClass] = {}
    for s in seeds:
        W = saturate(C, s)
        out.setdefault(W.members, W)
    return [out[k] for k in sorted(out, key=lambda m: (len(m), sorted(m)))]
