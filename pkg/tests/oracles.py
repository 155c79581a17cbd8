"""Brute-force reference implementations used as test oracles.

These work straight from definitions on the raw tables and share no search
code with the package.  They are slow and meant for small inputs only.
"""

from __future__ import annotations

from itertools import product


def mors(C):
    return range(C.n_morphisms)


def dom(C, f):
    return C.morphisms[f].dom


def cod(C, f):
    return C.morphisms[f].cod


def ident(C, a):
    return C.identity[a]


def comp(C, g, f):
    return C.comp[(g, f)]


def is_valid_category(C) -> bool:
    for a in range(C.n_objects):
        i = ident(C, a)
        if dom(C, i) != a or cod(C, i) != a:
            return False
    for g, f in product(mors(C), repeat=2):
        composable = cod(C, f) == dom(C, g)
        if composable != ((g, f) in C.comp):
            return False
    for (g, f), h in C.comp.items():
        if dom(C, h) != dom(C, f) or cod(C, h) != cod(C, g):
            return False
    for f in mors(C):
        if comp(C, ident(C, cod(C, f)), f) != f or comp(C, f, ident(C, dom(C, f))) != f:
            return False
    for h, g, f in product(mors(C), repeat=3):
        if cod(C, f) == dom(C, g) and cod(C, g) == dom(C, h):
            if comp(C, h, comp(C, g, f)) != comp(C, comp(C, h, g), f):
                return False
    return True


def inverse(C, f):
    for g in mors(C):
        if dom(C, g) == cod(C, f) and cod(C, g) == dom(C, f) \
                and comp(C, g, f) == ident(C, dom(C, f)) and comp(C, f, g) == ident(C, cod(C, f)):
            return g
    return None


def split_monos(C) -> set:
    return {m for m in mors(C) for e in mors(C)
            if dom(C, e) == cod(C, m) and comp(C, e, m) == ident(C, dom(C, m))}


def closure(C, seeds) -> set:
    S = set(seeds) | set(C.identity)
    while True:
        new = {comp(C, g, f) for g in S for f in S if cod(C, f) == dom(C, g)} - S
        if not new:
            return S
        S |= new


def L0(C, W) -> bool:
    W = set(W)
    return set(C.identity) <= W and all(
        comp(C, g, f) in W for g in W for f in W if cod(C, f) == dom(C, g))


def l1_squares(C, W, w, f):
    """All (f', w') with w' f = f' w, in (w', f') order."""
    out = []
    for wp in sorted(W):
        if dom(C, wp) != cod(C, f):
            continue
        for fp in mors(C):
            if dom(C, fp) == cod(C, w) and cod(C, fp) == cod(C, wp) \
                    and comp(C, wp, f) == comp(C, fp, w):
                out.append((fp, wp))
    return out


def L1(C, W, W_in=None) -> bool:
    W_in = W if W_in is None else W_in
    return all(l1_squares(C, W, w, f) for w in W_in for f in mors(C) if dom(C, f) == dom(C, w))


def L2(C, W, coeq=None) -> bool:
    coeq = W if coeq is None else coeq
    for w in W:
        for f1 in mors(C):
            for f2 in mors(C):
                if dom(C, f1) != cod(C, w) or (dom(C, f2), cod(C, f2)) != (dom(C, f1), cod(C, f1)):
                    continue
                if comp(C, f1, w) != comp(C, f2, w):
                    continue
                if not any(dom(C, v) == cod(C, f1) and comp(C, v, f1) == comp(C, v, f2)
                           for v in coeq):
                    return False
    return True


def L2_zero(C, W, P) -> bool:
    for w in W:
        for f in mors(C):
            if dom(C, f) != cod(C, w):
                continue
            if comp(C, f, w) != P.zero[(dom(C, w), cod(C, f))]:
                continue
            if not any(dom(C, v) == cod(C, f) and comp(C, v, f) == P.zero[(dom(C, f), cod(C, v))]
                       for v in W):
                return False
    return True


def roofs(C, W, a, b):
    return [(f, w) for w in sorted(W) for f in mors(C)
            if dom(C, f) == a and dom(C, w) == b and cod(C, f) == cod(C, w)]


def equiv_witnesses(C, W, r1, r2):
    """All (g, h) from the definition of roof equivalence, sorted."""
    (f1, w1), (f2, w2) = r1, r2
    out = []
    for g, h in product(mors(C), repeat=2):
        if dom(C, g) != cod(C, f1) or dom(C, h) != cod(C, f2) or cod(C, g) != cod(C, h):
            continue
        if comp(C, g, f1) == comp(C, h, f2) and comp(C, g, w1) == comp(C, h, w2) \
                and comp(C, g, w1) in W:
            out.append((g, h))
    return out


def roof_classes(C, W, a, b):
    """Classes of the transitive closure of direct equivalence, by full matrix closure."""
    rs = roofs(C, W, a, b)
    n = len(rs)
    R = [[bool(equiv_witnesses(C, W, rs[i], rs[j])) or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if R[i][k]:
                for j in range(n):
                    if R[k][j]:
                        R[i][j] = True
    classes = []
    placed = set()
    for i in range(n):
        if i in placed:
            continue
        cls = [rs[j] for j in range(n) if R[i][j] and R[j][i]]
        placed |= {j for j in range(n) if R[i][j] and R[j][i]}
        classes.append(cls)
    return classes


def two_morphism_classes(C, W, a, b):
    """Classes generated by single 2-morphisms r -> (g f, g w), by repeated merging."""
    rs = roofs(C, W, a, b)
    label = {r: k for k, r in enumerate(rs)}
    changed = True
    while changed:
        changed = False
        for (f, w) in rs:
            for g in mors(C):
                if dom(C, g) != cod(C, f):
                    continue
                t = (comp(C, g, f), comp(C, g, w))
                if t in label and label[t] != label[(f, w)]:
                    lo, hi = sorted((label[t], label[(f, w)]))
                    for r in rs:
                        if label[r] == hi:
                            label[r] = lo
                    changed = True
    groups = {}
    for r in rs:
        groups.setdefault(label[r], []).append(r)
    return list(groups.values())


def is_preadditive(C, P) -> bool:
    for a, b in product(range(C.n_objects), repeat=2):
        hom = [f for f in mors(C) if (dom(C, f), cod(C, f)) == (a, b)]
        z = P.zero[(a, b)]
        for f in hom:
            if P.add[(f, z)] != f or P.add[(f, P.neg[f])] != z:
                return False
            for g in hom:
                if P.add[(f, g)] != P.add[(g, f)]:
                    return False
                for h in hom:
                    if P.add[(P.add[(f, g)], h)] != P.add[(f, P.add[(g, h)])]:
                        return False
    for g, f1 in product(mors(C), repeat=2):
        if cod(C, f1) != dom(C, g):
            continue
        for f2 in mors(C):
            if (dom(C, f2), cod(C, f2)) == (dom(C, f1), cod(C, f1)):
                if comp(C, g, P.add[(f1, f2)]) != P.add[(comp(C, g, f1), comp(C, g, f2))]:
                    return False
        for g2 in mors(C):
            if (dom(C, g2), cod(C, g2)) == (dom(C, g), cod(C, g)):
                if comp(C, P.add[(g, g2)], f1) != P.add[(comp(C, g, f1), comp(C, g2, f1))]:
                    return False
    return True


# --- strings with formal inverses ------------------------------------------
# A literal is (m, inv).  Strings are tuples of literals, outermost first.

def lit_dom(C, lit):
    m, inv = lit
    return cod(C, m) if inv else dom(C, m)


def lit_cod(C, lit):
    m, inv = lit
    return dom(C, m) if inv else cod(C, m)


def raw_moves(C, W, s, start):
    """All strings one elementary equivalence away from ``s``, in either direction."""
    out = set()
    n = len(s)
    for p in range(n + 1):
        x = start if p == n else lit_cod(C, s[p])
        out.add(s[:p] + ((ident(C, x), False),) + s[p:])
        for w in W:
            if cod(C, w) == x:
                out.add(s[:p] + ((w, False), (w, True)) + s[p:])
            if dom(C, w) == x:
                out.add(s[:p] + ((w, True), (w, False)) + s[p:])
    for k, (m, inv) in enumerate(s):
        if not inv:
            if m == ident(C, dom(C, m)):
                out.add(s[:k] + s[k + 1:])
            for g, f in product(mors(C), repeat=2):
                if cod(C, f) == dom(C, g) and (g, f) in C.comp and comp(C, g, f) == m:
                    out.add(s[:k] + ((g, False), (f, False)) + s[k + 1:])
        if k + 1 < n:
            (m2, inv2) = s[k + 1]
            if not inv and not inv2:
                out.add(s[:k] + ((comp(C, m, m2), False),) + s[k + 2:])
            if m == m2 and inv != inv2:
                out.add(s[:k] + s[k + 2:])
    return out


def raw_reachable(C, W, s, start, max_len):
    """Every string of length <= max_len reachable from ``s`` through such strings."""
    seen = {s}
    todo = [s]
    while todo:
        t = todo.pop()
        for u in raw_moves(C, W, t, start):
            if len(u) <= max_len and u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def evaluate(L, s, start):
    """The morphism of the localization named by a string."""
    B = L.base
    value = B.identity[start]
    for m, inv in reversed(s):
        step = L.inverse_of_loc(m) if inv else L.loc.mor_map[m]
        value = B.comp[(step, value)]
    return value
