"""Named example categories.

Each builder returns a :class:`CategoryData`.  The same data ships as ``.cat``
files under ``catfrac/data``; :func:`load_fixture` reads those and
``python -m catfrac.fixtures`` rewrites them from the builders.
"""

from __future__ import annotations

import itertools
import sys
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

from .additive import PreadditiveStructure
from .category import FiniteCategory, MorphClass
from .fileformat import CategoryData, parse_category, serialize_category
from .oracle import Literal, LiteralString


def _named(objects, morphisms, identity_names, table, W_names=(), preadditive=None,
           words=()) -> CategoryData:
    """Assemble a category from names; ``table`` maps ``(g, f)`` names to ``h``."""
    obj_id = {o: i for i, o in enumerate(objects)}
    mor_id = {m: i for i, (m, _, _) in enumerate(morphisms)}
    C = FiniteCategory.build(
        objects,
        [(m, obj_id[d], obj_id[c]) for m, d, c in morphisms],
        [mor_id[identity_names[o]] for o in objects],
        {(mor_id[g], mor_id[f]): mor_id[h] for (g, f), h in table.items()},
    )
    W = MorphClass.of(mor_id[m] for m in W_names)
    P = preadditive(C) if preadditive else None
    strings = tuple(
        LiteralString.make(C, W, [Literal(mor_id[n.lstrip("~")], n.startswith("~")) for n in lits],
                           obj_id[anchor])
        for anchor, lits in words)
    return CategoryData(C, W, P, strings)


def _with_identities(objects, morphisms, identity_names, table) -> dict:
    """Add the forced composites with identities to a partial table."""
    full = dict(table)
    ends = {m: (d, c) for m, d, c in morphisms}
    for m, (d, c) in ends.items():
        full[(identity_names[c], m)] = m
        full[(m, identity_names[d])] = m
    return full


def discrete2() -> CategoryData:
    objs = ["X", "Y"]
    ids = {"X": "id_X", "Y": "id_Y"}
    mors = [("id_X", "X", "X"), ("id_Y", "Y", "Y")]
    return _named(objs, mors, ids, _with_identities(objs, mors, ids, {}), ["id_X", "id_Y"])


def terminal() -> CategoryData:
    mors = [("id", "*", "*")]
    return _named(["*"], mors, {"*": "id"}, {("id", "id"): "id"}, ["id"])


def interval() -> CategoryData:
    objs = ["0", "1"]
    ids = {"0": "id_0", "1": "id_1"}
    mors = [("id_0", "0", "0"), ("id_1", "1", "1"), ("u", "0", "1")]
    return _named(objs, mors, ids, _with_identities(objs, mors, ids, {}),
                  ["id_0", "id_1", "u"],
                  words=[("0", ["u"]), ("0", ["u", "~u", "u"])])


def parallel_nocoeq() -> CategoryData:
    objs = ["A", "B", "C"]
    ids = {o: f"id_{o}" for o in objs}
    mors = [("id_A", "A", "A"), ("id_B", "B", "B"), ("id_C", "C", "C"),
            ("w", "A", "B"), ("f1", "B", "C"), ("f2", "B", "C"), ("g", "A", "C")]
    table = _with_identities(objs, mors, ids, {("f1", "w"): "g", ("f2", "w"): "g"})
    return _named(objs, mors, ids, table, ["id_A", "id_B", "id_C", "w"],
                  words=[("B", ["f1"]), ("B", ["f2"])])


def splitmono() -> CategoryData:
    objs = ["A", "B"]
    ids = {"A": "id_A", "B": "id_B"}
    mors = [("id_A", "A", "A"), ("id_B", "B", "B"),
            ("m", "A", "B"), ("e", "B", "A"), ("p", "B", "B")]
    table = _with_identities(objs, mors, ids, {
        ("e", "m"): "id_A", ("m", "e"): "p", ("p", "p"): "p",
        ("p", "m"): "m", ("e", "p"): "e",
    })
    return _named(objs, mors, ids, table, ["id_A", "id_B"])


def _ring_additive(n: int) -> Callable[[FiniteCategory], PreadditiveStructure]:
    def build(C: FiniteCategory) -> PreadditiveStructure:
        return PreadditiveStructure(
            {(0, 0): 0},
            {(a, b): (a + b) % n for a in range(n) for b in range(n)},
            {a: (-a) % n for a in range(n)},
        )
    return build


def ring(n: int, W: Optional[list[int]] = None) -> CategoryData:
    """Z/n as a one-object category: composition is multiplication, morphism k is named ``k``."""
    obj = "•"
    mors = [(str(k), obj, obj) for k in range(n)]
    table = {(str(g), str(f)): str(g * f % n) for g in range(n) for f in range(n)}
    one = str(1 % n)
    W_names = [str(k) for k in (W if W is not None else [1 % n])]
    return _named([obj], mors, {obj: one}, table, W_names, _ring_additive(n))


def ring_z6() -> CategoryData:
    return ring(6, [1, 3])


def ring_z8() -> CategoryData:
    return ring(8, [0, 1, 2, 4])


def ring_z2() -> CategoryData:
    return ring(2, [1])


# --- matrices over F2 ---------------------------------------------------------

def _matrices(rows: int, cols: int) -> list[tuple[tuple[int, ...], ...]]:
    """All rows x cols 0/1 matrices, ordered by code; entry (i, j) is bit ``i*cols + j``."""
    out = []
    for code in range(2 ** (rows * cols)):
        out.append(tuple(tuple((code >> (i * cols + j)) & 1 for j in range(cols))
                         for i in range(rows)))
    return out


def _code(M: tuple[tuple[int, ...], ...], cols: int) -> int:
    return sum(M[i][j] << (i * cols + j) for i in range(len(M)) for j in range(cols))


def _matmul(A, B, rows: int, inner: int, cols: int):
    """``A . B`` for a rows x inner matrix A and an inner x cols matrix B."""
    return tuple(tuple(sum(A[i][k] & B[k][j] for k in range(inner)) % 2 for j in range(cols))
                 for i in range(rows))


def matrix_f2(max_rank: int = 2) -> CategoryData:
    """Vector spaces F2^0 .. F2^max_rank with all linear maps.

    A map ``a -> b`` is a b x a matrix named ``m<a><b>_<code>``.
    """
    objs = [str(r) for r in range(max_rank + 1)]
    mors = []
    mats = {}
    for a in range(max_rank + 1):
        for b in range(max_rank + 1):
            for M in _matrices(b, a):
                name = f"m{a}{b}_{_code(M, a)}"
                mors.append((name, str(a), str(b)))
                mats[name] = (a, b, M)
    by_key = {(a, b, M): name for name, (a, b, M) in mats.items()}
    ident = {}
    for r in range(max_rank + 1):
        I = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        ident[str(r)] = by_key[(r, r, I)]
    table = {}
    for g, (b, c, G) in mats.items():
        for f, (a, b2, F) in mats.items():
            if b2 == b:
                table[(g, f)] = by_key[(a, c, _matmul(G, F, c, b, a))]

    def additive(C: FiniteCategory) -> PreadditiveStructure:
        ids = {name: i for i, (name, _, _) in enumerate(mors)}
        zero, add, neg = {}, {}, {}
        for name, (a, b, M) in mats.items():
            if not any(itertools.chain.from_iterable(M)):
                zero[(a, b)] = ids[name]
            neg[ids[name]] = ids[name]
            for name2, (a2, b2, M2) in mats.items():
                if (a2, b2) == (a, b):
                    S = tuple(tuple(x ^ y for x, y in zip(r1, r2)) for r1, r2 in zip(M, M2))
                    add[(ids[name], ids[name2])] = ids[by_key[(a, b, S)]]
        return PreadditiveStructure(zero, add, neg)

    W = [name for name, (a, b, M) in mats.items() if a == b and _invertible(M)]
    return _named(objs, mors, ident, table, W, additive)


def _invertible(M) -> bool:
    """Gaussian elimination over F2."""
    rows = [list(r) for r in M]
    n = len(rows)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return False
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(n):
            if r != col and rows[r][col]:
                rows[r] = [x ^ y for x, y in zip(rows[r], rows[col])]
    return True


FIXTURES: dict[str, Callable[[], CategoryData]] = {
    "DISCRETE2": discrete2,
    "TERMINAL": terminal,
    "INTERVAL": interval,
    "PARALLEL_NOCOEQ": parallel_nocoeq,
    "SPLITMONO": splitmono,
    "RING_Z2": ring_z2,
    "RING_Z6": ring_z6,
    "RING_Z8": ring_z8,
    "MATRIX_F2": matrix_f2,
}


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("catfrac") / "data" / f"{name}.cat"))


def load_fixture(name: str) -> CategoryData:
    return parse_category(fixture_path(name).read_text(encoding="utf-8"))


def write_data(directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, build in FIXTURES.items():
        (directory / f"{name}.cat").write_text(serialize_category(build()), encoding="utf-8")


if __name__ == "__main__":
    write_data(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "data")
