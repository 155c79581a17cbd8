"""Acceptance criteria, one test each.  Every test prints a PASS or FAIL line."""

import os
import subprocess
import sys
import time
from itertools import product
from pathlib import Path

import pytest

from catfrac.additive import check_additive_localization, check_L2_doubleprime, induced_preadditive
from catfrac.category import Functor, MorphClass, check_functor, identity_functor, is_iso, validate_category
from catfrac.fractions import (
    Roof,
    check_axioms,
    check_decomposition,
    check_L2,
    check_L2_prime,
    find_k,
    generate_WL,
    factor_functor,
    l1_witnesses,
    localize,
    roof_equivalent,
    roof_partition,
    roofs_between,
)
from catfrac.generate import corpus, saturated_classes, small_rings
from catfrac.oracle import oracle_compare

import oracles
from helpers import ids

CORPUS_SIZE = 1000
TESTS_DIR = Path(__file__).parent


@pytest.fixture
def verdict(capsys):
    """Print one line per criterion, outside pytest's capture, then assert."""
    def report(number, title, failures, detail=""):
        status = "PASS" if not failures else "FAIL"
        line = f"criterion {number} {status}: {title}"
        if detail:
            line += f" ({detail})"
        if failures:
            line += f"; first failure: {failures[0]}"
        with capsys.disabled():
            print("\n" + line)
        assert not failures, line
    return report


@pytest.fixture(scope="module")
def full_corpus():
    return list(corpus(1, CORPUS_SIZE))


def timed(fn):
    t = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t


def test_criterion_1_axiom_suite(fx, verdict):
    expected = {
        "INTERVAL": ((True, True, True), None),
        "PARALLEL_NOCOEQ": ((True, True, False), ("w", "f1", "f2")),
        "RING_Z6": ((True, True, True), None),
        "RING_Z8": ((True, True, True), None),
        "SPLITMONO": ((True, True, True), None),
    }
    data = {name: fx(name) for name in expected}
    assert data["SPLITMONO"].W.members == set(data["SPLITMONO"].category.identity)

    def run_all():
        return {name: check_axioms(d.category, d.W) for name, d in data.items()}

    reports, elapsed = timed(run_all)
    failures = []
    for name, (holds, witness) in expected.items():
        C, W = data[name].category, data[name].W
        got = tuple(r.holds for r in reports[name])
        brute = (oracles.L0(C, W), oracles.L1(C, W), oracles.L2(C, W))
        if got != holds or brute != holds:
            failures.append(f"{name}: {got}, brute force {brute}")
        if witness is not None and reports[name][2].witness_ids() != ids(C, *witness):
            failures.append(f"{name}: L2 witness {reports[name][2].format(C)}")
    if elapsed >= 1.0:
        failures.append(f"took {elapsed:.3f}s")
    verdict(1, "axiom verdicts on the five fixtures", failures, f"{elapsed * 1000:.1f} ms")


def test_criterion_2_localization_counts(fx, verdict):
    def counts(L):
        n = L.base.n_objects
        return [len(L.base.hom(a, b)) for a in range(n) for b in range(n)]

    failures = []
    slowest = 0.0
    cases = [("INTERVAL", None, [1, 1, 1, 1]), ("RING_Z6", None, [2]), ("RING_Z8", None, [1])]
    for name in ("DISCRETE2", "TERMINAL", "INTERVAL", "PARALLEL_NOCOEQ", "SPLITMONO",
                 "RING_Z2", "RING_Z6", "RING_Z8", "MATRIX_F2"):
        C = fx(name).category
        n = C.n_objects
        cases.append((name, MorphClass.of(C.identity),
                      [len(C.hom(a, b)) for a, b in product(range(n), repeat=2)]))
    for name, W, want in cases:
        d = fx(name)
        L, elapsed = timed(lambda: localize(d.category, d.W if W is None else W))
        slowest = max(slowest, elapsed)
        label = name if W is None else f"{name} with identities"
        if counts(L) != want:
            failures.append(f"{label}: {counts(L)} != {want}")
        if elapsed >= 1.0:
            failures.append(f"{label}: took {elapsed:.3f}s")
    verdict(2, "hom-class counts of localize", failures,
            f"{len(cases)} cases, slowest {slowest * 1000:.1f} ms")


def test_criterion_3_l1_witnesses_give_equivalent_roofs(full_corpus, verdict):
    failures = []
    pairs = 0
    for k, (C, W) in enumerate(full_corpus):
        for w in sorted(W):
            for f in C.out_of(C.dom(w)):
                roofs = [Roof(s.f_prime, s.w_prime) for s in l1_witnesses(C, W, w, f)]
                for r1, r2 in product(roofs, repeat=2):
                    pairs += 1
                    if roof_equivalent(C, W, r1, r2) is None:
                        failures.append(f"sample {k}: (w,f)=({w},{f}) {r1} vs {r2}")
    verdict(3, "any two L1 witnesses give equivalent roofs", failures,
            f"{len(full_corpus)} categories, {pairs} witness pairs")


def test_criterion_4_direct_equals_generated_equivalence(full_corpus, verdict):
    failures = []
    pairs = 0
    for k, (C, W) in enumerate(full_corpus):
        for a, b in product(range(C.n_objects), repeat=2):
            # roof_equivalent_generated asks whether two roofs share a block of this partition
            block = {r: i for i, cls in enumerate(roof_partition(C, W, a, b)) for r in cls}
            rs = roofs_between(C, W, a, b)
            for r1, r2 in product(rs, repeat=2):
                pairs += 1
                if (roof_equivalent(C, W, r1, r2) is not None) != (block[r1] == block[r2]):
                    failures.append(f"sample {k}: {r1} vs {r2}")
    verdict(4, "direct roof equivalence equals the generated relation", failures,
            f"{len(full_corpus)} categories, {pairs} roof pairs")


def test_criterion_5_weak_axioms(verdict):
    sample = list(corpus(2, CORPUS_SIZE, axioms=("L0", "L1")))
    failures = []
    l2_failures = 0
    k_checks = 0
    for k, (C, W) in enumerate(sample):
        strict, weak = check_L2(C, W).holds, check_L2_prime(C, W).holds
        l2_failures += not strict
        if strict != weak:
            failures.append(f"sample {k}: L2 {strict}, L2' {weak}")
        for wp in generate_WL(C, W):
            k_checks += 1
            if C.comp[(find_k(C, W, wp), wp)] not in W:
                failures.append(f"sample {k}: find_k({wp}) leaves W")
    verdict(5, "L2 = L2' under L0+L1, and find_k lands in W", failures,
            f"{len(sample)} categories, {l2_failures} with L2 failing, {k_checks} find_k calls")


def test_criterion_6_localization_and_universal_property(fx, verdict):
    failures = []
    for name in ("DISCRETE2", "TERMINAL", "INTERVAL", "SPLITMONO", "RING_Z2", "RING_Z6",
                 "RING_Z8", "MATRIX_F2"):
        d = fx(name)
        L = localize(d.category, d.W)
        if not validate_category(L.base).ok:
            failures.append(f"{name}: localization is not a category")
        if not check_functor(L.loc).ok:
            failures.append(f"{name}: loc is not a functor")
        if any(is_iso(L.base, L.loc(w)) is None for w in d.W):
            failures.append(f"{name}: some loc(w) is not invertible")
        if not check_decomposition(L).ok:
            failures.append(f"{name}: classes do not decompose")

    interval, z6, z2 = fx("INTERVAL"), fx("RING_Z6"), fx("RING_Z2")
    L_int = localize(interval.category, interval.W)
    L_z6 = localize(z6.category, z6.W)
    examples = [
        ("loc of RING_Z6", L_z6, L_z6.loc),
        ("INTERVAL to a point", L_int, Functor(interval.category, fx("TERMINAL").category,
                                               (0, 0), (0, 0, 0))),
        ("RING_Z6 mod 2", L_z6, Functor(z6.category, z2.category, (0,),
                                        tuple(k % 2 for k in range(6)))),
    ]
    for label, L, F in examples:
        G = factor_functor(L, F)
        if not check_functor(G).ok:
            failures.append(f"{label}: G is not a functor")
        back = tuple(G.mor_map[L.loc.mor_map[f]] for f in range(L.source.n_morphisms))
        if back != F.mor_map or tuple(G.obj_map[x] for x in L.loc.obj_map) != F.obj_map:
            failures.append(f"{label}: G . loc != F")
        # uniqueness: every functor H on the localization with H . loc = F equals G
        D = F.target
        n = L.base.n_morphisms
        options = [D.hom(G.obj_map[L.base.dom(i)], G.obj_map[L.base.cod(i)]) for i in range(n)]
        agreeing = []
        for choice in product(*options):
            H = Functor(L.base, D, G.obj_map, tuple(choice))
            if check_functor(H).ok and \
                    all(H.mor_map[L.loc.mor_map[f]] == F.mor_map[f]
                        for f in range(L.source.n_morphisms)):
                agreeing.append(H)
        if agreeing != [G]:
            failures.append(f"{label}: {len(agreeing)} factorizations")
    if factor_functor(L_z6, L_z6.loc) != identity_functor(L_z6.base):
        failures.append("factoring loc through itself is not the identity")
    verdict(6, "localize is a category, loc inverts W, factorizations exist and are unique",
            failures)


def test_criterion_7_additive(fx, verdict):
    failures = []
    for name in ("RING_Z6", "RING_Z8"):
        d = fx(name)
        rep = check_additive_localization(d.category, d.W, d.preadditive)
        if not rep.ok:
            failures.append(f"{name}: {rep.format()}")
    z6 = fx("RING_Z6")
    L = localize(z6.category, z6.W)
    Pi = induced_preadditive(L, z6.preadditive)
    hom = L.base.hom(0, 0)
    zero = Pi.zero[(0, 0)]
    label = {i: int(i != zero) for i in hom}
    if len(hom) != 2 or any(label[Pi.add[(i, j)]] != (label[i] + label[j]) % 2
                            for i in hom for j in hom):
        failures.append("induced hom group of RING_Z6 is not Z/2")

    members = 0
    for name, C, P in small_rings():
        for W in saturated_classes(C):
            members += 1
            if check_L2(C, W).holds != check_L2_doubleprime(C, W, P).holds:
                failures.append(f"{name} W={sorted(W)}: L2 and L2'' disagree")
    m = fx("MATRIX_F2")
    for W in saturated_classes(m.category, seeds=[[], sorted(m.W)]):
        members += 1
        if check_L2(m.category, W).holds != check_L2_doubleprime(m.category, W, m.preadditive).holds:
            failures.append(f"MATRIX_F2 W={sorted(W)}: L2 and L2'' disagree")
    verdict(7, "additive localization, induced Z/2, L2 = L2''", failures,
            f"{members} preadditive corpus members")


GOLDEN_UNKNOWN_RATE = {"INTERVAL": 0.0, "RING_Z6": 0.0}


def test_criterion_8_oracle_agreement(fx, verdict):
    failures = []
    details = []
    for name, golden in GOLDEN_UNKNOWN_RATE.items():
        d = fx(name)
        rep = oracle_compare(d.category, d.W)  # raises Disagreement on any certified mismatch
        details.append(f"{name} {rep.agree}/{rep.pairs} agree, unknown rate {rep.unknown_rate:.4f}")
        if rep.unknown_rate != golden:
            failures.append(f"{name}: unknown rate {rep.unknown_rate} != golden {golden}")
    verdict(8, "word oracle agrees with roof classes", failures, "; ".join(details))


def test_criterion_9_determinism(tmp_path, verdict):
    outputs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run([sys.executable, str(TESTS_DIR / "cli_suite.py"), str(tmp_path)],
                              capture_output=True, env=env, check=True)
        outputs.append(proc.stdout)
    failures = [] if outputs[0] == outputs[1] else ["transcripts differ"]
    verdict(9, "two CLI runs are byte-identical", failures,
            f"{len(outputs[0])} bytes, hash seeds 1 and 2")
