"""Acceptance suite: one test (one pass/fail line under pytest -v) per
criterion.  Expected values are frozen from the worked examples and the
independent oracles; nothing here is tuned to the implementation.
"""

import itertools
import random
import subprocess
import sys
import os

from parity_kit.diagrams import (
    Flavor,
    parse_gauss_code,
    project,
    serialize,
)
from parity_kit.invariants import (
    l_odd,
    linking_multiset_signed,
    og_linking_multisets,
)
from parity_kit.moves import random_walk
from parity_kit.oracle import (
    enumerate_diagrams,
    verify_class_consistency,
    verify_parity_axioms,
)
from parity_kit.parity import (
    ChordClass,
    classify_chords,
    gaussian_parity,
    homological_parity,
    index_parity,
    oriented_gaussian_parity,
    polygon_identity_holds,
    polygons,
)
from parity_kit.surface import genus, trace_faces
from parity_kit.diagrams import linked

VIRTUAL_TREFOIL = "O1+ O2+ U1+ U2+"
CLASSICAL_TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
# The genuine alternating figure-eight code; the code printed in the task
# sheet is not realizable at genus 0 (its underlying sequence 1 2 3 4
# 1 2 3 4 has every chord odd, which no planar diagram admits).
FIGURE_EIGHT = "O1+ U2+ O3- U4- O2+ U1+ O4- U3-"

CORPUS = os.path.join(os.path.dirname(__file__), "data", "corpus.tsv")


def _report(num, text):
    print("criterion %d: PASS — %s" % (num, text))


def test_criterion_1_virtual_trefoil_fixture():
    d = parse_gauss_code(VIRTUAL_TREFOIL, "virtual")
    assert genus(d) == 1
    hp = homological_parity(d)
    assert hp.group.invariants() == (1, ())  # H = Z
    values = [hp.values[lab] for lab in d.labels()]
    assert values[0] == hp.group.inv(values[1])  # {g, -g}
    assert not hp.group.is_identity(values[0])
    assert linking_multiset_signed(d, hp) == [2]
    _report(1, "virtual trefoil: genus 1, H = Z, parities {g,-g}, LS = {2}")


def test_criterion_2_classical_triviality():
    for code in (CLASSICAL_TREFOIL, FIGURE_EIGHT):
        d = parse_gauss_code(code, "virtual")
        assert genus(d) == 0
        hp = homological_parity(d)
        assert hp.group.invariants() == (0, ())
        assert all(hp.group.is_identity(v) for v in hp.values.values())
        assert all(index_parity(d, lab) == 0 for lab in d.labels())
    _report(2, "classical trefoil and figure-eight: genus 0, all parities 0")


def test_criterion_3_axiom_sweep_free():
    diagrams = moves = 0
    for n in range(1, 5):
        for d in enumerate_diagrams(n, "free"):
            diagrams += 1
            failures = verify_parity_axioms(d, "og")
            assert failures == [], failures[:3]
    _report(3, "oriented Gaussian parity axioms exhaustively on free n <= 4")


def _random_free(n, rng):
    slots = list(range(2 * n))
    rng.shuffle(slots)
    order = [None] * (2 * n)
    for i in range(0, 2 * n, 2):
        a, b = slots[i], slots[i + 1]
        order[a] = order[b] = i
    names = {}
    for lab in order:
        if lab not in names:
            names[lab] = str(len(names) + 1)
    return parse_gauss_code(" ".join(names[lab] for lab in order), "free")


def test_criterion_4_classification_consistency():
    checked = 0
    for d in enumerate_diagrams(5, "free"):
        assert verify_class_consistency(d) == [], serialize(d)
        checked += 1
    assert checked == 945
    rng = random.Random(20260826)
    sampled = 0
    for n in (6, 7, 8):
        for _ in range(170):
            d = _random_free(n, rng)
            assert verify_class_consistency(d) == [], serialize(d)
            sampled += 1
    assert sampled >= 500
    _report(4, "classification consistent on all 945 n=5 and %d sampled n=6..8"
            % sampled)


def test_criterion_5_even_chord_law():
    rng = random.Random(5)
    sample = [_random_free(rng.randrange(2, 7), rng) for _ in range(150)]
    for d in sample:
        cls = classify_chords(d)
        for lab in d.labels():
            if gaussian_parity(d, lab) == 0:
                linked_odd = sum(
                    1
                    for other in d.labels()
                    if other != lab
                    and gaussian_parity(d, other) == 1
                    and linked(d, lab, other)
                )
                assert cls[lab].z4 in (0, 2)
                assert cls[lab].z4 == (2 * linked_odd) % 4
    _report(5, "even chords have z4 value 2*(#linked odd) mod 4 on 150 samples")


def test_criterion_6_polygon_identities():
    rng = random.Random(6)
    total = 0
    for _ in range(60):
        d = _random_free(rng.randrange(2, 6), rng)
        og = oriented_gaussian_parity(d)
        for poly in polygons(d, 6):
            assert polygon_identity_holds(d, og, poly)
            total += 1
    assert total > 200
    faces_checked = 0
    pool = list(enumerate_diagrams(3, "virtual"))
    for d in rng.sample(pool, 60):
        hp = homological_parity(d)
        for face in trace_faces(d).faces:
            acc = hp.group.identity()
            for chord, eps in face.corners:
                acc = hp.group.op(acc, hp.group.scale(eps, hp.values[chord]))
            assert hp.group.is_identity(acc)
            faces_checked += 1
    _report(6, "%d polygon and %d face-word identities hold" % (total, faces_checked))


def test_criterion_7_invariance_fuzzing():
    rng = random.Random(7)
    chains = 0
    free_pool = list(enumerate_diagrams(3, "free")) + list(
        enumerate_diagrams(4, "free")
    )
    for seed_d in rng.sample(free_pool, 25):
        base = (l_odd(seed_d), og_linking_multisets(seed_d))
        for _ in range(4):
            chain = random_walk(seed_d, rng.randrange(5, 16), rng, max_chords=9)
            end = chain[-1].target if chain else seed_d
            assert (l_odd(end), og_linking_multisets(end)) == base
            chains += 1
    virt_pool = list(enumerate_diagrams(2, "virtual"))
    for seed_d in rng.sample(virt_pool, 25):
        hp0 = homological_parity(seed_d)
        base = (
            linking_multiset_signed(seed_d, hp0),
            hp0.group.invariants(),
            l_odd(seed_d),
        )
        for _ in range(4):
            chain = random_walk(seed_d, rng.randrange(5, 16), rng, max_chords=9)
            end = chain[-1].target if chain else seed_d
            hp = homological_parity(end)
            assert (
                linking_multiset_signed(end, hp),
                hp.group.invariants(),
                l_odd(end),
            ) == base
            chains += 1
    assert chains == 200
    _report(7, "invariants constant along 200 random move chains")


def test_criterion_8_e1_has_even_size():
    rng = random.Random(8)
    for _ in range(200):
        d = _random_free(rng.randrange(1, 8), rng)
        counts = sum(
            1 for cls in classify_chords(d).values() if cls is ChordClass.E1
        )
        assert counts % 2 == 0
    _report(8, "|E1| even on 200 sampled diagrams")


def test_criterion_9_infrastructure():
    from parity_kit.surface import smith_normal_form

    assert smith_normal_form([[2, 0], [0, 3]]).divisors == (1, 6)
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form(
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    ).divisors == (1, 1, 1)

    with open(CORPUS, "r", encoding="utf-8") as handle:
        lines = [
            ln.rstrip("\n")
            for ln in handle
            if ln.strip() and not ln.startswith("#")
        ]
    assert len(lines) == 30
    for line in lines:
        _name, flavor, code = line.split("\t")
        d = parse_gauss_code(code, flavor)
        assert serialize(d) == code

    args = [
        sys.executable,
        "-m",
        "parity_kit.cli",
        "corpus",
        CORPUS,
    ]
    first = subprocess.run(args, capture_output=True)
    second = subprocess.run(args, capture_output=True)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    _report(9, "SNF fixtures, 30-entry corpus round trip, CLI determinism")
