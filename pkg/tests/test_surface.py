"""Carter surfaces, Smith normal form, and homology."""

import random

import pytest

from parity_kit.diagrams import WrongFlavor, parse_gauss_code
from parity_kit.oracle import enumerate_diagrams, oracle_face_count
from parity_kit.parity import homological_parity
from parity_kit.surface import (
    FgAbelianGroup,
    genus,
    homotopical_parity_words,
    presentation,
    rotation_system,
    smith_normal_form,
    trace_faces,
)

VT = "O1+ O2+ U1+ U2+"
CT = "O1+ U2+ O3+ U1+ O2+ U3+"
F8 = "O1+ U2+ O3- U4- O2+ U1+ O4- U3-"


def test_rotation_system_needs_signs():
    with pytest.raises(WrongFlavor):
        rotation_system(parse_gauss_code("1 1", "free"))


def test_rotation_system_shape():
    d = parse_gauss_code(VT, "virtual")
    rot = rotation_system(d)
    assert set(rot) == {"1", "2"}
    for darts in rot.values():
        assert len(darts) == 4
        assert len(set(darts)) == 4


def test_genus_fixtures():
    assert genus(parse_gauss_code("O1+ U1+", "virtual")) == 0
    assert genus(parse_gauss_code(VT, "virtual")) == 1
    assert genus(parse_gauss_code(CT, "virtual")) == 0
    assert genus(parse_gauss_code(F8, "virtual")) == 0


def test_classical_trefoil_face_count():
    assert len(trace_faces(parse_gauss_code(CT, "virtual")).faces) == 5


def test_kink_has_monogon():
    data = trace_faces(parse_gauss_code("O1+ U1+", "virtual"))
    assert any(len(f.corners) == 1 for f in data.faces)


def test_euler_formula_and_corner_count():
    rng = random.Random(3)
    pool = list(enumerate_diagrams(3, "virtual"))
    for d in rng.sample(pool, 50):
        data = trace_faces(d)
        corners = sum(len(f.corners) for f in data.faces)
        assert corners == 4 * d.n
        chi = d.n - 2 * d.n + len(data.faces)
        assert chi == 2 - 2 * data.genus
        assert data.genus >= 0


def test_face_count_matches_oracle():
    rng = random.Random(4)
    pool = list(enumerate_diagrams(3, "virtual")) + list(
        enumerate_diagrams(2, "flat")
    )
    for d in rng.sample(pool, 80):
        assert len(trace_faces(d).faces) == oracle_face_count(d)


def test_presentation_counts():
    d = parse_gauss_code(VT, "virtual")
    pres = presentation(d)
    assert pres.generators == ("1", "2")
    assert len(pres.relators) == 2  # genus 1 => F = 2
    kink = presentation(parse_gauss_code("O1+ U1+", "virtual"))
    assert any(len(rel) == 1 for rel in kink.relators)


def test_homology_fixtures():
    hp = homological_parity(parse_gauss_code(VT, "virtual"))
    assert hp.group.invariants() == (1, ())
    vals = set(hp.values.values())
    assert vals == {(1,), (-1,)}
    for code in (CT, F8, "O1+ U1+"):
        hp = homological_parity(parse_gauss_code(code, "virtual"))
        assert hp.group.invariants() == (0, ())
        assert all(hp.group.is_identity(v) for v in hp.values.values())


def test_homotopical_words():
    d = parse_gauss_code("* O1+ U1+", "virtual")
    words = homotopical_parity_words(d)
    assert words == {"1": (("1", 1),)}
    vt = parse_gauss_code("* " + VT, "virtual")
    hp = homological_parity(vt)
    words = homotopical_parity_words(vt)
    # words abelianize to the homological values
    for lab, word in words.items():
        total = hp.group.identity()
        for gen, exp in word:
            total = hp.group.op(total, hp.group.scale(exp, hp.values[gen]))
        assert total == hp.values[lab]


def test_smith_normal_form_fixtures():
    res = smith_normal_form([[2, 0], [0, 3]])
    assert res.divisors == (1, 6)
    res = smith_normal_form([[0, 0], [0, 0]])
    assert res.rank == 0 and res.divisors == ()
    res = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert res.divisors == (1, 1, 1)


def test_smith_normal_form_transforms_random():
    rng = random.Random(9)
    for _ in range(40):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        mat = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
        res = smith_normal_form(mat)
        # U * M * V == D
        prod = [
            [
                sum(res.U[i][k] * mat[k][j] for k in range(rows))
                for j in range(cols)
            ]
            for i in range(rows)
        ]
        prod = [
            [
                sum(prod[i][k] * res.V[k][j] for k in range(cols))
                for j in range(cols)
            ]
            for i in range(rows)
        ]
        for i in range(rows):
            for j in range(cols):
                want = res.divisors[i] if i == j and i < len(res.divisors) else 0
                assert prod[i][j] == want
        for a, b in zip(res.divisors, res.divisors[1:]):
            assert b % a == 0


def test_fg_abelian_group_arithmetic():
    grp = FgAbelianGroup(1, (2,))
    a = (3, 1)
    assert grp.op(a, grp.inv(a)) == grp.identity()
    assert grp.scale(2, a) == (6, 0)
    assert grp.order((0, 1)) == 2
    assert grp.order((1, 0)) == 0
