"""Writhe, L_odd, linking invariants and multisets."""

import random

import pytest

from parity_kit.diagrams import WrongFlavor, parse_gauss_code
from parity_kit.invariants import (
    GroupAlgebraElement,
    l_odd,
    linking_invariant,
    linking_multiset_signed,
    linking_multisets_unsigned,
    og_linking_multisets,
    writhe,
)
from parity_kit.moves import random_walk
from parity_kit.oracle import enumerate_diagrams
from parity_kit.parity import (
    TrivialGroup,
    ParityAssignment,
    homological_parity,
    oriented_gaussian_parity,
)

VT = "O1+ O2+ U1+ U2+"


def test_writhe():
    assert writhe(parse_gauss_code("O1+ U1+", "virtual")) == 1
    assert writhe(parse_gauss_code(VT, "virtual")) == 2
    assert writhe(parse_gauss_code("O1+ U2- U1+ O2-", "virtual")) == 0
    with pytest.raises(WrongFlavor):
        writhe(parse_gauss_code("1 1", "free"))


def test_l_odd():
    assert l_odd(parse_gauss_code("1 2 1 2", "free")) == 0
    assert l_odd(parse_gauss_code("1 2 3 1 2 3", "free")) == 0
    assert l_odd(parse_gauss_code("", "free")) == 0


def test_group_algebra_drops_zeros():
    elt = GroupAlgebraElement(TrivialGroup(), {0: 0})
    assert elt.is_zero()
    elt = GroupAlgebraElement(TrivialGroup(), {0: 2})
    assert elt.coefficient(0) == 2


def test_linking_invariant_trivial_parity_vanishes():
    for code in ("O1+ U1+", VT, "O1+ U2- U1+ O2-"):
        d = parse_gauss_code(code, "virtual")
        trivial = ParityAssignment(
            d, TrivialGroup(), {lab: 0 for lab in d.labels()}, "trivial"
        )
        assert linking_invariant(d, trivial).is_zero()
        assert linking_multiset_signed(d, trivial) == []


def test_virtual_trefoil_signed_multiset():
    d = parse_gauss_code(VT, "virtual")
    hp = homological_parity(d)
    lk = linking_invariant(d, hp)
    assert sorted(lk.coeffs.values()) == [-2, 1, 1]
    assert linking_multiset_signed(d, hp) == [2]


def test_kink_signed_multiset_empty():
    d = parse_gauss_code("O1+ U1+", "virtual")
    assert linking_multiset_signed(d, homological_parity(d)) == []


def test_unsigned_multisets_fixture():
    d = parse_gauss_code("1 2 1 2", "free")
    og = oriented_gaussian_parity(d)
    assert linking_multisets_unsigned(d, og) == ([0], [0])
    assert og_linking_multisets(d) == ([0], [0])


def test_og_multisets_cross_module():
    rng = random.Random(13)
    pool = list(enumerate_diagrams(4, "free"))
    for d in rng.sample(pool, 40):
        ls_inv, ls_ni = og_linking_multisets(d)
        assert ls_ni == [l_odd(d)]
        assert ls_inv == [0]  # |E1| is always even


def test_walk_invariance_sample():
    rng = random.Random(17)
    d0 = parse_gauss_code(VT, "virtual")
    hp0 = homological_parity(d0)
    base = (
        l_odd(d0),
        linking_multiset_signed(d0, hp0),
        hp0.group.invariants(),
    )
    for _ in range(5):
        chain = random_walk(d0, 10, rng)
        d = chain[-1].target if chain else d0
        hp = homological_parity(d)
        assert (
            l_odd(d),
            linking_multiset_signed(d, hp),
            hp.group.invariants(),
        ) == base
