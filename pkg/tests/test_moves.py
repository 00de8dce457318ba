"""Reidemeister move detection, application, inversion, and parsing."""

import random

import pytest

from parity_kit.diagrams import (
    Flavor,
    InapplicableMove,
    parse_gauss_code,
    serialize,
)
from parity_kit.moves import (
    MoveRecord,
    R1Remove,
    R2Remove,
    apply,
    compose_correspondence,
    enumerate_moves,
    format_move,
    inverse,
    parse_move,
    r1_remove_sites,
    r2_remove_sites,
    r3_sites,
    random_walk,
)
from parity_kit.surface import genus


def test_move_text_round_trip():
    texts = [
        "R1_remove 1",
        "R1_add gap=3 side=L sign=+",
        "R2_remove 1 2",
        "R2_add gaps=0,2 pattern=nested site=1 sign=+",
        "R2_add gaps=0,1 pattern=interleaved site=2 sign=-",
        "R3 chords=1,2,3 gaps=0,2,4",
    ]
    for text in texts:
        move = parse_move(text)
        assert format_move(move) == text
        assert move.text() == text


def test_parse_move_rejects_garbage():
    with pytest.raises(Exception):
        parse_move("R9 whatever")


def test_r1_sites():
    d = parse_gauss_code("1 1 2 3 2 3", "free")
    assert r1_remove_sites(d) == [R1Remove("1")]
    kink = parse_gauss_code("O1+ U1+", "virtual")
    assert r1_remove_sites(kink) == [R1Remove("1")]


def test_r2_sites_free_interleaved_and_nested():
    assert r2_remove_sites(parse_gauss_code("1 2 1 2", "free")) == [
        R2Remove(("1", "2"))
    ]
    assert r2_remove_sites(parse_gauss_code("1 2 2 1", "free")) == [
        R2Remove(("1", "2"))
    ]


def test_r2_decorations_matter():
    # equal signs never form a legal flavored R2 pair
    d = parse_gauss_code("O1+ O2+ U1+ U2+", "virtual")
    assert r2_remove_sites(d) == []
    # opposite signs with matching arrows and a bigon face do
    ok = parse_gauss_code("O1+ O2- U2- U1+", "virtual")
    assert r2_remove_sites(ok) == [R2Remove(("1", "2"))]


def test_r2_genus_guard():
    # a clasp: the Gauss pattern and decorations fit but removal would
    # change the Carter genus, so it is not a move in the fixed surface
    d = parse_gauss_code("O1+ O2- U1+ U2-", "virtual")
    assert r2_remove_sites(d) == []


def test_r3_sites_free():
    d = parse_gauss_code("1 2 3 1 2 3", "free")
    assert len(r3_sites(d)) > 0
    for site in r3_sites(d):
        assert len(site.chords) == 3
        assert len(set(site.gaps)) == 3


def test_r3_apply_is_involution():
    d = parse_gauss_code("1 2 3 1 2 3", "free")
    site = r3_sites(d)[0]
    once = apply(d, site).target
    twice = apply(once, site).target
    assert twice.order == d.order


def test_apply_inapplicable():
    d = parse_gauss_code("1 2 1 2", "free")
    with pytest.raises(InapplicableMove):
        apply(d, R1Remove("1"))


def test_remove_add_round_trip_free():
    rng = random.Random(5)
    from parity_kit.oracle import enumerate_diagrams

    pool = list(enumerate_diagrams(3, "free"))
    for d in rng.sample(pool, 10):
        for move in enumerate_moves(d, include_adds=False):
            rec = apply(d, move)
            back = apply(rec.target, inverse(rec))
            assert _shape_eq(back.target, d)


def _shape_eq(a, b):
    """Equality up to rotation and relabeling."""
    if a.flavor is not b.flavor or a.n != b.n:
        return False
    for k in range(max(a.num_slots, 1)):
        r = a.rotate(k) if a.num_slots else a
        if _canon(r) == _canon(b):
            return True
    return False


def _canon(d):
    names = {}
    shape = []
    for i, lab in enumerate(d.order):
        if lab not in names:
            names[lab] = len(names)
        entry = [names[lab]]
        if d.flavor is not Flavor.FREE:
            entry.append(d.signs[lab])
            tail, _head = d.arrow(lab)
            entry.append(tail == i)
            if d.flavor is Flavor.VIRTUAL:
                entry.append(d.over_slot[lab] == i)
        shape.append(tuple(entry))
    return tuple(shape)


def test_flavored_moves_preserve_genus():
    rng = random.Random(8)
    from parity_kit.oracle import enumerate_diagrams

    pool = list(enumerate_diagrams(2, "virtual"))
    for d in rng.sample(pool, 25):
        g0 = genus(d)
        for move in enumerate_moves(d):
            rec = apply(d, move)
            assert genus(rec.target) == g0, (serialize(d), move.text())


def test_correspondence_and_composition():
    d = parse_gauss_code("1 1 2 3 2 3", "free")
    rec = apply(d, R1Remove("1"))
    assert rec.correspondence == {"2": "2", "3": "3"}
    assert rec.removed == ("1",)
    chain = [rec]
    rec2 = apply(rec.target, parse_move("R1_add gap=0 side=L sign=+"))
    chain.append(rec2)
    corr = compose_correspondence(chain)
    assert corr == {"2": "2", "3": "3"}


def test_random_walk_is_deterministic():
    d = parse_gauss_code("1 2 1 2", "free")
    walk1 = random_walk(d, 8, random.Random(42))
    walk2 = random_walk(d, 8, random.Random(42))
    assert [r.move.text() for r in walk1] == [r.move.text() for r in walk2]
    for rec in walk1:
        assert isinstance(rec, MoveRecord)
