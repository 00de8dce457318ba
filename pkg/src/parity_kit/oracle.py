"""Brute-force oracles.

Everything here is deliberately written from scratch against the
definitions, sharing no logic with the main modules beyond the data
model, so the two implementations can check each other.
"""

from __future__ import annotations

from itertools import product

from .diagrams import ChordDiagram, Flavor, SizeLimit
from . import moves as _moves
from . import parity as _parity


def enumerate_diagrams(n: int, flavor: Flavor, decorations: str = "all"):
    """Yield every diagram with n chords of the flavor.

    decorations: "all" ranges over every sign and over/arrow choice,
    "positive" fixes all signs to +1.  Limited to n <= 6.
    """
    if isinstance(flavor, str):
        flavor = Flavor.from_name(flavor)
    if n > 6:
        raise SizeLimit("refusing to enumerate beyond 6 chords")
    if n == 0:
        yield ChordDiagram(flavor, ())
        return
    for pairing in _perfect_matchings(2 * n):
        order = [None] * (2 * n)
        for idx, (p, q) in enumerate(pairing, 1):
            order[p] = order[q] = str(idx)
        labels = [str(i) for i in range(1, n + 1)]
        signs_range = [(1,)] * n if decorations == "positive" else [(1, -1)] * n
        deco_range = [(0, 1)] * n  # which end carries the over passage / tail
        if flavor is Flavor.FREE:
            yield ChordDiagram(flavor, tuple(order))
            continue
        for signs in product(*signs_range):
            for deco in product(*deco_range):
                sign_map = dict(zip(labels, signs))
                slot_map = {
                    lab: pairing[i][which]
                    for i, (lab, which) in enumerate(zip(labels, deco))
                }
                if flavor is Flavor.VIRTUAL:
                    yield ChordDiagram(
                        flavor, tuple(order), sign_map, slot_map, {}
                    )
                else:
                    yield ChordDiagram(
                        flavor, tuple(order), sign_map, {}, slot_map
                    )


def _perfect_matchings(m: int):
    """All perfect matchings of range(m), pairing the least free slot first."""
    slots = list(range(m))

    def rec(avail):
        if not avail:
            yield []
            return
        first = avail[0]
        for j in range(1, len(avail)):
            rest = avail[1:j] + avail[j + 1 :]
            for tail in rec(rest):
                yield [(first, avail[j])] + tail

    return rec(slots)


def count_diagrams(n: int) -> int:
    """(2n-1)!! pairings of 2n endpoints."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


# -- independent classification ----------------------------------------


def oracle_gaussian_parity(d: ChordDiagram, chord) -> int:
    p, q = d.slots_of(chord)
    lo, hi = min(p, q), max(p, q)
    return (hi - lo - 1) % 2


def oracle_linked(d: ChordDiagram, a, b) -> bool:
    pa, qa = sorted(d.slots_of(a))
    pb, qb = sorted(d.slots_of(b))
    return (pa < pb < qa) != (pa < qb < qa)


def oracle_classify(d: ChordDiagram) -> dict:
    """Chord classes recomputed literally from the paper's definitions."""
    labels = list(d.labels())
    gp = {lab: oracle_gaussian_parity(d, lab) for lab in labels}
    classes = {}
    odd = [lab for lab in labels if gp[lab]]
    for lab in labels:
        if not gp[lab]:
            count = sum(1 for o in odd if oracle_linked(d, lab, o))
            classes[lab] = "E1" if count % 2 else "E0"
    if not odd:
        return classes
    # same-class relation from the arc rule, all pairs
    same = {(a, a): True for a in odd}
    for i, a in enumerate(odd):
        for b in odd[i + 1 :]:
            same[(a, b)] = same[(b, a)] = _oracle_same_class(d, a, b, gp)
    # verify it is an equivalence with at most two classes before using it
    for a in odd:
        for b in odd:
            for c in odd:
                if same[(a, b)] and same[(b, c)] and not same[(a, c)]:
                    raise AssertionError("odd-class relation is not transitive")
                if not same[(a, b)] and not same[(b, c)] and not same[(a, c)]:
                    raise AssertionError("more than two odd classes")
    anchor = min(odd, key=lambda lab: min(d.slots_of(lab)))
    for lab in odd:
        classes[lab] = "O'" if same[(anchor, lab)] else "O''"
    return classes


def _oracle_same_class(d: ChordDiagram, a, b, gp) -> bool:
    m = d.num_slots
    ends = sorted(d.slots_of(a) + d.slots_of(b))
    results = []
    for i in range(4):
        s, t = ends[i], ends[(i + 1) % 4]
        u, v = ends[(i + 2) % 4], ends[(i + 3) % 4]
        if d.order[s] == d.order[t] or d.order[u] == d.order[v]:
            continue  # arc bounded by a single chord: not separating
        arc1 = _strictly_between(s, t, m)
        arc2 = _strictly_between(u, v, m)
        k_e = sum(1 for x in arc1 if gp[d.order[x]] == 0)
        l_o = sum(1 for x in arc2 if gp[d.order[x]] == 1)
        results.append((k_e + l_o) % 2 == 1)
    if not results or len(set(results)) != 1:
        raise AssertionError("arc rule inconsistent for %r, %r" % (a, b))
    return results[0]


def _strictly_between(s, t, m):
    out = []
    x = (s + 1) % m
    while x != t:
        out.append(x)
        x = (x + 1) % m
    return out


# -- independent face counting -----------------------------------------


def oracle_face_count(d: ChordDiagram) -> int:
    """Count Carter-surface faces by walking edge sides directly.

    Edge sides are numbered 0..4n-1 as side = 2*gap + (0 if walking the
    gap forward).  At each slot the next side is looked up from the
    quadrant table of the crossing, rebuilt here from the angles."""
    m = d.num_slots
    if m == 0:
        return 0
    # angle of each emanating connection, per slot
    # first passage: out at 0, in at 180; partner passage depends on the
    # frame of the modified arrow (always positively oriented)
    angle_out = {}
    angle_in = {}
    for lab in d.labels():
        p1, p2 = d.slots_of(lab)
        tail, _head = d.arrow(lab)
        if tail == p1:
            angle_out[p1], angle_in[p1] = 0, 180
            angle_out[p2], angle_in[p2] = 90, 270
        else:
            angle_out[p1], angle_in[p1] = 0, 180
            angle_out[p2], angle_in[p2] = 270, 90
    visited = set()
    faces = 0
    for start_gap in range(m):
        for start_dir in (0, 1):
            if (start_gap, start_dir) in visited:
                continue
            faces += 1
            gap, direction = start_gap, start_dir
            while (gap, direction) not in visited:
                visited.add((gap, direction))
                # arrive at a slot
                slot = (gap + 1) % m if direction == 0 else gap
                # reversed side of this edge emanates at the arrival slot
                rev_angle = angle_out[slot] if direction == 1 else angle_in[slot]
                # the next side is the emanating connection that is next
                # counterclockwise around the crossing
                lab = d.order[slot]
                cands = []
                for s in d.slots_of(lab):
                    cands.append((angle_out[s], s, "out"))
                    cands.append((angle_in[s], s, "in"))
                cands.sort()
                idx = next(i for i, c in enumerate(cands) if c[0] == rev_angle)
                _ang, nslot, nkind = cands[(idx + 1) % 4]
                if nkind == "out":
                    gap, direction = nslot, 0
                else:
                    gap, direction = (nslot - 1) % m, 1
    return faces


def oracle_genus(d: ChordDiagram) -> int:
    return (2 + d.n - oracle_face_count(d)) // 2


# -- axiom sweeps -------------------------------------------------------


def verify_class_consistency(d: ChordDiagram) -> list:
    """Cross-check the fast classifier against the literal one and the
    equivalence-relation requirements.  Returns a list of complaints."""
    problems = []
    try:
        literal = oracle_classify(d)
    except AssertionError as exc:
        return ["oracle: %s" % exc]
    fast = {lab: c.value for lab, c in _parity.classify_chords(d).items()}
    if fast != literal:
        problems.append("classification mismatch: %r vs %r" % (fast, literal))
    return problems


def verify_parity_axioms(d: ChordDiagram, parity_name: str,
                         include_adds: bool = True) -> list:
    """Check P0-P3+ for the named parity across every enumerated move.
    Returns a list of failure descriptions."""
    mode = "unoriented" if parity_name in ("gaussian", "gp") else "oriented"
    failures = []
    src = _parity.parity_assignment(d, parity_name)
    for move in _moves.enumerate_moves(d, include_adds=include_adds):
        record = _moves.apply(d, move)
        tgt = _parity.parity_assignment(record.target, parity_name)
        report = _parity.check_axioms(record, src, tgt, mode=mode)
        for fail in report.failures:
            failures.append(
                "%s | %s | %s %s"
                % (move.text(), fail.axiom, fail.detail, parity_name)
            )
    return failures
