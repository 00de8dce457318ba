"""Reidemeister move calculus on chord diagrams.

Moves are value objects with a stable one-line textual form.  Applying
a move yields a MoveRecord carrying the source, the target, the chord
correspondence (identity on surviving labels) and the created/removed
chords.  Flat and virtual moves must respect the Carter surface: R1
needs a monogon face, R2 a bigon face with compatible decorations, R3
a triangular face (with a transitive over/under tournament for
virtual diagrams); all of them preserve the genus.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .diagrams import (
    ChordDiagram,
    Flavor,
    InapplicableMove,
    MalformedToken,
    UnknownChord,
)
from . import parity as _parity
from . import surface as _surface


# -- move kinds ---------------------------------------------------------


@dataclass(frozen=True)
class R1Remove:
    chord: str
    kind = "R1_remove"

    def text(self):
        return "R1_remove %s" % self.chord


@dataclass(frozen=True)
class R1Add:
    gap: int
    side: str = "L"  # which inserted slot carries the over passage / tail
    sign: int = 0  # +1/-1 for flat and virtual, 0 for free
    kind = "R1_add"

    def text(self):
        if self.sign:
            return "R1_add gap=%d side=%s sign=%s" % (
                self.gap,
                self.side,
                "+" if self.sign == 1 else "-",
            )
        return "R1_add gap=%d" % self.gap


@dataclass(frozen=True)
class R2Remove:
    chords: tuple
    kind = "R2_remove"

    def text(self):
        return "R2_remove %s %s" % self.chords


@dataclass(frozen=True)
class R2Add:
    gaps: tuple
    pattern: str  # "nested" or "interleaved"
    site: int = 0  # 1 or 2: site carrying both over passages (flavored)
    sign: int = 0  # sign of the first fresh chord (flavored)
    kind = "R2_add"

    def text(self):
        base = "R2_add gaps=%d,%d pattern=%s" % (self.gaps + (self.pattern,))
        if self.sign:
            base += " site=%d sign=%s" % (self.site, "+" if self.sign == 1 else "-")
        return base


@dataclass(frozen=True)
class R3Move:
    chords: tuple
    gaps: tuple
    kind = "R3"

    def text(self):
        return "R3 chords=%s gaps=%s" % (
            ",".join(self.chords),
            ",".join(str(g) for g in self.gaps),
        )


@dataclass(frozen=True)
class MoveRecord:
    move: object
    source: ChordDiagram
    target: ChordDiagram
    correspondence: dict  # source label -> target label, survivors only
    created: tuple = ()
    removed: tuple = ()


def format_move(move) -> str:
    return move.text()


_SIGNS = {"+": 1, "-": -1}


def parse_move(text: str):
    """Parse the stable one-line textual form back into a move."""
    toks = text.split()
    if not toks:
        raise MalformedToken("empty move text")
    head, rest = toks[0], toks[1:]
    opts = {}
    plain = []
    for tok in rest:
        if "=" in tok:
            key, val = tok.split("=", 1)
            opts[key] = val
        else:
            plain.append(tok)
    try:
        if head == "R1_remove":
            (chord,) = plain
            return R1Remove(chord)
        if head == "R1_add":
            return R1Add(
                int(opts["gap"]),
                opts.get("side", "L"),
                _SIGNS[opts["sign"]] if "sign" in opts else 0,
            )
        if head == "R2_remove":
            a, b = plain
            return R2Remove((a, b))
        if head == "R2_add":
            g1, g2 = (int(x) for x in opts["gaps"].split(","))
            return R2Add(
                (g1, g2),
                opts["pattern"],
                int(opts.get("site", 0)),
                _SIGNS[opts["sign"]] if "sign" in opts else 0,
            )
        if head == "R3":
            chords = tuple(opts["chords"].split(","))
            gaps = tuple(int(x) for x in opts["gaps"].split(","))
            return R3Move(chords, gaps)
    except (KeyError, ValueError) as exc:
        raise MalformedToken("bad move text %r: %s" % (text, exc)) from None
    raise MalformedToken("unknown move kind %r" % head)


# -- diagram surgery ----------------------------------------------------


def _fresh_labels(d: ChordDiagram, count: int) -> list:
    used = set(d.order)
    out = []
    k = 1
    while len(out) < count:
        lab = str(k)
        if lab not in used:
            out.append(lab)
            used.add(lab)
        k += 1
    return out


def _delete_chords(d: ChordDiagram, chords) -> ChordDiagram:
    doomed = set(chords)
    dead_slots = {s for s, lab in enumerate(d.order) if lab in doomed}
    new_index = {}
    order = []
    for s, lab in enumerate(d.order):
        if s in dead_slots:
            continue
        new_index[s] = len(order)
        order.append(lab)
    signs = {lab: sg for lab, sg in d.signs.items() if lab not in doomed}
    over = {
        lab: new_index[s] for lab, s in d.over_slot.items() if lab not in doomed
    }
    tails = {
        lab: new_index[s] for lab, s in d.tail_slot_map.items() if lab not in doomed
    }
    bp = None
    if d.basepoint is not None:
        if not order:
            bp = 0
        else:
            survivors_before = sum(
                1 for s in range(d.basepoint + 1) if s not in dead_slots
            )
            bp = (survivors_before - 1) % len(order)
    return ChordDiagram(d.flavor, tuple(order), signs, over, tails, bp)


def _insert(d: ChordDiagram, inserts) -> tuple:
    """Insert new slots.  inserts is {gap: [labels]}; each block lands
    right after the named slot.  Returns (order, placed) where placed
    maps each inserted label occurrence to its new slot, as
    {label: [slots in block order]}."""
    m = d.num_slots
    order = []
    placed = {}
    new_index = {}
    if m == 0:
        for lab in inserts.get(0, []):
            placed.setdefault(lab, []).append(len(order))
            order.append(lab)
        return order, placed, new_index
    for s in range(m):
        new_index[s] = len(order)
        order.append(d.order[s])
        for lab in inserts.get(s, []):
            placed.setdefault(lab, []).append(len(order))
            order.append(lab)
    return order, placed, new_index


def _rebuild_after_insert(d, order, placed, new_index, signs_new, over_new, tails_new):
    signs = {lab: sg for lab, sg in d.signs.items()}
    signs.update(signs_new)
    over = {lab: new_index[s] for lab, s in d.over_slot.items()}
    over.update(over_new)
    tails = {lab: new_index[s] for lab, s in d.tail_slot_map.items()}
    tails.update(tails_new)
    bp = None
    if d.basepoint is not None:
        bp = new_index[d.basepoint] if d.num_slots else 0
    return ChordDiagram(d.flavor, tuple(order), signs, over, tails, bp)


def _swap_slots(d: ChordDiagram, swaps) -> ChordDiagram:
    """Swap the contents of slot pairs; swaps is a list of (s, t)."""
    perm = {s: s for s in range(d.num_slots)}
    for s, t in swaps:
        perm[s], perm[t] = perm[t], perm[s]
    # perm maps new slot -> old slot; invert for decoration transport
    inv = {old: new for new, old in perm.items()}
    order = tuple(d.order[perm[s]] for s in range(d.num_slots))
    over = {lab: inv[s] for lab, s in d.over_slot.items()}
    tails = {lab: inv[s] for lab, s in d.tail_slot_map.items()}
    return ChordDiagram(d.flavor, order, dict(d.signs), over, tails, d.basepoint)


# -- site detection -----------------------------------------------------


def _adjacency_gap(d: ChordDiagram, chord):
    """Gap g with both ends of the chord at slots g, g+1, if any."""
    m = d.num_slots
    for g in range(m):
        if d.order[g] == chord and d.order[(g + 1) % m] == chord:
            return g
    return None


def _monogon_faces(d: ChordDiagram):
    return {
        face.corners[0][0]
        for face in _surface.trace_faces(d).faces
        if len(face.darts) == 1
    }


def _bigon_faces(d: ChordDiagram):
    """{frozenset of 2 gaps: (chord a, chord b)} for bigon faces."""
    out = {}
    for face in _surface.trace_faces(d).faces:
        if len(face.darts) != 2:
            continue
        gaps = frozenset(g for g, _s in face.darts)
        chords = tuple(lab for lab, _e in face.corners)
        if len(gaps) == 2 and len(set(chords)) == 2:
            out[gaps] = chords
    return out


def r1_remove_sites(d: ChordDiagram) -> list:
    sites = []
    monogons = _monogon_faces(d) if d.flavor is not Flavor.FREE else None
    for chord in d.labels():
        if _adjacency_gap(d, chord) is None:
            continue
        if monogons is not None and chord not in monogons:
            continue
        if not _removal_preserves_genus(d, (chord,)):
            continue
        sites.append(R1Remove(chord))
    return sites


def _r2_pattern_at(d: ChordDiagram, g1: int, g2: int):
    """(a, b, pattern) when gaps g1 < g2 hold the four ends of two
    chords in an R2 pattern, else None."""
    m = d.num_slots
    slots = (g1, (g1 + 1) % m, g2, (g2 + 1) % m)
    if len(set(slots)) != 4:
        return None
    a, b = d.order[slots[0]], d.order[slots[1]]
    if a == b:
        return None
    second = (d.order[slots[2]], d.order[slots[3]])
    if second == (a, b):
        return a, b, "interleaved"
    if second == (b, a):
        return a, b, "nested"
    return None


def _r2_decorations_ok(d: ChordDiagram, a, b, g1, g2) -> bool:
    if d.flavor is Flavor.FREE:
        return True
    if d.signs[a] != -d.signs[b]:
        return False
    m = d.num_slots
    site1 = {g1, (g1 + 1) % m}
    tail_a, _ = d.arrow(a)
    _, head_b = d.arrow(b)
    # modified arrows antiparallel: a's tail shares a site with b's head
    return (tail_a in site1) == (head_b in site1)


def _removal_preserves_genus(d: ChordDiagram, chords) -> bool:
    """Deleting `chords` must not change the Carter surface genus; a bigon
    whose two outer sides lie on the same face would destroy a handle."""
    if d.flavor is Flavor.FREE:
        return True
    return _surface.genus(_delete_chords(d, list(chords))) == _surface.genus(d)


def r2_remove_sites(d: ChordDiagram) -> list:
    m = d.num_slots
    sites = []
    bigons = _bigon_faces(d) if d.flavor is not Flavor.FREE else None
    seen = set()
    for g1 in range(m):
        for g2 in range(g1 + 1, m):
            hit = _r2_pattern_at(d, g1, g2)
            if hit is None:
                continue
            a, b, _pattern = hit
            if not _r2_decorations_ok(d, a, b, g1, g2):
                continue
            if bigons is not None and frozenset((g1, g2)) not in bigons:
                continue
            key = frozenset((a, b))
            if key in seen:
                continue
            if not _removal_preserves_genus(d, (a, b)):
                continue
            seen.add(key)
            sites.append(R2Remove((a, b)))
    return sites


def _r2_site_gaps(d: ChordDiagram, a, b):
    """The gap pair realizing the R2 pattern for chords a, b."""
    m = d.num_slots
    for g1 in range(m):
        for g2 in range(g1 + 1, m):
            hit = _r2_pattern_at(d, g1, g2)
            if hit and set(hit[:2]) == {a, b}:
                if _r2_decorations_ok(d, hit[0], hit[1], g1, g2):
                    if d.flavor is not Flavor.FREE and frozenset(
                        (g1, g2)
                    ) not in _bigon_faces(d):
                        continue
                    if not _removal_preserves_genus(d, (a, b)):
                        continue
                    return hit[0], hit[1], g1, g2
    return None


def _triangle_tournament_transitive(d: ChordDiagram, face) -> bool:
    """The three face edges are strands; each corner crossing orients
    its two incident edges over/under.  Legal virtual R3 needs one
    strand above both others."""
    m = d.num_slots
    wins = {g: 0 for g, _s in face.darts}
    k = len(face.darts)
    for i in range(k):
        dart = face.darts[i]
        nxt = face.darts[(i + 1) % k]
        arrive = _surface._head_slot(dart, m)
        depart = _surface._emanate_slot(nxt, m)
        chord = d.order[arrive]
        over = d.over_slot[chord]
        gap_in, gap_out = dart[0], nxt[0]
        if over == arrive:
            wins[gap_in] += 1
        elif over == depart:
            wins[gap_out] += 1
    return sorted(wins.values()) == [0, 1, 2]


def r3_sites(d: ChordDiagram) -> list:
    sites = []
    if d.flavor is Flavor.FREE:
        for poly in _parity.free_triangle_sites(d):
            chords = tuple(sorted(poly.chords, key=lambda c: d.slots_of(c)[0]))
            sites.append(R3Move(chords, tuple(sorted(poly.gaps))))
    else:
        for face in _surface.trace_faces(d).faces:
            if len(face.darts) != 3:
                continue
            gaps = tuple(sorted({g for g, _s in face.darts}))
            chords = {lab for lab, _e in face.corners}
            if len(gaps) != 3 or len(chords) != 3:
                continue
            if d.flavor is Flavor.VIRTUAL and not _triangle_tournament_transitive(
                d, face
            ):
                continue
            ordered = tuple(sorted(chords, key=lambda c: d.slots_of(c)[0]))
            sites.append(R3Move(ordered, gaps))
    # deduplicate (distinct faces can cover the same gap set only if equal)
    out = []
    seen = set()
    for site in sites:
        if site.gaps not in seen:
            seen.add(site.gaps)
            out.append(site)
    return out


# -- applying moves -----------------------------------------------------


def _identity_corr(d: ChordDiagram, removed=()):
    return {lab: lab for lab in d.labels() if lab not in removed}


def _apply_r1_remove(d, move):
    if move not in r1_remove_sites(d):
        raise InapplicableMove(move.text())
    target = _delete_chords(d, [move.chord])
    return MoveRecord(
        move, d, target, _identity_corr(d, {move.chord}), removed=(move.chord,)
    )


def _apply_r2_remove(d, move):
    a, b = move.chords
    for lab in (a, b):
        if lab not in d.order:
            raise UnknownChord(lab)
    hit = _r2_site_gaps(d, a, b)
    if hit is None:
        raise InapplicableMove(move.text())
    target = _delete_chords(d, [a, b])
    return MoveRecord(move, d, target, _identity_corr(d, {a, b}), removed=(a, b))


def _apply_r3(d, move):
    for site in r3_sites(d):
        if set(site.gaps) == set(move.gaps):
            break
    else:
        raise InapplicableMove(move.text())
    m = d.num_slots
    target = _swap_slots(d, [(g, (g + 1) % m) for g in sorted(set(move.gaps))])
    return MoveRecord(move, d, target, _identity_corr(d))


def _apply_r1_add(d, move, validate=True):
    m = d.num_slots
    gap = move.gap
    if gap < 0 or gap >= max(m, 1):
        raise InapplicableMove(move.text())
    if d.flavor is not Flavor.FREE and move.sign not in (1, -1):
        raise InapplicableMove("flavored R1_add needs a sign")
    (lab,) = _fresh_labels(d, 1)
    order, placed, new_index = _insert(d, {gap: [lab]* 2})
    s1, s2 = placed[lab]
    signs_new, over_new, tails_new = {}, {}, {}
    if d.flavor is not Flavor.FREE:
        signs_new[lab] = move.sign
        deco = s1 if move.side == "L" else s2
        if d.flavor is Flavor.VIRTUAL:
            over_new[lab] = deco
        else:
            tails_new[lab] = deco
    target = _rebuild_after_insert(d, order, placed, new_index,
                                   signs_new, over_new, tails_new)
    record = MoveRecord(move, d, target, _identity_corr(d), created=(lab,))
    if validate and d.flavor is not Flavor.FREE:
        if lab not in {s.chord for s in r1_remove_sites(target)}:
            raise InapplicableMove("no monogon face at %s" % move.text())
        if _surface.genus(target) != _surface.genus(d):
            raise InapplicableMove("genus change at %s" % move.text())
    return record


def _apply_r2_add(d, move, validate=True):
    m = d.num_slots
    g1, g2 = move.gaps
    if not (0 <= g1 <= g2 < max(m, 1)):
        raise InapplicableMove(move.text())
    if move.pattern not in ("nested", "interleaved"):
        raise InapplicableMove(move.text())
    if d.flavor is not Flavor.FREE and (
        move.sign not in (1, -1) or move.site not in (1, 2)
    ):
        raise InapplicableMove("flavored R2_add needs site and sign")
    a, b = _fresh_labels(d, 2)
    if g1 == g2:
        block = [a, b, b, a] if move.pattern == "nested" else [a, b, a, b]
        inserts = {g1: block}
    else:
        second = [b, a] if move.pattern == "nested" else [a, b]
        inserts = {g1: [a, b], g2: second}
    order, placed, new_index = _insert(d, inserts)
    # site 1 holds the first two inserted slots, site 2 the other two
    site_slots = {
        a: {1: placed[a][0], 2: placed[a][1]},
        b: {1: placed[b][0], 2: placed[b][1]},
    }
    signs_new, over_new, tails_new = {}, {}, {}
    if d.flavor is not Flavor.FREE:
        signs_new[a], signs_new[b] = move.sign, -move.sign
        if d.flavor is Flavor.VIRTUAL:
            over_new[a] = site_slots[a][move.site]
            over_new[b] = site_slots[b][move.site]
        else:
            for lab in (a, b):
                site = move.site if signs_new[lab] == 1 else 3 - move.site
                tails_new[lab] = site_slots[lab][site]
    target = _rebuild_after_insert(d, order, placed, new_index,
                                   signs_new, over_new, tails_new)
    record = MoveRecord(move, d, target, _identity_corr(d), created=(a, b))
    if validate and d.flavor is not Flavor.FREE:
        if _r2_site_gaps(target, a, b) is None:
            raise InapplicableMove("no removable bigon at %s" % move.text())
        if _surface.genus(target) != _surface.genus(d):
            raise InapplicableMove("genus change at %s" % move.text())
    return record


def apply(d: ChordDiagram, move) -> MoveRecord:
    """Apply a move, validating its site, and record the correspondence."""
    if isinstance(move, R1Remove):
        return _apply_r1_remove(d, move)
    if isinstance(move, R2Remove):
        return _apply_r2_remove(d, move)
    if isinstance(move, R3Move):
        return _apply_r3(d, move)
    if isinstance(move, R1Add):
        return _apply_r1_add(d, move)
    if isinstance(move, R2Add):
        return _apply_r2_add(d, move)
    raise InapplicableMove("unknown move %r" % (move,))


def inverse(record: MoveRecord):
    """The move that undoes the record, applicable to record.target."""
    move, src, tgt = record.move, record.source, record.target
    if isinstance(move, (R1Add, R2Add)):
        if isinstance(move, R1Add):
            return R1Remove(record.created[0])
        return R2Remove(record.created)
    if isinstance(move, R3Move):
        return R3Move(move.chords, move.gaps)
    m = src.num_slots
    dead = {s for s, lab in enumerate(src.order) if lab in record.removed}

    def target_gap_before(slot):
        if tgt.num_slots == 0:
            return 0
        survivors = sum(1 for s in range(slot) if s not in dead)
        return (survivors - 1) % tgt.num_slots

    if isinstance(move, R1Remove):
        chord = move.chord
        g = _adjacency_gap(src, chord)
        first = g
        side, sign = "L", 0
        if src.flavor is not Flavor.FREE:
            sign = src.signs[chord]
            deco = (
                src.over_slot[chord]
                if src.flavor is Flavor.VIRTUAL
                else src.tail_slot_map[chord]
            )
            side = "L" if deco == first else "R"
        return R1Add(target_gap_before(g), side, sign)
    if isinstance(move, R2Remove):
        hit = _r2_site_gaps(src, *move.chords)
        a, b, g1, g2 = hit
        pattern = _r2_pattern_at(src, g1, g2)[2]
        site, sign = 0, 0
        if src.flavor is not Flavor.FREE:
            sign = src.signs[a]
            msl = src.num_slots
            site1 = {g1, (g1 + 1) % msl}
            if src.flavor is Flavor.VIRTUAL:
                site = 1 if src.over_slot[a] in site1 else 2
            else:
                tail_site = 1 if src.tail_slot_map[a] in site1 else 2
                site = tail_site if sign == 1 else 3 - tail_site
        ng1, ng2 = sorted((target_gap_before(g1), target_gap_before(g2)))
        return R2Add((ng1, ng2), pattern, site, sign)
    raise InapplicableMove("cannot invert %r" % (move,))


# -- enumeration and walks ----------------------------------------------


def _r1_add_variants(d):
    if d.flavor is Flavor.FREE:
        return [("L", 0)]
    return [(side, sign) for side in ("L", "R") for sign in (1, -1)]


def _r2_add_variants(d):
    if d.flavor is Flavor.FREE:
        return [(0, 0)]
    return [(site, sign) for site in (1, 2) for sign in (1, -1)]


def enumerate_moves(d: ChordDiagram, include_adds: bool = True) -> list:
    """All applicable removing/reordering moves plus the generating
    list of adding moves (validated for flavored diagrams)."""
    moves = []
    moves.extend(r1_remove_sites(d))
    moves.extend(r2_remove_sites(d))
    moves.extend(r3_sites(d))
    if not include_adds:
        return moves
    ngaps = max(d.num_slots, 1)
    for gap in range(ngaps):
        for side, sign in _r1_add_variants(d):
            move = R1Add(gap, side, sign)
            try:
                _apply_r1_add(d, move)
            except InapplicableMove:
                continue
            moves.append(move)
    for g1 in range(ngaps):
        for g2 in range(g1, ngaps):
            for pattern in ("nested", "interleaved"):
                for site, sign in _r2_add_variants(d):
                    move = R2Add((g1, g2), pattern, site, sign)
                    try:
                        _apply_r2_add(d, move)
                    except InapplicableMove:
                        continue
                    moves.append(move)
    return moves


def random_walk(d: ChordDiagram, steps: int, rng, max_chords: int = 12) -> list:
    """Deterministic random chain of legal moves; rng is a seed or a
    random.Random.  Add moves are rejection-sampled to keep larger
    diagrams affordable."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    records = []
    current = d
    for _ in range(steps):
        candidates = list(
            r1_remove_sites(current)
            + r2_remove_sites(current)
            + r3_sites(current)
        )
        adds = []
        if current.n < max_chords:
            ngaps = max(current.num_slots, 1)
            for _attempt in range(30):
                if rng.random() < 0.5:
                    side, sign = rng.choice(_r1_add_variants(current))
                    move = R1Add(rng.randrange(ngaps), side, sign)
                else:
                    g1, g2 = sorted(
                        (rng.randrange(ngaps), rng.randrange(ngaps))
                    )
                    pattern = rng.choice(("nested", "interleaved"))
                    site, sign = rng.choice(_r2_add_variants(current))
                    move = R2Add((g1, g2), pattern, site, sign)
                try:
                    apply(current, move)
                except InapplicableMove:
                    continue
                adds.append(move)
                if len(adds) >= 4:
                    break
        candidates.extend(adds)
        if not candidates:
            break
        move = rng.choice(candidates)
        record = apply(current, move)
        records.append(record)
        current = record.target
    return records


def compose_correspondence(records) -> dict:
    """Composite source-to-final correspondence along a chain."""
    if not records:
        return {}
    corr = dict(records[0].correspondence)
    for rec in records[1:]:
        corr = {
            src: rec.correspondence[mid]
            for src, mid in corr.items()
            if mid in rec.correspondence
        }
    return corr
