"""Chord diagram data model for free, flat and virtual knot diagrams.

A diagram is a circle with 2n numbered slots (endpoints) read in circle
order from slot 0, together with a perfect pairing of the slots into n
chords.  Flat chords carry a sign and an arrow, virtual chords carry a
sign and an over/under marking; the virtual arrow is derived (it points
from the over passage to the under passage for positive chords and is
reversed for negative ones).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Sequence


class ParityKitError(Exception):
    """Base class for all parity-kit errors."""


class MalformedToken(ParityKitError):
    pass


class BadPairing(ParityKitError):
    pass


class InconsistentDecoration(ParityKitError):
    pass


class UnknownChord(ParityKitError):
    pass


class WrongFlavor(ParityKitError):
    pass


class IllegalProjection(ParityKitError):
    pass


class InapplicableMove(ParityKitError):
    pass


class GroupMismatch(ParityKitError):
    pass


class MissingBasepoint(ParityKitError):
    pass


class SizeLimit(ParityKitError):
    pass


class Flavor(Enum):
    FREE = "free"
    FLAT = "flat"
    VIRTUAL = "virtual"

    @classmethod
    def from_name(cls, name: str) -> "Flavor":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise WrongFlavor("unknown flavor %r" % name) from None


_FREE_TOKEN = re.compile(r"^[A-Za-z0-9]+$")
_FLAT_TOKEN = re.compile(r"^([<>])([A-Za-z0-9]+)([+-])$")
_VIRTUAL_TOKEN = re.compile(r"^([OU])([A-Za-z0-9]+)([+-])$")


@dataclass(frozen=True)
class ChordDiagram:
    """Immutable chord diagram.

    order      -- chord label at each slot, in circle order
    signs      -- chord label -> +1/-1            (flat and virtual)
    over_slot  -- chord label -> slot of the over passage   (virtual)
    tail_slot_map -- chord label -> slot of the arrow tail  (flat)
    basepoint  -- gap index in [0, 2n) or None; gap g sits between
                  slot g and slot (g+1) mod 2n
    """

    flavor: Flavor
    order: tuple
    signs: dict = field(default_factory=dict)
    over_slot: dict = field(default_factory=dict)
    tail_slot_map: dict = field(default_factory=dict)
    basepoint: Optional[int] = None

    def __post_init__(self):
        counts = {}
        for slot, lab in enumerate(self.order):
            counts.setdefault(lab, []).append(slot)
        for lab, slots in counts.items():
            if len(slots) != 2:
                raise BadPairing(
                    "chord %r has %d endpoints, expected 2" % (lab, len(slots))
                )
        if self.flavor is Flavor.FREE:
            if self.signs or self.over_slot or self.tail_slot_map:
                raise InconsistentDecoration("free diagrams carry no decorations")
        else:
            for lab in counts:
                if self.signs.get(lab) not in (1, -1):
                    raise InconsistentDecoration("chord %r has no sign" % lab)
            if self.flavor is Flavor.VIRTUAL:
                if self.tail_slot_map:
                    raise InconsistentDecoration(
                        "virtual arrows are derived, not stored"
                    )
                for lab, slots in counts.items():
                    if self.over_slot.get(lab) not in slots:
                        raise InconsistentDecoration(
                            "chord %r has no valid over passage" % lab
                        )
            else:
                if self.over_slot:
                    raise InconsistentDecoration("flat chords have no over passage")
                for lab, slots in counts.items():
                    if self.tail_slot_map.get(lab) not in slots:
                        raise InconsistentDecoration(
                            "chord %r has no valid arrow tail" % lab
                        )
        if self.basepoint is not None:
            ngaps = max(len(self.order), 1)
            if not 0 <= self.basepoint < ngaps:
                raise BadPairing("basepoint gap %r out of range" % (self.basepoint,))

    # -- basic structure ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.order) // 2

    @property
    def num_slots(self) -> int:
        return len(self.order)

    def labels(self):
        """Chord labels in order of first appearance."""
        seen = []
        for lab in self.order:
            if lab not in seen:
                seen.append(lab)
        return tuple(seen)

    def slots_of(self, chord) -> tuple:
        slots = tuple(s for s, lab in enumerate(self.order) if lab == chord)
        if not slots:
            raise UnknownChord("no chord %r" % (chord,))
        return slots

    def sign_of(self, chord) -> int:
        if self.flavor is Flavor.FREE:
            raise WrongFlavor("free chords carry no sign")
        self.slots_of(chord)
        return self.signs[chord]

    def arrow(self, chord) -> tuple:
        """(tail slot, head slot) of the chord's arrow.

        For virtual diagrams this is the modified orientation: over to
        under for positive chords, reversed for negative ones.
        """
        p, q = self.slots_of(chord)
        if self.flavor is Flavor.FLAT:
            tail = self.tail_slot_map[chord]
        elif self.flavor is Flavor.VIRTUAL:
            over = self.over_slot[chord]
            tail = over if self.signs[chord] == 1 else (p if over == q else q)
        else:
            raise WrongFlavor("free chords carry no arrow")
        head = q if tail == p else p
        return tail, head

    def between(self, start: int, stop: int) -> tuple:
        """Slots strictly between start and stop, walking forward."""
        m = self.num_slots
        out = []
        s = (start + 1) % m
        while s != stop:
            out.append(s)
            s = (s + 1) % m
        return tuple(out)

    def rotate(self, k: int) -> "ChordDiagram":
        """Rotate slot 0 forward by k positions."""
        m = self.num_slots
        if m == 0:
            return self
        k %= m
        order = self.order[k:] + self.order[:k]
        shift = lambda s: (s - k) % m
        over = {lab: shift(s) for lab, s in self.over_slot.items()}
        tails = {lab: shift(s) for lab, s in self.tail_slot_map.items()}
        bp = None if self.basepoint is None else shift(self.basepoint)
        return ChordDiagram(self.flavor, order, dict(self.signs), over, tails, bp)

    def with_basepoint(self, gap: Optional[int]) -> "ChordDiagram":
        return ChordDiagram(
            self.flavor,
            self.order,
            dict(self.signs),
            dict(self.over_slot),
            dict(self.tail_slot_map),
            gap,
        )


@dataclass(frozen=True)
class Half:
    chord: object
    side: str
    content: tuple


@dataclass(frozen=True)
class Arc:
    start: int
    end: int
    content: tuple


def half(d: ChordDiagram, chord, side: str = "left") -> Half:
    """One of the two open arcs cut out by a chord.

    For flat and virtual diagrams the left half runs forward from the
    arrow head to the arrow tail.  Free diagrams expose only the
    slot-range sides: left runs from the first passage to the second.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if d.flavor is Flavor.FREE:
        p, q = d.slots_of(chord)
    else:
        q, p = d.arrow(chord)  # left: head -> tail
    if side == "left":
        content = d.between(p, q)
    else:
        content = d.between(q, p)
    return Half(chord, side, content)


def linked(d: ChordDiagram, a, b) -> bool:
    """True when the endpoints of a and b interleave on the circle."""
    if a == b:
        return False
    p, q = d.slots_of(a)
    inside = d.between(p, q)
    return sum(1 for s in d.slots_of(b) if s in inside) == 1


def separating_arcs(d: ChordDiagram, a, b):
    """Candidate pairs of opposite separating arcs for chords a and b.

    The four endpoints of a and b cut the circle into four arcs.  An
    arc pair qualifies when each arc connects an endpoint of a with an
    endpoint of b and the two arcs are opposite.  Unlinked chords have
    one such pair, linked chords have two.
    """
    if a == b:
        raise BadPairing("need two distinct chords")
    ends = sorted(d.slots_of(a) + d.slots_of(b))
    arcs = []
    for i in range(4):
        s, t = ends[i], ends[(i + 1) % 4]
        arcs.append(Arc(s, t, d.between(s, t)))
    pairs = []
    for i in (0, 1):
        first, second = arcs[i], arcs[i + 2]
        ok = all(
            d.order[arc.start] != d.order[arc.end] for arc in (first, second)
        )
        if ok:
            pairs.append((first, second))
    return pairs


# -- Gauss code grammar -------------------------------------------------


def _tokens_with_columns(text: str):
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", text)]


def parse_gauss_code(text: str, flavor: Flavor) -> ChordDiagram:
    """Parse a whitespace separated Gauss code of the given flavor."""
    if isinstance(flavor, str):
        flavor = Flavor.from_name(flavor)
    order = []
    signs = {}
    ends = {}  # label -> list of (slot, kind) with flavor specific kind
    star_slots = []
    for tok, col in _tokens_with_columns(text):
        if tok == "*":
            star_slots.append(len(order))
            continue
        if flavor is Flavor.FREE:
            m = _FREE_TOKEN.match(tok)
            if not m:
                raise MalformedToken(
                    "bad free token %r at column %d" % (tok, col)
                )
            lab, kind, sign = tok, None, None
        elif flavor is Flavor.FLAT:
            m = _FLAT_TOKEN.match(tok)
            if not m:
                raise MalformedToken(
                    "bad flat token %r at column %d" % (tok, col)
                )
            kind, lab, sign = m.group(1), m.group(2), m.group(3)
        else:
            m = _VIRTUAL_TOKEN.match(tok)
            if not m:
                raise MalformedToken(
                    "bad virtual token %r at column %d" % (tok, col)
                )
            kind, lab, sign = m.group(1), m.group(2), m.group(3)
        slot = len(order)
        order.append(lab)
        ends.setdefault(lab, []).append((slot, kind, sign, col))
    if len(star_slots) > 1:
        raise MalformedToken("more than one basepoint marker")
    for lab, occ in ends.items():
        if len(occ) != 2:
            raise BadPairing(
                "chord %r appears %d times, expected 2" % (lab, len(occ))
            )
    over_slot = {}
    tail_slot = {}
    if flavor is not Flavor.FREE:
        for lab, occ in ends.items():
            (s1, k1, sg1, c1), (s2, k2, sg2, c2) = occ
            if sg1 != sg2:
                raise InconsistentDecoration(
                    "chord %r carries signs %s and %s" % (lab, sg1, sg2)
                )
            signs[lab] = 1 if sg1 == "+" else -1
            if flavor is Flavor.VIRTUAL:
                if {k1, k2} != {"O", "U"}:
                    raise InconsistentDecoration(
                        "chord %r needs one O and one U passage" % lab
                    )
                over_slot[lab] = s1 if k1 == "O" else s2
            else:
                if {k1, k2} != {">", "<"}:
                    raise InconsistentDecoration(
                        "chord %r needs one > and one < passage" % lab
                    )
                tail_slot[lab] = s1 if k1 == ">" else s2
    basepoint = None
    if star_slots:
        m = len(order)
        if m == 0:
            basepoint = 0
        else:
            basepoint = (star_slots[0] - 1) % m
    return ChordDiagram(flavor, tuple(order), signs, over_slot, tail_slot, basepoint)


def serialize(d: ChordDiagram) -> str:
    """Inverse of parse_gauss_code; round trips byte-identically."""
    toks = []
    for slot, lab in enumerate(d.order):
        if d.flavor is Flavor.FREE:
            toks.append(str(lab))
        else:
            sg = "+" if d.signs[lab] == 1 else "-"
            if d.flavor is Flavor.VIRTUAL:
                kind = "O" if d.over_slot[lab] == slot else "U"
            else:
                kind = ">" if d.tail_slot_map[lab] == slot else "<"
            toks.append("%s%s%s" % (kind, lab, sg))
    if d.basepoint is not None:
        if d.num_slots:
            toks.insert((d.basepoint + 1) % d.num_slots, "*")
        else:
            toks.append("*")
    return " ".join(toks)


def project(d: ChordDiagram, target: Flavor) -> ChordDiagram:
    """Forget structure down to a strictly weaker flavor."""
    if isinstance(target, str):
        target = Flavor.from_name(target)
    rank = {Flavor.FREE: 0, Flavor.FLAT: 1, Flavor.VIRTUAL: 2}
    if rank[target] >= rank[d.flavor]:
        raise IllegalProjection(
            "cannot project %s to %s" % (d.flavor.value, target.value)
        )
    if target is Flavor.FREE:
        return ChordDiagram(Flavor.FREE, d.order, {}, {}, {}, d.basepoint)
    # virtual -> flat keeps signs, arrow becomes explicit
    tails = {lab: d.arrow(lab)[0] for lab in d.labels()}
    return ChordDiagram(Flavor.FLAT, d.order, dict(d.signs), {}, tails, d.basepoint)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    flavor: Flavor
    code: str
    diagram: ChordDiagram


def load_corpus(lines) -> list:
    """Read corpus lines of the form 'name<TAB>flavor<TAB>code'."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    entries = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise MalformedToken(
                "line %d: expected name<TAB>flavor<TAB>code" % lineno
            )
        name, flavor_name, code = parts
        flavor = Flavor.from_name(flavor_name)
        entries.append(CorpusEntry(name, flavor, code, parse_gauss_code(code, flavor)))
    return entries
