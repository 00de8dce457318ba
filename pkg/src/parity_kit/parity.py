"""Parity functors on chord diagrams.

Implements the Gaussian parity, the universal oriented Gaussian parity
with values in Z4 (chord classes E0, E1, O', O''), the index parity of
flat and virtual diagrams, and the parity axioms P0-P3+ checked across
Reidemeister moves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .diagrams import (
    ChordDiagram,
    Flavor,
    GroupMismatch,
    ParityKitError,
    WrongFlavor,
    half,
    linked,
    separating_arcs,
)
from . import surface as _surface
from .surface import FgAbelianGroup


class ConsistencyError(ParityKitError):
    """An internal invariant of the theory failed on concrete data."""


# -- coefficient groups -------------------------------------------------


class CoefficientGroup:
    """Additive protocol shared by all coefficient groups."""

    def identity(self):
        raise NotImplementedError

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def scale(self, k, a):
        out = self.identity()
        step = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            out = self.op(out, step)
        return out

    def is_identity(self, a):
        return a == self.identity()

    def order(self, a):
        raise NotImplementedError


@dataclass(frozen=True)
class TrivialGroup(CoefficientGroup):
    def identity(self):
        return 0

    def op(self, a, b):
        return 0

    def inv(self, a):
        return 0

    def order(self, a):
        return 1


@dataclass(frozen=True)
class CyclicGroup(CoefficientGroup):
    modulus: int

    def identity(self):
        return 0

    def op(self, a, b):
        return (a + b) % self.modulus

    def inv(self, a):
        return (-a) % self.modulus

    def order(self, a):
        from math import gcd

        a %= self.modulus
        return self.modulus // gcd(self.modulus, a) if a else 1


@dataclass(frozen=True)
class Z4WithClasses(CoefficientGroup):
    """Z4 carrying the chord-class dictionary E0=0, E1=2, O'=1, O''=3.

    The labeling of the two odd classes is not canonical; O' is anchored
    to the odd chord whose first passage comes earliest on the circle.
    """

    labeling_canonical: bool = False

    def identity(self):
        return 0

    def op(self, a, b):
        return (a + b) % 4

    def inv(self, a):
        return (-a) % 4

    def order(self, a):
        return {0: 1, 1: 4, 2: 2, 3: 4}[a % 4]


@dataclass(frozen=True)
class IntegerGroup(CoefficientGroup):
    def identity(self):
        return 0

    def op(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def order(self, a):
        return 1 if a == 0 else 0


Z2 = CyclicGroup(2)


@dataclass(frozen=True)
class ParityAssignment:
    diagram: ChordDiagram
    group: object
    values: dict  # chord label -> group element
    name: str = ""


# -- Gaussian parity and chord classes ----------------------------------


class ChordClass(Enum):
    E0 = "E0"
    E1 = "E1"
    O_PRIME = "O'"
    O_DOUBLE_PRIME = "O''"

    @property
    def z4(self) -> int:
        return {"E0": 0, "E1": 2, "O'": 1, "O''": 3}[self.value]


def gaussian_parity(d: ChordDiagram, chord) -> int:
    """Number of chord ends inside either half, mod 2."""
    p, q = d.slots_of(chord)
    return len(d.between(p, q)) % 2


def gaussian_parity_assignment(d: ChordDiagram) -> ParityAssignment:
    values = {lab: gaussian_parity(d, lab) for lab in d.labels()}
    return ParityAssignment(d, Z2, values, "gaussian")


def _same_odd_class(d: ChordDiagram, a, b, gp) -> bool:
    """Paper's arc rule: a, b odd; same class iff k_e + l_o + 1 is even.

    k_e counts even-chord ends on one separating arc, l_o counts odd
    ends on the opposite arc.  All admissible arc pairs in both
    orientations must agree; disagreement is a theory violation.
    """
    results = set()
    for arc1, arc2 in separating_arcs(d, a, b):
        for x, y in ((arc1, arc2), (arc2, arc1)):
            k_e = sum(1 for s in x.content if gp[d.order[s]] == 0)
            l_o = sum(1 for s in y.content if gp[d.order[s]] == 1)
            results.add((k_e + l_o + 1) % 2)
    if len(results) != 1:
        raise ConsistencyError(
            "odd-class rule disagrees between arcs for chords %r, %r" % (a, b)
        )
    return results.pop() == 0


def classify_chords(d: ChordDiagram) -> dict:
    """Chord class (E0, E1, O', O'') of every chord."""
    labels = d.labels()
    gp = {lab: gaussian_parity(d, lab) for lab in labels}
    odd = [lab for lab in labels if gp[lab]]
    odd.sort(key=lambda lab: d.slots_of(lab)[0])
    classes = {}
    for lab in labels:
        if gp[lab] == 0:
            linked_odd = sum(1 for o in odd if linked(d, lab, o))
            classes[lab] = ChordClass.E1 if linked_odd % 2 else ChordClass.E0
    if odd:
        rep = odd[0]
        classes[rep] = ChordClass.O_PRIME
        for lab in odd[1:]:
            same = _same_odd_class(d, rep, lab, gp)
            classes[lab] = ChordClass.O_PRIME if same else ChordClass.O_DOUBLE_PRIME
    return classes


def oriented_gaussian_parity(d: ChordDiagram) -> ParityAssignment:
    """The universal oriented parity of a free diagram, valued in Z4.

    Diagrams without odd chords take values in the trivial group; the
    Z4 labeling of the odd classes is anchored, not canonical.
    """
    classes = classify_chords(d)
    if all(c in (ChordClass.E0, ChordClass.E1) for c in classes.values()):
        grp = TrivialGroup()
        return ParityAssignment(d, grp, {lab: 0 for lab in classes}, "og")
    grp = Z4WithClasses()
    return ParityAssignment(d, grp, {lab: c.z4 for lab, c in classes.items()}, "og")


def index_parity(d: ChordDiagram, chord) -> int:
    """Count of linked arrows with head in the left half minus those with tail there.

    The crossing sign is already absorbed into the modified-arrow direction, so
    each linked chord contributes exactly +1 (head inside) or -1 (tail inside);
    this reproduces the algebraic intersection number of the two half-loops.
    """
    if d.flavor is Flavor.FREE:
        raise WrongFlavor("index parity needs signs and arrows")
    left = set(half(d, chord, "left").content)
    total = 0
    for other in d.labels():
        if other == chord or not linked(d, chord, other):
            continue
        _tail, head = d.arrow(other)
        total += 1 if head in left else -1
    return total


def index_parity_assignment(d: ChordDiagram) -> ParityAssignment:
    values = {lab: index_parity(d, lab) for lab in d.labels()}
    return ParityAssignment(d, IntegerGroup(), values, "index")


def homological_parity(d: ChordDiagram) -> ParityAssignment:
    grp, values = _surface.homology_group(d)
    return ParityAssignment(d, grp, values, "homological")


def parity_assignment(d: ChordDiagram, name: str) -> ParityAssignment:
    if name in ("gaussian", "gp"):
        return gaussian_parity_assignment(d)
    if name in ("og", "oriented_gaussian"):
        return oriented_gaussian_parity(d)
    if name in ("index", "ip"):
        return index_parity_assignment(d)
    if name in ("homological", "hp"):
        return homological_parity(d)
    raise ValueError("unknown parity %r" % name)


# -- polygons -----------------------------------------------------------


@dataclass(frozen=True)
class Polygon:
    """Closed walk along chords with adjacent hop gaps between them.

    steps[i] = (chord, entry slot, exit slot); hop i runs from exit i
    through gaps[i] to entry i+1, with direction dirs[i] = +1 when it
    follows the circle orientation.
    """

    steps: tuple
    gaps: tuple
    dirs: tuple

    @property
    def chords(self):
        return tuple(s[0] for s in self.steps)

    def epsilons(self) -> dict:
        """Incidence index of each chord: +1 when the incoming and
        outgoing hops run the same way around the circle."""
        eps = {}
        k = len(self.steps)
        for i, (chord, _e, _x) in enumerate(self.steps):
            eps[chord] = 1 if self.dirs[(i - 1) % k] == self.dirs[i] else -1
        return eps


def _canonical_polygon_key(steps, gaps):
    k = len(steps)
    variants = []
    # all rotations of the forward traversal
    for r in range(k):
        rot_steps = steps[r:] + steps[:r]
        rot_gaps = gaps[r:] + gaps[:r]
        variants.append((tuple(rot_steps), tuple(rot_gaps)))
    # reversed traversal: walk the chords backwards
    rev_steps = [(c, x, e) for (c, e, x) in reversed(steps)]
    rev_gaps = [gaps[(k - 2 - j) % k] for j in range(k)]
    for r in range(k):
        rot_steps = rev_steps[r:] + rev_steps[:r]
        rot_gaps = rev_gaps[r:] + rev_gaps[:r]
        variants.append((tuple(rot_steps), tuple(rot_gaps)))
    return min(variants)


def polygons(d: ChordDiagram, max_len: int) -> list:
    """All polygons with up to max_len distinct chords, deduplicated up
    to rotation and reversal of the traversal."""
    m = d.num_slots
    if m == 0:
        return []
    found = {}
    for start in range(m):
        # DFS over traversals beginning with the chord entered at start
        stack = [([(d.order[start], start, _other_end(d, start))], [], [])]
        while stack:
            steps, gaps, dirs = stack.pop()
            exit_slot = steps[-1][2]
            for direction in (1, -1):
                nxt = (exit_slot + direction) % m
                gap = exit_slot if direction == 1 else (exit_slot - 1) % m
                if nxt == start:
                    key = _canonical_polygon_key(
                        steps, gaps + [gap]
                    )
                    if key not in found:
                        poly = Polygon(
                            tuple(steps), tuple(gaps + [gap]), tuple(dirs + [direction])
                        )
                        found[key] = poly
                    continue
                chord = d.order[nxt]
                if chord in (s[0] for s in steps):
                    continue
                if len(steps) >= max_len:
                    continue
                stack.append(
                    (
                        steps + [(chord, nxt, _other_end(d, nxt))],
                        gaps + [gap],
                        dirs + [direction],
                    )
                )
    return sorted(
        found.values(),
        key=lambda p: (len(p.steps), p.steps),
    )


def _other_end(d: ChordDiagram, slot: int) -> int:
    p, q = d.slots_of(d.order[slot])
    return q if slot == p else p


def polygon_identity_holds(d: ChordDiagram, assignment: ParityAssignment, poly) -> bool:
    """sum over the polygon of epsilon * parity == 0 (paper's Lemma)."""
    grp = assignment.group
    total = grp.identity()
    for chord, eps in poly.epsilons().items():
        total = grp.op(total, grp.scale(eps, assignment.values[chord]))
    return grp.is_identity(total)


def free_triangle_sites(d: ChordDiagram) -> list:
    """R3 sites of the underlying free diagram: polygons of length 3
    whose three hops use three distinct gaps."""
    sites = []
    for poly in polygons(d, 3):
        if len(poly.steps) != 3:
            continue
        if len(set(poly.gaps)) != 3:
            continue
        sites.append(poly)
    return sites


def r3_polygon_epsilons(d: ChordDiagram, gaps) -> dict:
    for poly in free_triangle_sites(d):
        if set(poly.gaps) == set(gaps):
            return poly.epsilons()
    raise ConsistencyError("no length-3 polygon at gaps %r" % (gaps,))


def r3_face_epsilons(d: ChordDiagram, gaps) -> dict:
    """Incidence indices read off the triangular face at the site."""
    data = _surface.trace_faces(d)
    for face in data.faces:
        if len(face.darts) != 3:
            continue
        face_gaps = {g for g, _s in face.darts}
        if face_gaps == set(gaps):
            eps = {}
            for lab, exp in face.corners:
                eps[lab] = exp
            if len(eps) == 3:
                return eps
    raise ConsistencyError("no triangular face at gaps %r" % (gaps,))


# -- axiom checking -----------------------------------------------------


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self):
        return tuple(c for c in self.checks if not c.ok)


def _og_int(group, value) -> int:
    if isinstance(group, TrivialGroup):
        return 0
    return value % 4


def _og_transportable(source: ParityAssignment, target: ParityAssignment, corr) -> bool:
    """Does src |-> tgt extend to an isomorphism of generated subgroups?

    Both value groups are cyclic (trivial, Z2 inside Z4, or Z4), so the
    map extends iff it is order preserving and linear over a generator
    of maximal order.
    """
    order4 = {0: 1, 1: 4, 2: 2, 3: 4}
    pairs = []
    for lab, tgt_lab in corr.items():
        s = _og_int(source.group, source.values[lab])
        t = _og_int(target.group, target.values[tgt_lab])
        if order4[s] != order4[t]:
            return False
        pairs.append((s, t))
    if not pairs:
        return True
    s0, t0 = max(pairs, key=lambda p: order4[p[0]])
    for s, t in pairs:
        k = next((k for k in range(4) if (k * s0) % 4 == s), None)
        if k is None:
            return False
        if (k * t0) % 4 != t:
            return False
    return True


def _fg_transportable(source: ParityAssignment, target: ParityAssignment, corr) -> bool:
    """Lattice criterion: the two maps Z^domain -> group have equal
    kernels exactly when src value |-> tgt value extends to an
    isomorphism of the generated subgroups."""
    labs = sorted(corr)
    src_vals = [source.values[lab] for lab in labs]
    tgt_vals = [target.values[corr[lab]] for lab in labs]
    ker_s = _surface.value_kernel_lattice(source.group, src_vals)
    ker_t = _surface.value_kernel_lattice(target.group, tgt_vals)
    return ker_s == ker_t


def _transportable(source: ParityAssignment, target: ParityAssignment, corr) -> bool:
    og_types = (TrivialGroup, Z4WithClasses)
    if isinstance(source.group, og_types) and isinstance(target.group, og_types):
        return _og_transportable(source, target, corr)
    if isinstance(source.group, FgAbelianGroup) and isinstance(
        target.group, FgAbelianGroup
    ):
        return _fg_transportable(source, target, corr)
    if type(source.group) is type(target.group):
        return all(
            source.values[lab] == target.values[tgt_lab]
            for lab, tgt_lab in corr.items()
        )
    raise GroupMismatch(
        "cannot compare %s with %s"
        % (type(source.group).__name__, type(target.group).__name__)
    )


def check_axioms(record, source: ParityAssignment, target: ParityAssignment,
                 mode: str = "oriented") -> AxiomReport:
    """Check the parity axioms across one move record.

    record carries .move (with .kind), .correspondence, .created and
    .removed; source/target are parity assignments on record.source and
    record.target.  mode selects P3 (unoriented) or P3+ (oriented).
    """
    checks = []
    kind = record.move.kind
    ok = _transportable(source, target, record.correspondence)
    checks.append(AxiomCheck("P0", ok, "naturality on surviving chords"))

    def end_assignment():
        # the diagram carrying the R1/R2 distinguished chords
        if kind.endswith("_add"):
            return target, record.created
        return source, record.removed

    if kind in ("R1_remove", "R1_add"):
        asg, chords = end_assignment()
        (c,) = chords
        ok = asg.group.is_identity(asg.values[c])
        checks.append(AxiomCheck("P1", ok, "chord %r" % (c,)))
    elif kind in ("R2_remove", "R2_add"):
        asg, chords = end_assignment()
        a, b = chords
        total = asg.group.op(asg.values[a], asg.values[b])
        ok = asg.group.is_identity(total)
        checks.append(AxiomCheck("P2", ok, "chords %r, %r" % (a, b)))
    elif kind == "R3":
        grp = source.group
        chords = record.move.chords
        if mode == "oriented":
            if isinstance(grp, FgAbelianGroup):
                eps = r3_face_epsilons(record.source, record.move.gaps)
            else:
                eps = r3_polygon_epsilons(_free_shadow(record.source), record.move.gaps)
            total = grp.identity()
            for c in chords:
                total = grp.op(total, grp.scale(eps[c], source.values[c]))
            checks.append(AxiomCheck("P3+", grp.is_identity(total), str(eps)))
        else:
            total = grp.identity()
            for c in chords:
                total = grp.op(total, source.values[c])
            checks.append(AxiomCheck("P3", grp.is_identity(total)))
    return AxiomReport(tuple(checks))


def _free_shadow(d: ChordDiagram) -> ChordDiagram:
    if d.flavor is Flavor.FREE:
        return d
    from .diagrams import project

    return project(d, Flavor.FREE)
