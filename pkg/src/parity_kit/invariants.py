"""Knot invariants derived from parities.

Writhe, L_odd, the linking invariant lk^p in the group algebra of the
coefficient group, and the linking multisets: the signed multiset over
inversion pairs {g, g^-1}, and the involutive / non-involutive split for
unsigned flavors.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .diagrams import ChordDiagram, Flavor, GroupMismatch, WrongFlavor
from .parity import (
    CyclicGroup,
    ParityAssignment,
    TrivialGroup,
    Z4WithClasses,
    classify_chords,
    ChordClass,
)
from .surface import FgAbelianGroup


def writhe(d: ChordDiagram) -> int:
    if d.flavor is Flavor.FREE:
        raise WrongFlavor("writhe needs signed chords")
    return sum(d.signs[lab] for lab in d.labels())


def l_odd(d: ChordDiagram) -> int:
    """| |O'| - |O''| | from the oriented Gaussian chord classification."""
    classes = classify_chords(d)
    counts = Counter(classes.values())
    return abs(counts[ChordClass.O_PRIME] - counts[ChordClass.O_DOUBLE_PRIME])


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Finitely supported integer combination of group elements."""

    group: object
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", {g: c for g, c in self.coeffs.items() if c != 0}
        )

    def coefficient(self, g) -> int:
        return self.coeffs.get(g, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return set(self.coeffs)


def linking_invariant(d: ChordDiagram, p: ParityAssignment) -> GroupAlgebraElement:
    """lk^p(K) = sum over crossings of sgn(v) * [p(v)^{sgn(v)}] - w(D) * [1]."""
    if d.flavor is Flavor.FREE:
        raise WrongFlavor("the linking invariant needs crossing signs")
    if p.diagram is not d and set(p.values) != set(d.labels()):
        raise GroupMismatch("parity assignment does not cover the diagram")
    group = p.group
    coeffs = Counter()
    for lab in d.labels():
        sgn = d.signs[lab]
        value = p.values[lab]
        if sgn < 0:
            value = group.inv(value)
        coeffs[value] += sgn
    coeffs[group.identity()] -= writhe(d)
    return GroupAlgebraElement(group, dict(coeffs))


def _inversion_pairs(group, elements):
    """Unordered pairs {g, inv(g)} over `elements`, identity dropped."""
    seen = set()
    pairs = []
    for g in elements:
        if group.is_identity(g) or g in seen:
            continue
        h = group.inv(g)
        seen.add(g)
        seen.add(h)
        pairs.append((g, h))
    return pairs


def linking_multiset_signed(d: ChordDiagram, p: ParityAssignment) -> list:
    """Multiset {|lk_g + lk_{g^-1}|} over inversion pairs, zeros dropped.

    The paper's multiset formally counts every group element, which is
    not finitely representable over infinite groups; only nonzero
    entries are stored (ledgered deviation).
    """
    lk = linking_invariant(d, p)
    group = p.group
    out = []
    for g, h in _inversion_pairs(group, lk.support()):
        total = lk.coefficient(g) + (lk.coefficient(h) if h != g else 0)
        if total:
            out.append(abs(total))
    return sorted(out)


def _finite_elements(group):
    """All elements of a finite coefficient group, else None."""
    if isinstance(group, TrivialGroup):
        return [0]
    if isinstance(group, CyclicGroup):
        return list(range(group.modulus))
    if isinstance(group, Z4WithClasses):
        return list(range(4))
    if isinstance(group, FgAbelianGroup) and group.rank == 0:
        ranges = [range(dmod) for dmod in group.torsion]
        return [group.reduce(tup) for tup in itertools.product(*ranges)]
    return None


def linking_unsigned(d: ChordDiagram, p: ParityAssignment):
    """Involutive and non-involutive parts of the unsigned linking invariant.

    The involutive part counts chords mod 2 at each involution g (g^2 = 1,
    g != 1); the non-involutive part carries |#p^-1(g) - #p^-1(g^-1)| per
    inversion pair.  Over a finite group every involution / pair is
    reported, zeros included; over an infinite group only the values that
    occur among the chords appear.
    """
    group = p.group
    counts = Counter(p.values[lab] for lab in d.labels())
    elements = _finite_elements(group)
    domain = elements if elements is not None else list(counts)
    involutive = {}
    for g in domain:
        if group.order(g) == 2:
            involutive[g] = counts[g] % 2
    noninvolutive = {}
    for g, h in _inversion_pairs(group, domain):
        if group.order(g) == 2:
            continue
        key = min((g, h), key=repr)
        noninvolutive[key] = abs(counts[g] - counts[h])
    if elements is None:
        involutive = {g: c for g, c in involutive.items() if c}
        noninvolutive = {g: c for g, c in noninvolutive.items() if c}
    return involutive, noninvolutive


def linking_multisets_unsigned(d: ChordDiagram, p: ParityAssignment):
    """(LS_inv, LS_ni) as sorted multisets of the part coefficients."""
    involutive, noninvolutive = linking_unsigned(d, p)
    return sorted(involutive.values()), sorted(noninvolutive.values())


def og_linking_multisets(d: ChordDiagram):
    """(LS_inv, LS_ni) of the oriented Gaussian parity, read over Z4.

    The og functor collapses to a smaller group when no odd chords
    exist, which would empty both multisets; the paper's examples read
    them over Z4 regardless, giving LS_inv = {|E1| mod 2} and
    LS_ni = {L_odd}.
    """
    counts = Counter(classify_chords(d).values())
    ls_inv = [counts[ChordClass.E1] % 2]
    ls_ni = [
        abs(counts[ChordClass.O_PRIME] - counts[ChordClass.O_DOUBLE_PRIME])
    ]
    return ls_inv, ls_ni
