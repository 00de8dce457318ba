"""Carter surface of a decorated diagram and the parities living on it.

The diagram's circle immerses in a closed oriented surface with one
crossing per chord.  Vertices are the crossings, edges are the gaps
between consecutive endpoints, and faces come from the rotation system
fixed below.  Face words in the crossing letters present the quotient
pi_1(S)/<[K]>; its abelianisation is the value group of the homological
parity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .diagrams import (
    ChordDiagram,
    Flavor,
    MissingBasepoint,
    WrongFlavor,
)

# A dart is (gap, direction); gap g joins slot g to slot (g+1) mod 2n,
# direction +1 runs with the circle orientation, -1 against it.


def _emanate_slot(dart, m):
    g, s = dart
    return g if s == 1 else (g + 1) % m


def _head_slot(dart, m):
    g, s = dart
    return (g + 1) % m if s == 1 else g


def rotation_system(d: ChordDiagram) -> dict:
    """Counterclockwise dart order around each crossing.

    At a crossing the first passage enters at 180 degrees and leaves at
    0 degrees.  When the chord's arrow tail sits at the first passage
    the second passage enters at 270 and leaves at 90, otherwise the
    two are swapped; the frame (tail direction, head direction) of the
    modified arrow is always positively oriented.
    """
    if d.flavor is Flavor.FREE:
        raise WrongFlavor("free diagrams have no canonical surface")
    m = d.num_slots
    rot = {}
    for lab in d.labels():
        p1, p2 = d.slots_of(lab)
        out1, out2 = (p1, 1), (p2, 1)
        in1, in2 = ((p1 - 1) % m, -1), ((p2 - 1) % m, -1)
        tail, _head = d.arrow(lab)
        if tail == p1:
            rot[lab] = (out1, out2, in1, in2)
        else:
            rot[lab] = (out1, in2, in1, out2)
    return rot


@dataclass(frozen=True)
class Face:
    darts: tuple
    corners: tuple  # ((chord, exponent), ...) one per dart


@dataclass(frozen=True)
class FaceData:
    faces: tuple
    genus: int


def trace_faces(d: ChordDiagram) -> FaceData:
    """Faces of the Carter surface as closed dart walks with corner words."""
    m = d.num_slots
    if m == 0:
        return FaceData((), 0)
    rot = rotation_system(d)
    succ = {}
    for lab, darts in rot.items():
        for i, dart in enumerate(darts):
            succ[dart] = darts[(i + 1) % 4]
    arrows = {lab: d.arrow(lab) for lab in d.labels()}

    def next_dart(dart):
        g, s = dart
        return succ[(g, -s)]

    all_darts = [(g, s) for g in range(m) for s in (1, -1)]
    seen = set()
    faces = []
    for start in all_darts:
        if start in seen:
            continue
        walk = []
        dart = start
        while True:
            walk.append(dart)
            seen.add(dart)
            dart = next_dart(dart)
            if dart == start:
                break
        corners = []
        for i, dart in enumerate(walk):
            nxt = walk[(i + 1) % len(walk)]
            arrive = _head_slot(dart, m)
            depart = _emanate_slot(nxt, m)
            lab = d.order[arrive]
            if d.order[depart] != lab or arrive == depart:
                raise AssertionError("face corner is not a chord jump")
            tail, head_ = arrows[lab]
            corners.append((lab, 1 if arrive == tail else -1))
        faces.append(Face(tuple(walk), tuple(corners)))
    genus2 = 2 - (d.n - 2 * d.n + len(faces))
    if genus2 % 2:
        raise AssertionError("odd Euler characteristic")
    return FaceData(tuple(faces), genus2 // 2)


def genus(d: ChordDiagram) -> int:
    return trace_faces(d).genus


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple  # each relator is a tuple of (generator, exponent)


def presentation(d: ChordDiagram) -> GroupPresentation:
    """Presentation of pi_1(S)/<[K]> read off the face words."""
    data = trace_faces(d)
    gens = d.labels()
    return GroupPresentation(gens, tuple(f.corners for f in data.faces))


def homotopical_parity_words(d: ChordDiagram) -> dict:
    """Homotopical parity of each crossing as a word in the generators.

    The based left half of a crossing contracts to the single generator
    named after it once the spanning disk of the circle is glued in, so
    the word is one letter long; the presentation carries the relations.
    """
    if d.basepoint is None:
        raise MissingBasepoint("homotopical parity needs a basepoint")
    return {lab: ((lab, 1),) for lab in d.labels()}


# -- exact integer linear algebra --------------------------------------


@dataclass
class SNFResult:
    divisors: tuple  # nonzero diagonal entries d1 | d2 | ...
    rank: int
    U: list  # U * M * V = D, both transforms unimodular
    V: list
    D: list


def _identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def smith_normal_form(matrix) -> SNFResult:
    """Smith normal form of an integer matrix, with transforms."""
    A = [list(row) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row dst += f * row src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for r in A:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    def diagonalize():
        t = 0
        while t < min(rows, cols):
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if A[i][j] != 0:
                        if pivot is None or abs(A[i][j]) < abs(
                            A[pivot[0]][pivot[1]]
                        ):
                            pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            while True:
                for i in range(t + 1, rows):
                    if A[i][t]:
                        add_row(t, i, -(A[i][t] // A[t][t]))
                for j in range(t + 1, cols):
                    if A[t][j]:
                        add_col(t, j, -(A[t][j] // A[t][t]))
                if all(A[i][t] == 0 for i in range(t + 1, rows)) and all(
                    A[t][j] == 0 for j in range(t + 1, cols)
                ):
                    break
                # a remainder became the new, strictly smaller pivot
                pivot = None
                for i in range(t, rows):
                    for j in range(t, cols):
                        if A[i][j] != 0 and (
                            pivot is None
                            or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])
                        ):
                            pivot = (i, j)
                swap_rows(t, pivot[0])
                swap_cols(t, pivot[1])
            if A[t][t] < 0:
                negate_row(t)
            t += 1
        return t

    while True:
        t = diagonalize()
        bad = None
        for i in range(t - 1):
            if A[i + 1][i + 1] % A[i][i]:
                bad = i
                break
        if bad is None:
            break
        add_row(bad + 1, bad, 1)  # reintroduces the pair, next pass takes gcd
    divisors = tuple(A[i][i] for i in range(t) if A[i][i] != 0)
    return SNFResult(divisors, len(divisors), U, V, A)


def integer_kernel(matrix) -> list:
    """Basis (list of vectors) of the integer kernel of the matrix."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    res = smith_normal_form(matrix)
    # columns of V beyond the rank span the kernel
    return [[res.V[i][j] for i in range(cols)] for j in range(res.rank, cols)]


def hermite_basis(vectors) -> tuple:
    """Canonical (column-style Hermite) basis of the lattice they span."""
    pool = [list(v) for v in vectors if any(v)]
    if not pool:
        return ()
    dim = len(vectors[0])
    out = []  # pivot rows, pivot columns strictly increasing
    pivot_cols = []
    for col in range(dim):
        while True:
            nz = [v for v in pool if v[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda v: abs(v[col]))
            p = nz[0]
            for v in nz[1:]:
                q = v[col] // p[col]
                for i in range(dim):
                    v[i] -= q * p[i]
        nz = [v for v in pool if v[col] != 0]
        if nz:
            p = nz[0]
            if p[col] < 0:
                for i in range(dim):
                    p[i] = -p[i]
            out.append(p)
            pivot_cols.append(col)
            pool = [v for v in pool if v is not p and any(v)]
    # reduce the entries above each pivot to the canonical range
    for i in range(len(out)):
        for j in range(i):
            q = out[j][pivot_cols[i]] // out[i][pivot_cols[i]]
            if q:
                for c in range(dim):
                    out[j][c] -= q * out[i][c]
    return tuple(tuple(v) for v in out)


# -- finitely generated abelian groups ---------------------------------


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^rank x Z/d1 x ... x Z/dk; elements are coordinate tuples."""

    rank: int
    torsion: tuple

    @property
    def dim(self):
        return self.rank + len(self.torsion)

    def reduce(self, coords):
        coords = list(coords)
        out = list(coords[: self.rank])
        for i, dmod in enumerate(self.torsion):
            out.append(coords[self.rank + i] % dmod)
        return tuple(out)

    def identity(self):
        return tuple(0 for _ in range(self.dim))

    def op(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def inv(self, a):
        return self.reduce([-x for x in a])

    def scale(self, k, a):
        return self.reduce([k * x for x in a])

    def is_identity(self, a):
        return all(x == 0 for x in a)

    def order(self, a):
        """Order of the element; 0 means infinite."""
        if any(a[: self.rank]):
            return 0
        o = 1
        for i, dmod in enumerate(self.torsion):
            x = a[self.rank + i] % dmod
            if x:
                o = o * (dmod // gcd(dmod, x)) // gcd(o, dmod // gcd(dmod, x))
        return o

    def invariants(self):
        return (self.rank, self.torsion)


def cokernel(matrix, ngens: int):
    """Cokernel of Z^cols -> Z^ngens as (group, map from Z^ngens coords).

    Returns (group, project) where project takes an integer vector of
    length ngens to its class, dropping coordinates with divisor 1.
    """
    if ngens == 0:
        grp = FgAbelianGroup(0, ())
        return grp, lambda vec: ()
    if not matrix or not matrix[0]:
        grp = FgAbelianGroup(ngens, ())
        return grp, lambda vec: tuple(vec)
    res = smith_normal_form(matrix)
    keep_tors = [
        (i, res.divisors[i]) for i in range(res.rank) if res.divisors[i] != 1
    ]
    free_idx = list(range(res.rank, ngens))
    torsion = tuple(dv for _, dv in keep_tors)
    grp = FgAbelianGroup(len(free_idx), torsion)
    U = res.U

    def project(vec):
        img = [sum(U[i][j] * vec[j] for j in range(ngens)) for i in range(ngens)]
        coords = [img[i] for i in free_idx]
        coords += [img[i] % dv for i, dv in keep_tors]
        return tuple(coords)

    return grp, project


def homology_group(d: ChordDiagram):
    """(group, values) for the homological parity of a flat/virtual diagram."""
    labels = d.labels()
    data = trace_faces(d)
    ngens = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    cols = []
    for face in data.faces:
        vec = [0] * ngens
        for lab, exp in face.corners:
            vec[index[lab]] += exp
        cols.append(vec)
    matrix = [[col[i] for col in cols] for i in range(ngens)] if cols else []
    grp, project = cokernel(matrix, ngens)
    values = {}
    for lab, i in index.items():
        e = [0] * ngens
        e[i] = 1
        values[lab] = project(e)
    return grp, values


def value_kernel_lattice(group: FgAbelianGroup, values) -> tuple:
    """Kernel of Z^k -> group, c |-> sum c_i * values[i], as a Hermite basis."""
    k = len(values)
    if k == 0:
        return ()
    rank, torsion = group.rank, group.torsion
    rows = []
    for i in range(rank):
        rows.append([v[i] for v in values] + [0] * len(torsion))
    for j, dmod in enumerate(torsion):
        row = [v[rank + j] for v in values]
        row += [dmod if t == j else 0 for t in range(len(torsion))]
        rows.append(row)
    if not rows:
        full = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        return hermite_basis(full)
    kern = integer_kernel(rows)
    projected = [v[:k] for v in kern]
    return hermite_basis(projected)
