"""
Normal surface coordinates in the standard 7n-dimensional space.

Each tetrahedron ``t`` owns seven coordinates ``7t .. 7t+6``: slots 0..3
count normal triangles (slot ``v`` cuts off vertex ``v``) and slots 4..6
count quadrilaterals.  Slot 4 separates {0,1} from {2,3}, slot 5 separates
{0,2} from {1,3} and slot 6 separates {0,3} from {1,2}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .tri import BoundaryKind, boundary_kind, is_one_vertex

__all__ = [
    "QUAD_PARTITIONS", "quad_slot_for_pair", "NormalVector", "MatchingSystem",
    "EulerFunctional", "SurfaceComponent", "ReconstructionError",
    "matching_equations", "euler_functional", "vertex_link_vector",
    "is_admissible", "scale_to_primitive", "reconstruct_components",
    "boundary_arc_counts", "is_boundary_nontrivial",
]

QUAD_PARTITIONS = {
    4: ((0, 1), (2, 3)),
    5: ((0, 2), (1, 3)),
    6: ((0, 3), (1, 2)),
}

_QUAD_OF_PAIR = {}
for _slot, (_p, _q) in QUAD_PARTITIONS.items():
    for _a, _b in (_p, _q):
        _QUAD_OF_PAIR[_a, _b] = _QUAD_OF_PAIR[_b, _a] = _slot


def quad_slot_for_pair(a, b):
    """The quad slot whose partition keeps vertices ``a`` and ``b`` together."""
    return _QUAD_OF_PAIR[a, b]


def quads_meeting_edge(a, b):
    """The two quad slots that separate ``a`` from ``b`` (these meet edge ab)."""
    keep = _QUAD_OF_PAIR[a, b]
    return tuple(s for s in (4, 5, 6) if s != keep)


def _on_low_side(slot, v):
    # the side of the quad partition containing vertex 0
    return v in QUAD_PARTITIONS[slot][0]


@dataclass(frozen=True)
class NormalVector:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if len(self.coords) % 7:
            raise ValueError("normal vectors have length 7n")

    @classmethod
    def zero(cls, n):
        return cls((0,) * (7 * n))

    @property
    def n(self):
        return len(self.coords) // 7

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def tri(self, t, v):
        return self.coords[7 * t + v]

    def quad(self, t, slot):
        """Quad coordinate of tetrahedron ``t``; ``slot`` is 4, 5 or 6."""
        return self.coords[7 * t + slot]

    def __add__(self, other):
        return NormalVector(a + b for a, b in zip(self.coords, other.coords, strict=True))

    def __mul__(self, k):
        return NormalVector(k * c for c in self.coords)

    __rmul__ = __mul__

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)

    def int_coords(self):
        if not self.is_integral():
            raise ValueError("vector has non-integer coordinates")
        return tuple(int(c) for c in self.coords)

    def support(self):
        return frozenset(i for i, c in enumerate(self.coords) if c != 0)

    def to_line(self):
        return " ".join(str(c) for c in self.coords)

    @classmethod
    def from_line(cls, line):
        return cls(Fraction(tok) for tok in line.split())


@dataclass(frozen=True)
class MatchingSystem:
    """Sparse homogeneous rows ``sum(coef * x[var]) == 0``."""

    nvars: int
    rows: tuple   # each row: tuple of (var, coef), sorted by var

    def __len__(self):
        return len(self.rows)

    def residuals(self, x):
        return [sum(c * x[v] for v, c in row) for row in self.rows]

    def satisfied_by(self, x):
        return all(r == 0 for r in self.residuals(x))


@dataclass(frozen=True)
class EulerFunctional:
    coeffs: tuple

    def __call__(self, x):
        return sum(c * xi for c, xi in zip(self.coeffs, x, strict=True) if c)

    def as_dict(self):
        return {i: c for i, c in enumerate(self.coeffs) if c}


@dataclass(frozen=True)
class SurfaceComponent:
    vector: NormalVector
    euler: int
    boundary_arcs: dict    # (t, f, w) -> arcs at corner w of boundary face (t, f)

    @property
    def num_quads(self):
        return sum(self.vector.quad(t, s) for t in range(self.vector.n) for s in (4, 5, 6))


class ReconstructionError(RuntimeError):
    """Discs could not be glued consistently; the input was not admissible."""


def matching_equations(tri):
    """One equation per internal face class and normal arc type."""
    sk = tri.skeleton
    rows = []
    for k, emb in enumerate(sk.faces):
        if sk.face_boundary[k]:
            continue
        a, i = emb[0]
        b, p = tri.gluings[a][i]
        j = p(i)
        for w in range(4):
            if w == i:
                continue
            w2 = p(w)
            coef = {}
            for var, c in ((7 * a + w, 1), (7 * a + quad_slot_for_pair(w, i), 1),
                           (7 * b + w2, -1), (7 * b + quad_slot_for_pair(w2, j), -1)):
                coef[var] = coef.get(var, 0) + c
            row = tuple(sorted((v, c) for v, c in coef.items() if c))
            if row:
                rows.append(row)
    return MatchingSystem(7 * tri.n, tuple(rows))


def euler_functional(tri):
    """
    Integer coefficients ``c`` with ``c . v(S) = chi(S)``.

    Discs minus normal arcs plus normal points, where arcs are counted once
    per face class and points once per edge class, each read off the
    smallest embedding of that class.
    """
    sk = tri.skeleton
    c = [1] * (7 * tri.n)
    for emb in sk.faces:
        t, f = emb[0]
        for w in range(4):
            if w != f:
                c[7 * t + w] -= 1
        for s in (4, 5, 6):
            c[7 * t + s] -= 1
    for emb in sk.edges:
        t, a, b = emb[0]
        c[7 * t + a] += 1
        c[7 * t + b] += 1
        for s in quads_meeting_edge(a, b):
            c[7 * t + s] += 1
    return EulerFunctional(tuple(c))


def vertex_link_vector(tri):
    if not is_one_vertex(tri):
        raise ValueError("vertex link vector needs a one-vertex triangulation")
    return NormalVector((1, 1, 1, 1, 0, 0, 0) * tri.n)


def is_admissible(x, matching):
    if len(x) != matching.nvars:
        raise ValueError("dimension mismatch")
    if any(c < 0 for c in x):
        return False
    for t in range(len(x) // 7):
        if sum(1 for s in (4, 5, 6) if x[7 * t + s] != 0) > 1:
            return False
    return matching.satisfied_by(x)


def scale_to_primitive(x):
    """Smallest positive multiple of ``x`` with integer coordinates."""
    coords = [Fraction(c) for c in x]
    if all(c == 0 for c in coords):
        raise ValueError("cannot scale the zero vector")
    den = lcm(*(c.denominator for c in coords))
    ints = [int(c * den) for c in coords]
    g = gcd(*ints)
    return NormalVector(v // g for v in ints)


# ---------------------------------------------------------------------------
# explicit reconstruction

def _disc_at_corner(x, t, f, w, pos, index):
    """The disc whose arc sits ``pos`` steps from corner ``w`` of face ``f`` in ``t``."""
    ntri = int(x[7 * t + w])
    if pos < ntri:
        return index[7 * t + w] + pos
    slot = quad_slot_for_pair(w, f)
    nq = int(x[7 * t + slot])
    j = pos - ntri
    copy = j if _on_low_side(slot, w) else nq - 1 - j
    return index[7 * t + slot] + copy


def _disc_on_edge(x, t, a, b, pos, index):
    """The disc through the point ``pos`` steps from vertex ``a`` along edge ab of ``t``."""
    na = int(x[7 * t + a])
    if pos < na:
        return index[7 * t + a] + pos
    pos -= na
    for slot in quads_meeting_edge(a, b):
        nq = int(x[7 * t + slot])
        if nq == 0:
            continue
        if pos < nq:
            copy = pos if _on_low_side(slot, a) else nq - 1 - pos
            return index[7 * t + slot] + copy
        pos -= nq
    nb = int(x[7 * t + b])
    return index[7 * t + b] + (nb - 1 - pos)


def _edge_weight(x, t, a, b):
    return int(x[7 * t + a] + x[7 * t + b] + sum(x[7 * t + s] for s in quads_meeting_edge(a, b)))


def reconstruct_components(x, tri):
    """
    Build the discs of an admissible integer vector, glue them across faces
    and split the result into connected components.

    Returns ``SurfaceComponent`` records ordered by their first disc; the
    component vectors sum to ``x``.
    """
    x = NormalVector(x) if not isinstance(x, NormalVector) else x
    if not x.is_integral() or any(c < 0 for c in x):
        raise ValueError("reconstruction needs a non-negative integer vector")
    if x.n != tri.n:
        raise ValueError("dimension mismatch")
    for t in range(tri.n):
        if sum(1 for s in (4, 5, 6) if x.quad(t, s)) > 1:
            raise ReconstructionError(f"tetrahedron {t} carries two quad types")
    sk = tri.skeleton
    counts = x.int_coords()
    index, total = [], 0
    for c in counts:
        index.append(total)
        total += c
    owner = [None] * total      # disc -> coordinate index
    for i, c in enumerate(counts):
        for d in range(index[i], index[i] + c):
            owner[d] = i

    parent = list(range(total))

    def find(d):
        while parent[d] != d:
            parent[d] = parent[parent[d]]
            d = parent[d]
        return d

    def union(d1, d2):
        r1, r2 = find(d1), find(d2)
        if r1 != r2:
            if r1 < r2:
                parent[r2] = r1
            else:
                parent[r1] = r2

    def arcs(t, f, w):
        return counts[7 * t + w] + counts[7 * t + quad_slot_for_pair(w, f)]

    for k, emb in enumerate(sk.faces):
        if sk.face_boundary[k]:
            continue
        a, i = emb[0]
        b, p = tri.gluings[a][i]
        j = p(i)
        for w in range(4):
            if w == i:
                continue
            m = arcs(a, i, w)
            if m != arcs(b, j, p(w)):
                raise ReconstructionError(
                    f"arc counts disagree across face {i} of tetrahedron {a}")
            for pos in range(m):
                union(_disc_at_corner(counts, a, i, w, pos, index),
                      _disc_at_corner(counts, b, j, p(w), pos, index))

    roots = sorted({find(d) for d in range(total)})
    comp_id = {r: c for c, r in enumerate(roots)}
    ncomp = len(roots)
    vecs = [[0] * len(counts) for _ in range(ncomp)]
    faces_ = [0] * ncomp
    edges_ = [0] * ncomp
    verts_ = [0] * ncomp
    bdry = [dict() for _ in range(ncomp)]
    comp_of = [comp_id[find(d)] for d in range(total)]
    for d in range(total):
        vecs[comp_of[d]][owner[d]] += 1
        faces_[comp_of[d]] += 1

    for k, emb in enumerate(sk.faces):
        a, i = emb[0]
        for w in range(4):
            if w == i:
                continue
            for pos in range(arcs(a, i, w)):
                c = comp_of[_disc_at_corner(counts, a, i, w, pos, index)]
                edges_[c] += 1
                if sk.face_boundary[k]:
                    key = (a, i, w)
                    bdry[c][key] = bdry[c].get(key, 0) + 1

    for emb in sk.edges:
        t, a, b = emb[0]
        weight = _edge_weight(counts, t, a, b)
        for t2, a2, b2 in emb[1:]:
            if _edge_weight(counts, t2, a2, b2) != weight:
                raise ReconstructionError(f"edge weights disagree in tetrahedron {t2}")
        for pos in range(weight):
            c = comp_of[_disc_on_edge(counts, t, a, b, pos, index)]
            verts_[c] += 1
            for t2, a2, b2 in emb[1:]:
                if comp_of[_disc_on_edge(counts, t2, a2, b2, pos, index)] != c:
                    raise ReconstructionError("normal points along an edge disagree")

    return [SurfaceComponent(NormalVector(vecs[c]), verts_[c] - edges_[c] + faces_[c], bdry[c])
            for c in range(ncomp)]


# ---------------------------------------------------------------------------
# boundary curves on a one-vertex torus

def boundary_arc_counts(x, tri):
    """Arc counts at each corner of each boundary face, in (t, f, w) order."""
    out = []
    for t, f in tri.boundary_faces():
        for w in range(4):
            if w != f:
                out.append(x[7 * t + w] + x[7 * t + quad_slot_for_pair(w, f)])
    return tuple(out)


def is_boundary_nontrivial(x, tri):
    """
    Does the boundary of ``x`` run along an essential curve of the torus?

    On a one-vertex torus built from two triangles every normal curve is some
    number of loops around the vertex plus parallel essential curves, and the
    vertex loops alone meet all six corners equally often.
    """
    if not is_one_vertex(tri) or len(tri.boundary_faces()) != 2 \
            or boundary_kind(tri) is not BoundaryKind.TORUS:
        raise ValueError("boundary test needs a one-vertex triangulation with two-triangle torus boundary")
    counts = boundary_arc_counts(x, tri)
    return len(set(counts)) > 1
