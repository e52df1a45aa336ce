"""
Generalised 3-manifold triangulations.

A triangulation is a list of abstract tetrahedra whose faces are glued in
pairs by permutations of the vertex labels {0,1,2,3}.  Face ``f`` of a
tetrahedron is the face opposite vertex ``f``.  A gluing ``(t', p)`` on face
``f`` of tetrahedron ``t`` identifies vertex ``v`` of ``t`` with vertex
``p(v)`` of ``t'``, so face ``f`` is glued to face ``p(f)`` of ``t'``.
"""
from __future__ import annotations

import enum
import itertools
from collections import deque
from functools import cached_property

__all__ = [
    "EDGES", "Perm4", "Triangulation", "Skeleton", "BoundaryKind",
    "TriangulationError", "InvalidTriangulation", "GluingSyntaxError",
    "parse_gluing_table", "serialize", "skeleton", "euler_characteristic",
    "boundary_kind", "connected_components", "count_vertices",
    "is_one_vertex", "disjoint_union",
]

#: Tetrahedron edges, indexed 0..5, as ordered vertex pairs.
EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {}
for _i, (_a, _b) in enumerate(EDGES):
    EDGE_INDEX[_a, _b] = EDGE_INDEX[_b, _a] = _i


class TriangulationError(ValueError):
    pass


class InvalidTriangulation(TriangulationError):
    """The gluings do not describe a 3-manifold triangulation."""


class GluingSyntaxError(TriangulationError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Perm4:
    """A permutation of {0,1,2,3}, stored by its images."""

    __slots__ = ("images",)

    def __init__(self, images=(0, 1, 2, 3)):
        images = tuple(int(i) for i in images)
        if sorted(images) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of 0..3: {images}")
        self.images = images

    @classmethod
    def transposition(cls, a, b):
        img = [0, 1, 2, 3]
        img[a], img[b] = b, a
        return cls(img)

    def __call__(self, v):
        return self.images[v]

    def __mul__(self, other):
        # (self * other)(v) = self(other(v))
        return Perm4(self.images[other.images[v]] for v in range(4))

    def inverse(self):
        inv = [0] * 4
        for v, w in enumerate(self.images):
            inv[w] = v
        return Perm4(inv)

    def __eq__(self, other):
        return isinstance(other, Perm4) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Perm4(" + "".join(map(str, self.images)) + ")"

    def __str__(self):
        return "".join(map(str, self.images))


IDENTITY = Perm4()


class Triangulation:
    """
    An immutable generalised triangulation.

    ``gluings[t][f]`` is ``None`` for a boundary face, otherwise a pair
    ``(t2, perm)``.  The constructor validates the involution property and
    rejects faces glued to themselves.
    """

    def __init__(self, gluings):
        rows = []
        for row in gluings:
            row = list(row)
            if len(row) != 4:
                raise TriangulationError("each tetrahedron needs four face entries")
            out = []
            for g in row:
                if g is None:
                    out.append(None)
                else:
                    t2, p = g
                    if not isinstance(p, Perm4):
                        p = Perm4(p)
                    out.append((int(t2), p))
            rows.append(tuple(out))
        self.gluings = tuple(rows)
        self._validate()

    def _validate(self):
        n = len(self.gluings)
        for t, row in enumerate(self.gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, p = g
                if not 0 <= t2 < n:
                    raise TriangulationError(
                        f"tetrahedron {t} face {f}: target {t2} out of range")
                f2 = p(f)
                if t2 == t and f2 == f:
                    raise InvalidTriangulation(f"face {f} of tetrahedron {t} is glued to itself")
                back = self.gluings[t2][f2]
                if back is None or back[0] != t or back[1] != p.inverse():
                    raise InvalidTriangulation(
                        f"gluing of tetrahedron {t} face {f} is not matched by its inverse")

    @property
    def n(self):
        return len(self.gluings)

    def __len__(self):
        return len(self.gluings)

    def adjacent(self, t, f):
        return self.gluings[t][f]

    def is_boundary_face(self, t, f):
        return self.gluings[t][f] is None

    def boundary_faces(self):
        return [(t, f) for t in range(self.n) for f in range(4) if self.gluings[t][f] is None]

    @cached_property
    def skeleton(self):
        return Skeleton(self)

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.gluings == other.gluings

    def __hash__(self):
        return hash(self.gluings)

    def __repr__(self):
        return f"<Triangulation n={self.n} boundary_faces={len(self.boundary_faces())}>"

    def to_text(self):
        return serialize(self)


class Skeleton:
    """
    Vertex, edge and face classes of a triangulation.

    Embeddings are stored per class.  Vertex embeddings are ``(t, v)``, face
    embeddings ``(t, f)``; edge embeddings are ``(t, a, b)`` where tetrahedron
    vertex ``a`` maps to the class's first endpoint and ``b`` to its second.
    Embedding lists are sorted, so ``classes[k][0]`` is the lexicographically
    smallest embedding.
    """

    def __init__(self, tri):
        self.tri = tri
        n = tri.n
        self._build_faces(n)
        self._build_vertices(n)
        self._build_edges(n)

    def _build_faces(self, n):
        tri = self.tri
        self.face_of = [[-1] * 4 for _ in range(n)]
        self.faces = []
        for t in range(n):
            for f in range(4):
                if self.face_of[t][f] >= 0:
                    continue
                k = len(self.faces)
                emb = [(t, f)]
                self.face_of[t][f] = k
                g = tri.gluings[t][f]
                if g is not None:
                    t2, p = g
                    self.face_of[t2][p(f)] = k
                    emb.append((t2, p(f)))
                self.faces.append(sorted(emb))
        self.face_boundary = [len(e) == 1 for e in self.faces]

    def _build_vertices(self, n):
        tri = self.tri
        self.vertex_of = [[-1] * 4 for _ in range(n)]
        self.vertices = []
        self.vertex_boundary = []
        for t0 in range(n):
            for v0 in range(4):
                if self.vertex_of[t0][v0] >= 0:
                    continue
                k = len(self.vertices)
                self.vertex_of[t0][v0] = k
                emb, bdry = [], False
                queue = deque([(t0, v0)])
                while queue:
                    t, v = queue.popleft()
                    emb.append((t, v))
                    for f in range(4):
                        if f == v:
                            continue
                        g = tri.gluings[t][f]
                        if g is None:
                            bdry = True
                            continue
                        t2, p = g
                        w = p(v)
                        if self.vertex_of[t2][w] < 0:
                            self.vertex_of[t2][w] = k
                            queue.append((t2, w))
                self.vertices.append(sorted(emb))
                self.vertex_boundary.append(bdry)

    def _build_edges(self, n):
        tri = self.tri
        self.edge_of = [[-1] * 6 for _ in range(n)]
        # True when tetrahedron edge (a, b), a < b, runs from class end 0 to end 1.
        self.edge_forward = [[True] * 6 for _ in range(n)]
        self.edges = []
        self.edge_boundary = []
        for t0 in range(n):
            for e0, (a0, b0) in enumerate(EDGES):
                if self.edge_of[t0][e0] >= 0:
                    continue
                k = len(self.edges)
                self.edge_of[t0][e0] = k
                emb, bdry = [], False
                queue = deque([(t0, a0, b0)])
                while queue:
                    t, a, b = queue.popleft()
                    emb.append((t, a, b))
                    for f in range(4):
                        if f == a or f == b:
                            continue
                        g = tri.gluings[t][f]
                        if g is None:
                            bdry = True
                            continue
                        t2, p = g
                        a2, b2 = p(a), p(b)
                        e2 = EDGE_INDEX[a2, b2]
                        fwd = a2 < b2
                        if self.edge_of[t2][e2] < 0:
                            self.edge_of[t2][e2] = k
                            self.edge_forward[t2][e2] = fwd
                            queue.append((t2, a2, b2))
                        elif self.edge_forward[t2][e2] != fwd:
                            raise InvalidTriangulation(
                                f"edge {EDGES[e2]} of tetrahedron {t2} is identified "
                                "with itself in reverse; not a 3-manifold")
                self.edges.append(sorted(emb))
                self.edge_boundary.append(bdry)

    # counts -----------------------------------------------------------------

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def num_faces(self):
        return len(self.faces)

    def edge_class(self, t, a, b):
        return self.edge_of[t][EDGE_INDEX[a, b]]

    def edge_endpoints(self, k):
        """Vertex classes of the two ends of edge class ``k``."""
        t, a, b = self.edges[k][0]
        return self.vertex_of[t][a], self.vertex_of[t][b]

    def boundary_counts(self):
        """(vertices, edges, faces) of the boundary surface."""
        return (sum(self.vertex_boundary), sum(self.edge_boundary), sum(self.face_boundary))

    def boundary_components(self):
        """Number of connected components of the boundary surface."""
        bfaces = [k for k, b in enumerate(self.face_boundary) if b]
        parent = {k: k for k in bfaces}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        by_edge = {}
        for k in bfaces:
            t, f = self.faces[k][0]
            for a, b in itertools.combinations([v for v in range(4) if v != f], 2):
                e = self.edge_class(t, a, b)
                if e in by_edge:
                    parent[find(k)] = find(by_edge[e])
                else:
                    by_edge[e] = k
        return len({find(k) for k in bfaces})


class BoundaryKind(enum.Enum):
    TORUS = "TorusBoundary"
    SPHERE = "SphereBoundary"
    CLOSED = "Closed"
    OTHER = "Other"


# ---------------------------------------------------------------------------
# text format

def parse_gluing_table(text):
    """
    Parse the gluing-table text format.

    First non-comment line: the tetrahedron count.  Then one line per
    tetrahedron: its index followed by four face entries, each ``-`` for a
    boundary face or ``t:abcd`` for a gluing to tetrahedron ``t`` via the
    permutation sending vertex ``i`` to the ``i``-th digit.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GluingSyntaxError("empty gluing table", 1)
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise GluingSyntaxError(f"expected tetrahedron count, got {head!r}", lineno) from None
    if n < 0:
        raise GluingSyntaxError("negative tetrahedron count", lineno)
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else lineno + 1)
        raise GluingSyntaxError(f"expected {n} tetrahedron lines, found {len(body)}", where)
    rows = [None] * n
    for lineno, ln in body:
        fields = ln.split()
        if len(fields) != 5:
            raise GluingSyntaxError("expected index and four face entries", lineno)
        try:
            t = int(fields[0])
        except ValueError:
            raise GluingSyntaxError(f"bad tetrahedron index {fields[0]!r}", lineno) from None
        if not 0 <= t < n:
            raise GluingSyntaxError(f"tetrahedron index {t} out of range", lineno)
        if rows[t] is not None:
            raise GluingSyntaxError(f"tetrahedron {t} listed twice", lineno)
        row = []
        for ent in fields[1:]:
            if ent == "-":
                row.append(None)
                continue
            target, sep, digits = ent.partition(":")
            if not sep or len(digits) != 4 or not target.isdigit() or not digits.isdigit():
                raise GluingSyntaxError(f"bad face entry {ent!r}", lineno)
            t2 = int(target)
            if t2 >= n:
                raise GluingSyntaxError(f"target tetrahedron {t2} out of range", lineno)
            try:
                p = Perm4(int(d) for d in digits)
            except ValueError:
                raise GluingSyntaxError(f"{digits!r} is not a permutation of 0123", lineno) from None
            row.append((t2, p))
        rows[t] = row
    return Triangulation(rows)


def serialize(tri):
    out = [str(tri.n)]
    for t, row in enumerate(tri.gluings):
        ents = ["-" if g is None else f"{g[0]}:{g[1]}" for g in row]
        out.append(f"{t} " + " ".join(ents))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# derived quantities

def skeleton(tri):
    return tri.skeleton


def euler_characteristic(tri):
    """V - E + F - T over the cell classes of ``tri``."""
    sk = tri.skeleton
    return sk.num_vertices - sk.num_edges + sk.num_faces - tri.n


def count_vertices(tri):
    return tri.skeleton.num_vertices


def is_one_vertex(tri):
    return tri.n > 0 and tri.skeleton.num_vertices == 1


def boundary_kind(tri):
    """
    Classify a connected triangulation by its boundary.

    Torus and sphere boundaries are recognised from the Euler characteristic
    (0 and 1 respectively) together with a single boundary component.
    Orientability of the boundary is not checked.
    """
    sk = tri.skeleton
    if not any(sk.face_boundary):
        return BoundaryKind.CLOSED
    if sk.boundary_components() != 1:
        return BoundaryKind.OTHER
    chi = euler_characteristic(tri)
    bv, be, bf = sk.boundary_counts()
    chi_b = bv - be + bf
    if chi == 0 and chi_b == 0:
        return BoundaryKind.TORUS
    if chi == 1 and chi_b == 2:
        return BoundaryKind.SPHERE
    return BoundaryKind.OTHER


def connected_components(tri, with_maps=False):
    """
    Split ``tri`` into connected pieces, each re-indexed from 0.

    With ``with_maps`` each item is ``(component, original_indices)``.
    """
    n = tri.n
    comp = [-1] * n
    groups = []
    for s in range(n):
        if comp[s] >= 0:
            continue
        k = len(groups)
        comp[s] = k
        members, stack = [], [s]
        while stack:
            t = stack.pop()
            members.append(t)
            for g in tri.gluings[t]:
                if g is not None and comp[g[0]] < 0:
                    comp[g[0]] = k
                    stack.append(g[0])
        groups.append(sorted(members))
    out = []
    for members in groups:
        new_index = {t: i for i, t in enumerate(members)}
        rows = []
        for t in members:
            rows.append([None if g is None else (new_index[g[0]], g[1]) for g in tri.gluings[t]])
        piece = Triangulation(rows)
        out.append((piece, members) if with_maps else piece)
    return out


def disjoint_union(*tris):
    rows, offset = [], 0
    for tri in tris:
        for row in tri.gluings:
            rows.append([None if g is None else (g[0] + offset, g[1]) for g in row])
        offset += tri.n
    return Triangulation(rows)


def relabel(tri, order):
    """Renumber tetrahedra: new tetrahedron ``i`` is old tetrahedron ``order[i]``."""
    new_index = {t: i for i, t in enumerate(order)}
    rows = []
    for t in order:
        rows.append([None if g is None else (new_index[g[0]], g[1]) for g in tri.gluings[t]])
    return Triangulation(rows)
