"""
Reducing a knot complement triangulation to a single vertex.

An edge joining two distinct vertices is grown into a subcomplex by
absorbing triangles that meet it along two or more edges and tetrahedra
whose four faces have all been absorbed.  The frontier of a regular
neighbourhood of that subcomplex is a normal surface, and one of its disc
components is not a vertex link; crushing that disc removes at least one
tetrahedron and at least one vertex.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .crush import Extraction, crush, extract_complement
from .normal import NormalVector, matching_equations, quad_slot_for_pair, reconstruct_components
from .tri import EDGES, is_one_vertex, parse_gluing_table

__all__ = [
    "Subcomplex", "OneVertexError", "pick_seed_edge", "expand", "link_surface",
    "make_one_vertex", "standard_solid_torus",
]

_SOLID_TORUS = "1\n0 - - 0:1230 0:3012\n"


def standard_solid_torus():
    """The one-tetrahedron solid torus."""
    return parse_gluing_table(_SOLID_TORUS)


class OneVertexError(RuntimeError):
    pass


@dataclass
class Subcomplex:
    vertices: set = field(default_factory=set)
    edges: set = field(default_factory=set)
    faces: set = field(default_factory=set)
    tetrahedra: set = field(default_factory=set)


def pick_seed_edge(tri):
    """
    An edge class joining two distinct vertex classes.

    With two or more boundary vertices the edge is taken on the boundary;
    otherwise it joins the boundary vertex to an interior one.  The lowest
    qualifying class index is returned.
    """
    sk = tri.skeleton
    if sk.num_vertices < 2:
        raise OneVertexError("triangulation already has a single vertex")
    nbdry = sum(sk.vertex_boundary)
    for k in range(sk.num_edges):
        u, v = sk.edge_endpoints(k)
        if u == v:
            continue
        if nbdry >= 2:
            if sk.edge_boundary[k]:
                return k
        elif sk.vertex_boundary[u] != sk.vertex_boundary[v]:
            return k
    raise OneVertexError("no suitable seed edge")


def _face_edges(tri, k):
    sk = tri.skeleton
    t, f = sk.faces[k][0]
    return [sk.edge_class(t, a, b) for a, b in EDGES if f not in (a, b)]


def expand(tri, e):
    """Grow ``{e}`` to the smallest subcomplex closed under both absorption rules."""
    sk = tri.skeleton
    face_edges = [_face_edges(tri, k) for k in range(sk.num_faces)]
    faces_at_edge = [[] for _ in range(sk.num_edges)]
    for k, es in enumerate(face_edges):
        for x in set(es):
            faces_at_edge[x].append(k)
    tets_at_face = [sorted({t for t, _ in emb}) for emb in sk.faces]

    sub = Subcomplex()
    face_queue, tet_queue = deque(), deque()

    def add_edge(x):
        if x in sub.edges:
            return
        sub.edges.add(x)
        sub.vertices.update(sk.edge_endpoints(x))
        face_queue.extend(faces_at_edge[x])

    def add_face(k):
        if k in sub.faces:
            return
        sub.faces.add(k)
        for x in face_edges[k]:
            add_edge(x)
        tet_queue.extend(tets_at_face[k])

    add_edge(e)
    while face_queue or tet_queue:
        if face_queue:
            k = face_queue.popleft()
            if k not in sub.faces and sum(x in sub.edges for x in face_edges[k]) >= 2:
                add_face(k)
            continue
        t = tet_queue.popleft()
        if t not in sub.tetrahedra and all(sk.face_of[t][f] in sub.faces for f in range(4)):
            sub.tetrahedra.add(t)
    return sub


def link_surface(tri, sub):
    """Normal coordinates of the frontier of a regular neighbourhood of ``sub``."""
    sk = tri.skeleton
    x = [0] * (7 * tri.n)
    for t in range(tri.n):
        if t in sub.tetrahedra:
            continue
        faces = [f for f in range(4) if sk.face_of[t][f] in sub.faces]
        if len(faces) > 1:
            raise OneVertexError(f"tetrahedron {t} meets the subcomplex in several faces")
        covered = set()
        if faces:
            f = faces[0]
            x[7 * t + f] += 1
            covered.update(v for v in range(4) if v != f)
        else:
            edges = [(a, b) for a, b in EDGES if sk.edge_class(t, a, b) in sub.edges]
            if len(edges) == 2 and set(edges[0]) & set(edges[1]):
                raise OneVertexError(f"tetrahedron {t} has two adjacent member edges")
            if len(edges) > 2:
                raise OneVertexError(f"tetrahedron {t} has too many member edges")
            for a, b in edges:
                x[7 * t + quad_slot_for_pair(a, b)] += 1
                covered.update((a, b))
        for v in range(4):
            if v not in covered and sk.vertex_of[t][v] in sub.vertices:
                x[7 * t + v] += 1
    vec = NormalVector(x)
    if not matching_equations(tri).satisfied_by(vec):
        raise OneVertexError("link of the subcomplex fails the matching equations")
    return vec


def make_one_vertex(tri, log=None):
    """
    Return a one-vertex triangulation of the same knot complement.

    ``log`` (a list) receives ``(n_before, n_after)`` for every crush.  If a
    crush leaves no torus-boundary piece the knot is trivial and the
    one-tetrahedron solid torus is returned.
    """
    while not is_one_vertex(tri):
        e = pick_seed_edge(tri)
        sub = expand(tri, e)
        link = link_surface(tri, sub)
        comps = reconstruct_components(link, tri)
        disc = next((c for c in comps if c.euler == 1 and c.num_quads > 0), None)
        if disc is None:
            raise OneVertexError("edge link has no disc component that could be crushed")
        before = tri.n
        kind, piece, _ = extract_complement(crush(tri, disc.vector))
        if kind is Extraction.KNOT_IS_TRIVIAL:
            piece = standard_solid_torus()
        if log is not None:
            log.append((before, piece.n))
        tri = piece
    return tri
