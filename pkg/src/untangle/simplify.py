"""
Local moves on triangulations and a small greedy simplifier.

The moves that build larger triangulations (1-4, 2-3, attaching a
tetrahedron to a boundary triangle) are used to manufacture test inputs.
``simplify`` only ever shrinks: it applies 3-2 moves, 2-0 edge moves and
4-1 moves until none applies.  It is a convenience pre-pass, far weaker than
the simplification found in dedicated topology software.

Most moves go through ``_rebuild``: a region of tetrahedra is removed and
replaced by new tetrahedra described by vertex labels.  Labels are shared
across faces inside the region, so new faces are glued by matching label
sets and outer faces inherit the gluings of the old region boundary.
"""
from __future__ import annotations

from .tri import (
    EDGES, InvalidTriangulation, Perm4, Triangulation, TriangulationError,
    boundary_kind, euler_characteristic,
)

__all__ = [
    "one_four", "two_three", "three_two", "four_one", "two_zero_edge",
    "attach_tetrahedron", "simplify",
]


class _MoveRejected(Exception):
    pass


def _rebuild(tri, region, interior, new_tets):
    """
    Replace ``region`` by ``new_tets``.

    ``interior`` lists faces ``(r, f)`` of region tetrahedra that lie inside
    the region; they are used to unify vertex labels.  ``new_tets`` is a
    function from the label map ``{(r, v): label}`` to a list of 4-tuples of
    labels.
    """
    region = list(region)
    rset = set(region)
    parent = {(r, v): (r, v) for r in region for v in range(4)}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    interior = set(interior)
    for r, f in interior:
        s, p = tri.gluings[r][f]
        if s not in rset or (s, p(f)) not in interior:
            raise _MoveRejected("interior face leaves the region")
        for v in range(4):
            if v != f:
                a, b = find((r, v)), find((s, p(v)))
                if a != b:
                    parent[a] = b
    label = {k: find(k) for k in parent}
    for r in region:
        if len({label[r, v] for v in range(4)}) != 4:
            raise _MoveRejected("region tetrahedron has repeated labels")
    tets = new_tets(label)

    # outer faces of the old region, keyed by their label sets
    outer = {}
    for r in region:
        for f in range(4):
            if (r, f) in interior:
                continue
            key = frozenset(label[r, v] for v in range(4) if v != f)
            if key in outer:
                raise _MoveRejected("two outer faces share a label set")
            outer[key] = (r, f)

    keep = [t for t in range(tri.n) if t not in rset]
    index = {t: i for i, t in enumerate(keep)}
    base = len(keep)
    rows = [[None] * 4 for _ in range(base + len(tets))]
    for t in keep:
        for f, g in enumerate(tri.gluings[t]):
            if g is not None and g[0] not in rset:
                rows[index[t]][f] = (index[g[0]], g[1])

    # new face -> (new tet, face, map from new positions to old positions)
    faces_by_key = {}
    for i, labs in enumerate(tets):
        if len(set(labs)) != 4:
            raise _MoveRejected("new tetrahedron has repeated labels")
        for k in range(4):
            key = frozenset(labs[j] for j in range(4) if j != k)
            faces_by_key.setdefault(key, []).append((i, k))
    matched = set()
    old_face_home = {}
    for key, items in faces_by_key.items():
        if len(items) == 2:
            (i, k), (j, l) = items
            img = [0] * 4
            for a in range(4):
                img[a] = tets[j].index(tets[i][a]) if a != k else l
            p = Perm4(img)
            rows[base + i][k] = (base + j, p)
            rows[base + j][l] = (base + i, p.inverse())
        elif len(items) == 1:
            if key not in outer:
                raise _MoveRejected("new face has no matching outer face")
            i, k = items[0]
            r, f = outer[key]
            img = [0] * 4
            for a in range(4):
                img[a] = f if a == k else next(v for v in range(4) if label[r, v] == tets[i][a])
            old_face_home[r, f] = (i, k, Perm4(img))
            matched.add(key)
        else:
            raise _MoveRejected("label set shared by more than two new faces")
    if len(matched) != len(outer):
        raise _MoveRejected("outer faces left unmatched")
    for (r, f), (i, k, phi) in old_face_home.items():
        g = tri.gluings[r][f]
        if g is None:
            continue
        s, p = g
        if s in rset:
            j, l, psi = old_face_home[s, p(f)]
            rows[base + i][k] = (base + j, psi.inverse() * p * phi)
        else:
            q = p * phi
            rows[base + i][k] = (index[s], q)
            rows[index[s]][p(f)] = (base + i, q.inverse())
    try:
        return Triangulation(rows)
    except TriangulationError as exc:
        raise _MoveRejected(str(exc)) from exc


def _attempt(fn, *args):
    try:
        return fn(*args)
    except _MoveRejected:
        return None


def one_four(tri, t):
    """Cone tetrahedron ``t`` from a new interior vertex."""
    def build(label):
        centre = ("centre", t)
        out = []
        for i in range(4):
            labs = [label[t, v] for v in range(4)]
            labs[i] = centre
            out.append(tuple(labs))
        return out
    return _rebuild(tri, [t], [], build)


def two_three(tri, t, f):
    """Replace the two tetrahedra meeting at face ``f`` of ``t`` by three."""
    g = tri.gluings[t][f]
    if g is None or g[0] == t:
        return None
    u, p = g

    def build(label):
        top, bottom = label[t, f], label[u, p(f)]
        rim = [label[t, v] for v in range(4) if v != f]
        return [(top, bottom) + tuple(x for x in rim if x != k) for k in rim]
    return _attempt(_rebuild, tri, [t, u], [(t, f), (u, p(f))], build)


def _edge_star(tri, k):
    return tri.skeleton.edges[k]


def three_two(tri, k):
    """Remove the degree-three interior edge class ``k``, if possible."""
    sk = tri.skeleton
    if sk.edge_boundary[k]:
        return None
    emb = _edge_star(tri, k)
    if len(emb) != 3 or len({t for t, _, _ in emb}) != 3:
        return None
    interior = []
    for t, a, b in emb:
        interior += [(t, v) for v in range(4) if v not in (a, b)]
    t0, a0, b0 = emb[0]

    def build(label):
        top, bottom = label[t0, a0], label[t0, b0]
        rim = sorted({label[t, v] for t, a, b in emb for v in range(4) if v not in (a, b)}, key=repr)
        if len(rim) != 3 or top in rim or bottom in rim:
            raise _MoveRejected("edge star is degenerate")
        return [(top,) + tuple(rim), (bottom,) + tuple(rim)]
    return _attempt(_rebuild, tri, [t for t, _, _ in emb], interior, build)


def four_one(tri, v):
    """Remove an interior vertex class ``v`` of degree four, if possible."""
    sk = tri.skeleton
    if sk.vertex_boundary[v]:
        return None
    corners = sk.vertices[v]
    if len(corners) != 4 or len({t for t, _ in corners}) != 4:
        return None
    interior = [(t, f) for t, c in corners for f in range(4) if f != c]
    t0, c0 = corners[0]

    def build(label):
        outer = sorted({label[t, w] for t, c in corners for w in range(4) if w != c}, key=repr)
        if len(outer) != 4:
            raise _MoveRejected("vertex star is degenerate")
        return [tuple(outer)]
    return _attempt(_rebuild, tri, [t for t, _ in corners], interior, build)


def two_zero_edge(tri, k):
    """
    Flatten the two tetrahedra around the degree-two interior edge ``k``.

    The two edges opposite ``k`` are merged into one and the outer faces are
    glued across.  Rejected when the opposite edges coincide or both lie on
    the boundary, or when an outer face is glued back into the pair.
    """
    sk = tri.skeleton
    if sk.edge_boundary[k]:
        return None
    emb = sk.edges[k]
    if len(emb) != 2 or emb[0][0] == emb[1][0]:
        return None
    (t0, a0, b0), (t1, a1, b1) = emb
    c0, d0 = [v for v in range(4) if v not in (a0, b0)]
    opp0 = sk.edge_class(t0, c0, d0)
    c1d1 = [v for v in range(4) if v not in (a1, b1)]
    opp1 = sk.edge_class(t1, *c1d1)
    if opp0 == opp1 or (sk.edge_boundary[opp0] and sk.edge_boundary[opp1]):
        return None
    for t, a, b in emb:
        for f in (a, b):
            g = tri.gluings[t][f]
            if g is not None and g[0] in (t0, t1):
                return None
    # positions of t0's vertices inside t1
    g = tri.gluings[t0][c0]
    if g is None or g[0] != t1:
        return None
    p = g[1]
    h = tri.gluings[t0][d0]
    if h is None or h[0] != t1:
        return None
    q = h[1]
    tau = Perm4(_tau(a0, b0, c0, d0, p, q))
    keep = [t for t in range(tri.n) if t not in (t0, t1)]
    index = {t: i for i, t in enumerate(keep)}
    rows = [[None if g is None else (index.get(g[0]), g[1]) for g in tri.gluings[t]] for t in keep]
    for x0 in (a0, b0):
        x1 = tau(x0)
        g0, g1 = tri.gluings[t0][x0], tri.gluings[t1][x1]
        if g0 is None and g1 is None:
            continue
        if g0 is None or g1 is None:
            s, r = g1 if g0 is None else g0
            rows[index[s]][r(x1 if g0 is None else x0)] = None
            continue
        (s0, r0), (s1, r1) = g0, g1
        # old positions of t0 -> s0, new map s0 -> s1 through tau
        perm = r1 * tau * r0.inverse()
        rows[index[s0]][r0(x0)] = (index[s1], perm)
        rows[index[s1]][r1(x1)] = (index[s0], perm.inverse())
    try:
        return Triangulation(rows)
    except TriangulationError:
        return None


def _tau(a0, b0, c0, d0, p, q):
    img = [0] * 4
    img[a0], img[b0] = p(a0), p(b0)
    img[d0] = p(d0)          # face opposite c0 contains d0
    img[c0] = q(c0)          # face opposite d0 contains c0
    if q(a0) != img[a0] or q(b0) != img[b0] or len(set(img)) != 4:
        raise InvalidTriangulation("degree-two edge gluings are inconsistent")
    return img


def attach_tetrahedron(tri, t, f):
    """Glue a new tetrahedron onto boundary face ``f`` of ``t`` along its face 0."""
    if tri.gluings[t][f] is not None:
        raise ValueError("face is not on the boundary")
    rows = [list(row) for row in tri.gluings]
    p = Perm4.transposition(0, f)
    rows[t][f] = (tri.n, p)
    rows.append([(t, p.inverse()), None, None, None])
    return Triangulation(rows)


def _same_shape(a, b):
    return (euler_characteristic(a) == euler_characteristic(b)
            and a.skeleton.num_vertices == b.skeleton.num_vertices
            and boundary_kind(a) is boundary_kind(b))


def _one_move(tri):
    sk = tri.skeleton
    for v in range(sk.num_vertices):
        out = four_one(tri, v)
        if out is not None and euler_characteristic(out) == euler_characteristic(tri) \
                and boundary_kind(out) is boundary_kind(tri):
            return out
    for k in range(sk.num_edges):
        out = three_two(tri, k)
        if out is not None and _same_shape(out, tri):
            return out
    for k in range(sk.num_edges):
        try:
            out = two_zero_edge(tri, k)
        except InvalidTriangulation:
            out = None
        if out is not None and _same_shape(out, tri):
            return out
    return None


def simplify(tri):
    """Apply shrinking moves greedily until none applies."""
    while True:
        out = _one_move(tri)
        if out is None:
            return tri
        tri = out
