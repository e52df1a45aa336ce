import pytest

from untangle.corpus import load, load_manifest
from untangle.pipeline import recognize
from untangle.simplify import (
    attach_tetrahedron, four_one, one_four, simplify, three_two, two_three,
)
from untangle.tri import (
    BoundaryKind, boundary_kind, count_vertices, euler_characteristic, serialize,
)

ENTRIES = load_manifest()
MINIMAL = [e.name for e in ENTRIES if not e.synthetic]


def _shape(tri):
    return euler_characteristic(tri), boundary_kind(tri)


def test_one_four_then_four_one(trefoil):
    cone = one_four(trefoil, 0)
    assert cone.n == trefoil.n + 3 and count_vertices(cone) == 2
    assert _shape(cone) == _shape(trefoil)
    interior = [v for v in range(cone.skeleton.num_vertices) if not cone.skeleton.vertex_boundary[v]]
    back = four_one(cone, interior[0])
    assert back is not None and back.n == trefoil.n
    assert count_vertices(back) == 1


def test_two_three_then_three_two(trefoil):
    g = trefoil.gluings[0][0]
    assert g is not None
    big = two_three(trefoil, 0, 0)
    assert big is not None and big.n == trefoil.n + 1
    assert _shape(big) == _shape(trefoil)
    shrunk = [three_two(big, k) for k in range(big.skeleton.num_edges)]
    assert any(s is not None and s.n == trefoil.n for s in shrunk)


def test_attach_adds_boundary_vertex(solid_torus):
    t, f = solid_torus.boundary_faces()[0]
    bump = attach_tetrahedron(solid_torus, t, f)
    assert bump.n == 2 and count_vertices(bump) == 2
    assert boundary_kind(bump) is BoundaryKind.TORUS
    with pytest.raises(ValueError):
        attach_tetrahedron(solid_torus, *[(t, g) for g in range(4) if solid_torus.gluings[t][g]][0])


@pytest.mark.parametrize("name", MINIMAL)
def test_minimal_entries_are_fixed_points(name):
    tri = load(name)
    assert serialize(simplify(tri)) == serialize(tri)


@pytest.mark.parametrize("name", [e.name for e in ENTRIES])
def test_simplify_preserves_shape_and_is_idempotent(name):
    tri = load(name)
    out = simplify(tri)
    assert out.n <= tri.n
    assert _shape(out) == _shape(tri)
    assert serialize(simplify(out)) == serialize(out)


def test_expanded_solid_torus_returns_to_one_tetrahedron():
    assert simplify(load("solid-torus-expanded")).n == 1


@pytest.mark.parametrize("name", [e.name for e in ENTRIES if e.synthetic])
def test_verdict_unchanged_by_simplification(name):
    entry = next(e for e in ENTRIES if e.name == name)
    assert str(recognize(load(name), simplify=True).result) == entry.verdict
