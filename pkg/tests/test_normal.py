from fractions import Fraction

import pytest

from untangle.normal import (
    NormalVector, ReconstructionError, boundary_arc_counts, euler_functional,
    is_admissible, is_boundary_nontrivial, matching_equations, quads_meeting_edge,
    reconstruct_components, scale_to_primitive, vertex_link_vector,
)
from untangle.search import search_surface


def test_solid_torus_matching_rows(solid_torus):
    m = matching_equations(solid_torus)
    assert m.nvars == 7
    assert m.rows == (
        ((0, 1), (1, -1)),
        ((1, 1), (2, -1), (4, -1), (6, 1)),
        ((0, -1), (3, 1), (4, 1), (6, -1)),
    )


def test_row_count_is_three_per_internal_face(corpus):
    for _, tri in corpus.values():
        sk = tri.skeleton
        internal = sum(not b for b in sk.face_boundary)
        m = matching_equations(tri)
        assert len(m) <= 3 * internal
        assert all(1 <= len(r) <= 4 for r in m.rows)


def test_solid_torus_euler_coefficients(solid_torus):
    assert euler_functional(solid_torus).coeffs == (1, 0, 1, -1, -1, 0, 1)


def test_quads_meeting_edge():
    assert quads_meeting_edge(0, 1) == (5, 6)
    assert quads_meeting_edge(2, 3) == (5, 6)
    assert quads_meeting_edge(1, 3) == (4, 6)


def test_vertex_link_has_euler_one(corpus):
    for entry, tri in corpus.values():
        if entry.vertices != 1:
            with pytest.raises(ValueError):
                vertex_link_vector(tri)
            continue
        link = vertex_link_vector(tri)
        assert is_admissible(link, matching_equations(tri))
        assert euler_functional(tri)(link) == 1
        comps = reconstruct_components(link, tri)
        assert len(comps) == 1 and comps[0].euler == 1


def test_two_links_give_two_components(trefoil):
    link = vertex_link_vector(trefoil)
    comps = reconstruct_components(link * 2, trefoil)
    assert [c.euler for c in comps] == [1, 1]


def test_disconnected_boundary_curve_counts(solid_torus):
    s = search_surface(solid_torus)
    assert is_boundary_nontrivial(s, solid_torus)
    link = vertex_link_vector(solid_torus)
    assert not is_boundary_nontrivial(link, solid_torus)
    counts = boundary_arc_counts(link, solid_torus)
    assert len(counts) == 6 and len(set(counts)) == 1


def test_reconstruction_rejects_unmatched_vector(solid_torus):
    with pytest.raises(ReconstructionError):
        reconstruct_components(NormalVector((1, 0, 0, 0, 0, 0, 0)), solid_torus)


def test_scale_to_primitive():
    v = scale_to_primitive([Fraction(2, 3), Fraction(4, 3), 0, 0, 0, 0, 2])
    assert v.coords == (1, 2, 0, 0, 0, 0, 3)
    assert scale_to_primitive([4, 6, 0, 0, 0, 0, 0]).coords == (2, 3, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        scale_to_primitive([0] * 7)


def test_vector_text_round_trip():
    v = NormalVector((1, 0, 2, 0, 0, 3, 0))
    assert NormalVector.from_line(v.to_line()) == v
    assert v.support() == {0, 2, 5}
    assert v.is_integral()
    with pytest.raises(ValueError):
        NormalVector((1, 2, 3))


def test_euler_coefficient_range(corpus):
    for _, tri in corpus.values():
        assert all(-3 <= c <= 5 for c in euler_functional(tri).coeffs)
