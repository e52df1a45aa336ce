import pytest

from untangle.corpus import load
from untangle.crush import CrushError, CrushResult, Extraction, crush, extract_complement
from untangle.normal import is_admissible, matching_equations
from untangle.search import search_surface
from untangle.tri import BoundaryKind, boundary_kind, disjoint_union, parse_gluing_table

BALL = parse_gluing_table("1\n0 - - - -\n")
SPHERE = parse_gluing_table("2\n0 1:0123 1:0123 1:0123 1:0123\n1 0:0123 0:0123 0:0123 0:0123\n")


def _manual(*pieces, original_n=100):
    tri = disjoint_union(*pieces)
    return CrushResult(tri, tuple(range(tri.n)), 0, original_n)


def test_solid_torus_disc_crushes_to_nothing(solid_torus):
    res = crush(solid_torus, search_surface(solid_torus))
    assert res.triangulation.n == 0
    assert extract_complement(res) == (Extraction.KNOT_IS_TRIVIAL, None, None)


def test_survivors_are_the_quad_free_tetrahedra():
    tri = load("trefoil-junk")
    s = search_surface(tri)
    assert is_admissible(s, matching_equations(tri))
    res = crush(tri, s)
    quad_free = [t for t in range(tri.n) if not any(s[7 * t + q] for q in (4, 5, 6))]
    assert list(res.provenance) == quad_free
    assert res.triangulation.n == len(quad_free) < tri.n
    assert res.steps <= 2 * tri.n + 4 * len(quad_free)


def test_crushed_piece_is_a_smaller_knot_complement():
    tri = load("trefoil-junk")
    kind, piece, prov = extract_complement(crush(tri, search_surface(tri)))
    assert kind is Extraction.REDUCED
    assert boundary_kind(piece) is BoundaryKind.TORUS
    assert piece.n < tri.n and len(prov) == piece.n


def test_extract_keeps_torus_piece_and_drops_the_rest(solid_torus):
    kind, piece, prov = extract_complement(_manual(BALL, SPHERE, solid_torus))
    assert kind is Extraction.REDUCED
    assert piece.n == 1 and prov == (3,)
    assert boundary_kind(piece) is BoundaryKind.TORUS


def test_extract_without_torus_piece_means_trivial():
    assert extract_complement(_manual(BALL, BALL))[0] is Extraction.KNOT_IS_TRIVIAL


def test_extract_rejects_two_torus_pieces(solid_torus):
    with pytest.raises(CrushError):
        extract_complement(_manual(solid_torus, solid_torus))


def test_extract_rejects_a_piece_that_did_not_shrink(solid_torus):
    with pytest.raises(CrushError):
        extract_complement(_manual(solid_torus, original_n=1))


def test_crush_rejects_quad_free_and_non_admissible(solid_torus):
    with pytest.raises(CrushError):
        crush(solid_torus, (1, 1, 1, 1, 0, 0, 0))
    with pytest.raises(CrushError):
        crush(solid_torus, (0, 0, 0, 0, 1, 1, 0))
    with pytest.raises(CrushError):
        crush(solid_torus, (0, 0, 0, 0, 1))
