import pytest

from untangle import Result, recognize
from untangle.corpus import load, load_manifest
from untangle.normal import (
    euler_functional, is_admissible, is_boundary_nontrivial, matching_equations,
    reconstruct_components,
)
from untangle.pipeline import Action, RecognitionError
from untangle.tri import disjoint_union, is_one_vertex, parse_gluing_table

ENTRIES = load_manifest()


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
def test_verdicts(entry):
    v = recognize(entry.triangulation())
    assert str(v.result) == entry.verdict
    assert v.input_n == entry.n
    assert v.trace and v.trace[-1].action in (
        Action.NO_SURFACE, Action.NONTRIVIAL_DISC, Action.CRUSHED)


@pytest.mark.parametrize("entry", [e for e in ENTRIES if e.verdict == "Trivial"], ids=lambda e: e.name)
def test_certificates(entry):
    v = recognize(entry.triangulation())
    if v.certificate is None:
        # every crush emptied the complement
        assert v.trace[-1].action is Action.CRUSHED
        return
    tri = v.certificate_triangulation
    s = v.certificate
    assert is_one_vertex(tri)
    assert is_admissible(s, matching_equations(tri))
    assert euler_functional(tri)(s) == 1
    comps = reconstruct_components(s, tri)
    assert len(comps) == 1 and comps[0].euler == 1
    assert is_boundary_nontrivial(s, tri)


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
def test_trace_shrinks(entry):
    v = recognize(entry.triangulation())
    sizes = [r.n for r in v.trace]
    assert all(b < a for a, b in zip(sizes, sizes[1:]))
    assert sizes[0] <= entry.n
    assert all(r.action is Action.CRUSHED for r in v.trace[:-1])
    assert v.iterations <= entry.n


def test_junk_entries_crush_before_deciding():
    v = recognize(load("trefoil-junk"))
    assert v.result is Result.NONTRIVIAL
    assert [r.action for r in v.trace] == [Action.CRUSHED, Action.NO_SURFACE]
    v = recognize(load("solid-torus-junk"))
    assert v.result is Result.TRIVIAL
    assert v.iterations == 3
    assert sum(r.action is Action.CRUSHED for r in v.trace) >= 2


def test_exact_mode_agrees():
    for name in ("trefoil-junk", "solid-torus-junk", "figure-eight"):
        a, b = recognize(load(name)), recognize(load(name), exact=True)
        assert a.result is b.result
        assert a.total_stats().nodes == b.total_stats().nodes
        assert a.certificate == b.certificate


def test_bad_inputs(solid_torus):
    with pytest.raises(RecognitionError):
        recognize(disjoint_union(solid_torus, solid_torus))
    with pytest.raises(RecognitionError):
        recognize(parse_gluing_table("1\n0 - - - -\n"))
    with pytest.raises(RecognitionError):
        recognize(parse_gluing_table("0\n"))
