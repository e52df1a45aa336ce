"""
Oracle suites behind ``untangle verify``.

Each suite returns ``(name, ok, detail)``.  The quick selection runs in
well under a second; the full selection repeats the same checks at the
sizes used by the test suite.
"""
from __future__ import annotations

import random
import time

from .corpus import load_manifest
from .lp import brute_force_feasible, feasible
from .normal import euler_functional, reconstruct_components, vertex_link_vector
from .oracle import check_search_result, random_system
from .search import search_surface
from .tri import BoundaryKind, boundary_kind, count_vertices, is_one_vertex

__all__ = ["SUITES", "run"]


def corpus_integrity():
    problems = []
    for e in load_manifest():
        try:
            tri = e.triangulation()
        except Exception as exc:       # any parse or IO failure is a finding
            problems.append(f"{e.name}: {exc}")
            continue
        if tri.n != e.n:
            problems.append(f"{e.name}: {tri.n} tetrahedra, manifest says {e.n}")
        if count_vertices(tri) != e.vertices:
            problems.append(f"{e.name}: vertex count differs from manifest")
        if boundary_kind(tri) is not BoundaryKind.TORUS:
            problems.append(f"{e.name}: boundary is not a torus")
    return not problems, "; ".join(problems) or "all entries parse with torus boundary"


def lp_differential(count):
    def suite():
        rng = random.Random(20240611)
        bad = 0
        for _ in range(count):
            sysm = random_system(rng)
            if feasible(sysm).feasible != brute_force_feasible(sysm):
                bad += 1
        return bad == 0, f"{count - bad}/{count} random systems agree"
    return suite


def euler_equivalence(max_n):
    def suite():
        problems, checked = [], 0
        for e in load_manifest():
            if e.n > max_n:
                continue
            tri = e.triangulation()
            chi = euler_functional(tri)
            if not all(-3 <= c <= 5 for c in chi.coeffs):
                problems.append(f"{e.name}: coefficient out of range")
            if not is_one_vertex(tri):
                continue
            link = vertex_link_vector(tri)
            comps = reconstruct_components(link, tri)
            if chi(link) != 1 or len(comps) != 1 or comps[0].euler != 1:
                problems.append(f"{e.name}: vertex link Euler characteristic mismatch")
            checked += 1
        return not problems, "; ".join(problems) or f"{checked} vertex links agree"
    return suite


def extreme_rays(max_n):
    def suite():
        problems, checked = [], 0
        for e in load_manifest():
            if e.n > max_n or e.vertices != 1:
                continue
            tri = e.triangulation()
            problems += [f"{e.name}: {p}" for p in check_search_result(tri, search_surface(tri))]
            checked += 1
        return not problems, "; ".join(problems) or f"{checked} triangulations agree with ray enumeration"
    return suite


SUITES = {
    "quick": [
        ("corpus", corpus_integrity),
        ("lp-differential", lp_differential(50)),
        ("euler", euler_equivalence(5)),
        ("extreme-rays", extreme_rays(2)),
    ],
    "full": [
        ("corpus", corpus_integrity),
        ("lp-differential", lp_differential(1000)),
        ("euler", euler_equivalence(10 ** 6)),
        ("extreme-rays", extreme_rays(3)),
    ],
}


def run(quick=False, out=print):
    ok_all = True
    for name, suite in SUITES["quick" if quick else "full"]:
        started = time.perf_counter()
        try:
            ok, detail = suite()
        except Exception as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        ms = (time.perf_counter() - started) * 1000.0
        out(f"{'PASS' if ok else 'FAIL'}  {name:16s} {detail} ({ms:.0f} ms)")
        ok_all &= ok
    return ok_all
