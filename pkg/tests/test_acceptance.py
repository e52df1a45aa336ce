"""
Acceptance criteria, one test each.  Every test prints a single
``PASS``/``FAIL`` line with the measured quantity before asserting.
"""
import random
import time

import pytest

import untangle.onevertex as onevertex
import untangle.pipeline as pipeline
from untangle.corpus import entries
from untangle.lp import LPSolver, brute_force_feasible, feasible
from untangle.normal import euler_functional, reconstruct_components, vertex_link_vector
from untangle.onevertex import make_one_vertex
from untangle.oracle import check_search_result, random_system
from untangle.tri import BoundaryKind, boundary_kind, count_vertices, is_one_vertex

from conftest import cycling_system

ENTRIES = entries()


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def runs():
    """Recognise the whole corpus in both arithmetic modes, recording every search and crush."""
    searches, crushes = [], []
    real_search, real_crush_p, real_crush_o = (
        pipeline.search_surface, pipeline.crush, onevertex.crush)

    def search_spy(tri, exact=False, stats=None):
        s = real_search(tri, exact=exact, stats=stats)
        searches.append((tri, s))
        return s

    def crush_spy(real):
        def inner(tri, surface):
            res = real(tri, surface)
            crushes.append((tri, surface, res))
            return res
        return inner

    mp = pytest.MonkeyPatch()
    mp.setattr(pipeline, "search_surface", search_spy)
    mp.setattr(pipeline, "crush", crush_spy(real_crush_p))
    mp.setattr(onevertex, "crush", crush_spy(real_crush_o))
    try:
        fast, exact, times = {}, {}, {}
        for e in ENTRIES:
            tri = e.triangulation()
            started = time.perf_counter()
            fast[e.name] = pipeline.recognize(tri)
            times[e.name] = time.perf_counter() - started
            exact[e.name] = pipeline.recognize(tri, exact=True)
    finally:
        mp.undo()
    return dict(fast=fast, exact=exact, times=times, searches=searches, crushes=crushes)


def test_correct_verdicts(runs, report):
    wrong = [e.name for e in ENTRIES if str(runs["fast"][e.name].result) != e.verdict]
    slowest = max(runs["times"], key=runs["times"].get)
    worst = runs["times"][slowest]
    ok = not wrong and worst < 10.0
    report("verdicts", ok, f"{len(ENTRIES) - len(wrong)}/{len(ENTRIES)} match manifest, "
           f"slowest {slowest} {worst:.2f} s (limit 10 s)" + (f", wrong: {wrong}" if wrong else ""))


def test_node_count_profile(runs, report):
    problems, exact_hits = [], 0
    for e in ENTRIES:
        if e.verdict != "NonTrivial":
            continue
        v = runs["fast"][e.name]
        for r in v.trace:
            if r.stats.nodes > 10 * r.n:
                problems.append(f"{e.name}: {r.stats.nodes} nodes at n={r.n}")
            if r.stats.quad_nodes == 0 and r.action is pipeline.Action.NO_SURFACE:
                if r.stats.nodes != 8 * r.n + 1:
                    problems.append(f"{e.name}: {r.stats.nodes} != 8n+1 at n={r.n}")
                exact_hits += 1
        if v.total_stats().nodes > 10 * e.n:
            problems.append(f"{e.name}: {v.total_stats().nodes} total nodes for input n={e.n}")
    report("node profile", not problems,
           f"all passes <= 10n, {exact_hits} quad-free passes exactly 8n+1"
           + (f"; {problems}" if problems else ""))


def test_lp_oracle_equivalence(report):
    rng = random.Random(1000)
    count, bad = 1000, 0
    started = time.perf_counter()
    for _ in range(count):
        sysm = random_system(rng, max_vars=12)
        if feasible(sysm).feasible != brute_force_feasible(sysm):
            bad += 1
    elapsed = time.perf_counter() - started
    report("LP oracle", bad == 0 and elapsed < 60.0,
           f"{count - bad}/{count} systems agree (<= 12 variables) in {elapsed:.1f} s (limit 60 s)")


def test_topology_oracle(runs, report):
    checked, problems = 0, []
    seen = set()
    for e in ENTRIES:
        tri = e.triangulation()
        if e.n <= 3 and is_one_vertex(tri):
            seen.add(str(tri.gluings))
            problems += [f"{e.name}: {p}" for p in check_search_result(tri, pipeline.search_surface(tri))]
            checked += 1
    for tri, s in runs["searches"]:
        if tri.n <= 3 and str(tri.gluings) not in seen:
            seen.add(str(tri.gluings))
            problems += [f"intermediate n={tri.n}: {p}" for p in check_search_result(tri, s)]
            checked += 1
    report("topology oracle", not problems and checked > 0,
           f"{checked} triangulations with n <= 3 agree with extreme-ray enumeration"
           + (f"; {problems}" if problems else ""))


def test_euler_functional(runs, report):
    problems, links, certs = [], 0, 0
    for e in ENTRIES:
        tri = e.triangulation()
        chi = euler_functional(tri)
        if not all(-3 <= c <= 5 for c in chi.coeffs):
            problems.append(f"{e.name}: coefficient outside [-3, 5]")
        if is_one_vertex(tri):
            link = vertex_link_vector(tri)
            comps = reconstruct_components(link, tri)
            if chi(link) != sum(c.euler for c in comps):
                problems.append(f"{e.name}: vertex link")
            links += 1
    for tri, s in runs["searches"]:
        if s is None:
            continue
        comps = reconstruct_components(s, tri)
        if euler_functional(tri)(s) != sum(c.euler for c in comps):
            problems.append(f"certificate at n={tri.n}")
        certs += 1
    report("Euler functional", not problems,
           f"coefficients in [-3, 5] on {len(ENTRIES)} entries; chi = V-E+F for "
           f"{links} vertex links and {certs} found surfaces" + (f"; {problems}" if problems else ""))


def _involution_ok(tri):
    for t, row in enumerate(tri.gluings):
        for f, g in enumerate(row):
            if g is None:
                continue
            t2, p = g
            back = tri.gluings[t2][p(f)]
            if back is None or back[0] != t or back[1] != p.inverse():
                return False
    return True


def test_crushing_contracts(runs, report):
    problems = []
    for tri, surface, res in runs["crushes"]:
        survivors = res.triangulation.n
        if res.steps > 2 * tri.n + 4 * survivors:
            problems.append(f"{res.steps} steps at n={tri.n}, {survivors} survivors")
        if survivors >= tri.n:
            problems.append(f"no decrease at n={tri.n}")
        if not _involution_ok(res.triangulation):
            problems.append(f"gluings not an involution after crushing n={tri.n}")
    n = len(runs["crushes"])
    report("crushing", not problems and n > 0,
           f"{n} crushes: strict decrease, steps <= 2n + 4*survivors, involutive gluings"
           + (f"; {problems}" if problems else ""))


def test_arithmetic_differential(runs, report):
    diffs = []
    for e in ENTRIES:
        a, b = runs["fast"][e.name], runs["exact"][e.name]
        if a.result is not b.result:
            diffs.append(f"{e.name}: verdict")
        if [r.stats.nodes for r in a.trace] != [r.stats.nodes for r in b.trace]:
            diffs.append(f"{e.name}: nodes")
        if a.certificate != b.certificate:
            diffs.append(f"{e.name}: certificate")
    promotions = sum(v.total_stats().promotions for v in runs["fast"].values())
    report("fast vs exact", not diffs,
           f"{len(ENTRIES)} entries identical in verdict, nodes and certificate "
           f"({promotions} fast-path promotions)" + (f"; {diffs}" if diffs else ""))


def test_simplex_cycling(report):
    system = cycling_system()
    r = LPSolver(system).feasible()
    expected = brute_force_feasible(system)
    ok = r.cycling_detected and r.feasible == expected
    report("cycling", ok, f"cycle detected={r.cycling_detected}, terminated after {r.pivots} "
           f"pivots with feasible={r.feasible} (enumeration says {expected})")


def test_one_vertex_conversion(report):
    problems, done = [], 0
    for e in ENTRIES:
        if e.vertices == 1:
            continue
        tri = e.triangulation()
        log = []
        out = make_one_vertex(tri, log)
        if count_vertices(out) != 1:
            problems.append(f"{e.name}: {count_vertices(out)} vertices")
        if out.n > tri.n:
            problems.append(f"{e.name}: grew to {out.n}")
        if boundary_kind(out) is not BoundaryKind.TORUS:
            problems.append(f"{e.name}: boundary lost")
        if len(log) > tri.n:
            problems.append(f"{e.name}: {len(log)} iterations")
        done += 1
    report("one-vertex conversion", not problems and done > 0,
           f"{done} multi-vertex inputs -> one vertex, torus boundary, <= n iterations"
           + (f"; {problems}" if problems else ""))
