"""
Branch and bound search for a normal surface with positive Euler
characteristic that is not the vertex link.

The root system is ``x >= 0, A x = 0, chi(x) >= 1``.  Triangle branching
walks a caterpillar-shaped binary tree: node ``k`` either fixes triangle
coordinate ``k`` to zero (a leaf, after which quadrilateral branching
starts) or requires it to be at least one and moves on.  With ``4n``
triangle coordinates the tree has ``4n + 1`` leaves and ``8n + 1`` nodes.
The last leaf (every triangle coordinate positive) is never searched since
a solution there would not need a zero triangle coordinate.

Quadrilateral branching decides one tetrahedron at a time between three
children: ``a*`` (only the first quad type may be nonzero), ``c`` (second
type at least one) and ``d`` (third type at least one).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .lp import ConstraintSystem, LPSolver, Mark
from .normal import (
    euler_functional, is_admissible, matching_equations, scale_to_primitive,
)

__all__ = [
    "QuadChoice", "BranchState", "SearchStats", "find_admissible_positive",
    "order_quad_branches", "refine_support", "extract_surface", "search_surface",
]


class QuadChoice:
    A_STAR = "a*"
    C = "c"
    D = "d"
    ALL = ("a*", "c", "d")


def choice_marks(t, choice):
    """Marks realising a quad branch on tetrahedron ``t``."""
    q1, q2, q3 = 7 * t + 4, 7 * t + 5, 7 * t + 6
    if choice == QuadChoice.A_STAR:
        return [(q2, Mark.ZERO), (q3, Mark.ZERO)]
    if choice == QuadChoice.C:
        return [(q1, Mark.ZERO), (q3, Mark.ZERO), (q2, Mark.AT_LEAST_ONE)]
    if choice == QuadChoice.D:
        return [(q1, Mark.ZERO), (q2, Mark.ZERO), (q3, Mark.AT_LEAST_ONE)]
    raise ValueError(f"unknown quad choice {choice!r}")


@dataclass
class BranchState:
    n: int
    triangle_index: int | None = None
    quad_decisions: list = field(default_factory=list)

    @property
    def undecided(self):
        done = {t for t, _ in self.quad_decisions}
        return [t for t in range(self.n) if t not in done]

    def marks(self):
        """Marks implied by the decisions, in push order."""
        out = []
        if self.triangle_index is not None:
            for k in range(self.triangle_index):
                out.append((_tri_var(k), Mark.AT_LEAST_ONE))
            out.append((_tri_var(self.triangle_index), Mark.ZERO))
        for t, choice in self.quad_decisions:
            out.extend(choice_marks(t, choice))
        return out


@dataclass
class SearchStats:
    nodes: int = 0
    quad_nodes: int = 0
    feasibility_tests: int = 0
    pivots: int = 0
    promotions: int = 0
    cycles: int = 0
    time_ms: float = 0.0

    def add(self, other):
        for name in ("nodes", "quad_nodes", "feasibility_tests", "pivots",
                     "promotions", "cycles", "time_ms"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        return self


def _tri_var(k):
    return 7 * (k // 4) + k % 4


class _Runner:
    """Wraps an incremental solver and keeps the counters honest."""

    def __init__(self, system, exact, stats):
        self.solver = LPSolver(system, exact=exact)
        self.stats = stats

    def test(self):
        r = self.solver.feasible()
        self.stats.feasibility_tests += 1
        self.stats.pivots += r.pivots
        self.stats.promotions += r.promotions
        self.stats.cycles += int(r.cycling_detected)
        return r

    def push(self, marks):
        for var, mark in marks:
            self.solver.push(var, mark)

    def pop(self, count):
        for _ in range(count):
            self.solver.pop()

    def probe(self, marks):
        self.push(marks)
        try:
            return self.test().feasible
        finally:
            self.pop(len(marks))


def order_quad_branches(state, runner):
    """
    Pick the undecided tetrahedron with the fewest feasible children.

    Returns ``(t, feasible_children)``.  A tetrahedron with no feasible
    child is returned as soon as it is found; ties go to the lowest index.
    """
    best = None
    for t in state.undecided:
        feas = tuple(c for c in QuadChoice.ALL if runner.probe(choice_marks(t, c)))
        if best is None or len(feas) < len(best[1]):
            best = (t, feas)
        if not feas:
            break
    return best


def _quad_constraints_hold(x, n):
    return all(sum(1 for s in (4, 5, 6) if x[7 * t + s] != 0) <= 1 for t in range(n))


def _quad_search(runner, state, witness, forced):
    if _quad_constraints_hold(witness, state.n):
        return witness
    if not state.undecided:
        return witness
    if forced is not None:
        t = forced
        children = tuple(c for c in QuadChoice.ALL if runner.probe(choice_marks(t, c)))
    else:
        t, children = order_quad_branches(state, runner)
    for choice in children:
        marks = choice_marks(t, choice)
        runner.push(marks)
        runner.stats.nodes += 1
        runner.stats.quad_nodes += 1
        state.quad_decisions.append((t, choice))
        r = runner.test()
        found = _quad_search(runner, state, r.witness, None) if r.feasible else None
        state.quad_decisions.pop()
        runner.pop(len(marks))
        if found is not None:
            return found
    return None


def find_admissible_positive(tri, matching=None, chi=None, exact=False, stats=None):
    """
    Search for ``p >= 0`` with ``A p = 0``, ``chi(p) >= 1``, the quadrilateral
    constraints and at least one zero triangle coordinate.

    Returns a tuple of Fractions, or None when no such point exists.
    Counters are accumulated into ``stats`` if given.
    """
    matching = matching or matching_equations(tri)
    chi = chi or euler_functional(tri)
    stats = stats if stats is not None else SearchStats()
    started = time.perf_counter()
    runner = _Runner(ConstraintSystem.for_surfaces(matching, chi), exact, stats)
    state = BranchState(tri.n)
    try:
        return _triangle_search(runner, state)
    finally:
        stats.time_ms += (time.perf_counter() - started) * 1000.0


def _triangle_search(runner, state):
    stats = runner.stats
    stats.nodes += 1
    if not runner.test().feasible:
        return None
    try:
        for k in range(4 * state.n):
            var = _tri_var(k)
            runner.push([(var, Mark.ZERO)])
            stats.nodes += 1
            state.triangle_index = k
            r = runner.test()
            if r.feasible:
                found = _quad_search(runner, state, r.witness, var // 7)
                if found is not None:
                    return found
            runner.pop(1)
            state.triangle_index = None
            runner.push([(var, Mark.AT_LEAST_ONE)])
            stats.nodes += 1
            if not runner.test().feasible:
                return None
        return None
    finally:
        runner.pop(len(runner.solver.system.marks))


def refine_support(p, tri, matching=None, chi=None, exact=False, stats=None):
    """
    Shrink the support of ``p`` greedily while keeping ``chi(x) >= 1``.

    Zeros of ``p`` are kept, then each remaining coordinate is tried at zero
    in increasing order and kept at zero whenever the system stays feasible.
    """
    matching = matching or matching_equations(tri)
    chi = chi or euler_functional(tri)
    stats = stats if stats is not None else SearchStats()
    runner = _Runner(ConstraintSystem.for_surfaces(matching, chi), exact, stats)
    for i, v in enumerate(p):
        if v == 0:
            runner.push([(i, Mark.ZERO)])
    r = runner.test()
    if not r.feasible:
        raise AssertionError("refinement started from an infeasible point")
    q = r.witness
    for i, v in enumerate(p):
        if v == 0:
            continue
        runner.push([(i, Mark.ZERO)])
        r = runner.test()
        if r.feasible:
            q = r.witness
        else:
            runner.pop(1)
    return tuple(Fraction(c) for c in q)


def extract_surface(q, tri, matching=None, chi=None, check=True):
    """Scale ``q`` to the primitive integer vector of the surface it represents."""
    s = scale_to_primitive(q)
    if check:
        matching = matching or matching_equations(tri)
        chi = chi or euler_functional(tri)
        if not is_admissible(s, matching):
            raise AssertionError("extracted surface is not admissible")
        if chi(s) < 1:
            raise AssertionError("extracted surface has non-positive Euler characteristic")
        if all(s[_tri_var(k)] != 0 for k in range(4 * tri.n)):
            raise AssertionError("extracted surface has no zero triangle coordinate")
    return s


def search_surface(tri, exact=False, stats=None):
    """Search, refine and extract in one call.  Returns a NormalVector or None."""
    matching = matching_equations(tri)
    chi = euler_functional(tri)
    stats = stats if stats is not None else SearchStats()
    p = find_admissible_positive(tri, matching, chi, exact=exact, stats=stats)
    if p is None:
        return None
    started = time.perf_counter()
    q = refine_support(p, tri, matching, chi, exact=exact, stats=stats)
    stats.time_ms += (time.perf_counter() - started) * 1000.0
    return extract_surface(q, tri, matching, chi)
