import random
from fractions import Fraction

import pytest

from untangle.lp import (
    ConstraintSystem, LPSolver, Mark, PivotLimitExceeded, brute_force_feasible, feasible,
)
from untangle.normal import euler_functional, matching_equations
from untangle.oracle import random_system

from conftest import cycling_system


def test_contradictory_marks():
    s = ConstraintSystem(2)
    s.push_mark(1, Mark.ZERO)
    s.push_mark(1, Mark.AT_LEAST_ONE)
    assert not feasible(s).feasible
    assert not brute_force_feasible(s)


def test_empty_system():
    r = feasible(ConstraintSystem(0))
    assert r.feasible and r.witness == ()


def test_small_examples():
    s = ConstraintSystem(2, [({0: 1, 1: 1}, 0)])
    s.push_mark(0, Mark.AT_LEAST_ONE)
    assert not feasible(s).feasible and not brute_force_feasible(s)
    s = ConstraintSystem(2, [({0: 1, 1: -1}, 0)])
    s.push_mark(0, Mark.AT_LEAST_ONE)
    r = feasible(s)
    assert r.feasible and brute_force_feasible(s)
    assert r.witness[0] >= 1 and r.witness[0] == r.witness[1]


def test_solid_torus_with_zero_triangle(solid_torus):
    s = ConstraintSystem.for_surfaces(matching_equations(solid_torus), euler_functional(solid_torus))
    s.push_mark(0, Mark.ZERO)
    r = feasible(s)
    assert r.feasible and brute_force_feasible(s)
    assert s.is_satisfied_by(r.witness)


def test_at_least_one_flips_feasibility():
    s = ConstraintSystem(2, [({0: 1, 1: 1}, 1)])
    solver = LPSolver(s)
    assert solver.feasible().feasible
    solver.push(0, Mark.AT_LEAST_ONE)
    assert solver.feasible().feasible
    solver.push(1, Mark.AT_LEAST_ONE)
    assert not solver.feasible().feasible
    solver.pop()
    assert solver.feasible().witness == (1, 0)


def test_push_pop_restores_state(trefoil):
    s = ConstraintSystem.for_surfaces(matching_equations(trefoil), euler_functional(trefoil))
    before = s.dump()
    solver = LPSolver(s)
    solver.feasible()
    tableau = solver._state.T.copy()
    solver.push(3, Mark.ZERO)
    solver.push(9, Mark.AT_LEAST_ONE)
    solver.feasible()
    assert s.dump() != before
    solver.pop()
    solver.pop()
    assert s.dump() == before
    assert (solver._state.T == tableau).all()
    with pytest.raises(IndexError):
        s.pop_mark()


def test_dump_format():
    s = ConstraintSystem(3, [({2: Fraction(1, 2), 0: -1}, 0)], [({1: 1}, Fraction(3, 4))])
    s.push_mark(2, Mark.ZERO)
    assert s.dump() == "vars 3\neq -1*x0 1/2*x2 = 0\nge 1*x1 >= 3/4\nmark x2 zero\n"


def test_differential_against_brute_force():
    rng = random.Random(99)
    for _ in range(300):
        s = random_system(rng)
        r = feasible(s)
        assert r.feasible == brute_force_feasible(s), s.dump()
        if r.feasible:
            assert s.is_satisfied_by(r.witness)


def test_incremental_matches_fresh_solver():
    rng = random.Random(5)
    for _ in range(100):
        s = random_system(rng, max_marks=0)
        solver = LPSolver(s.copy())
        solver.feasible()
        for _ in range(4):
            var, mark = rng.randrange(s.nvars), rng.choice([Mark.ZERO, Mark.AT_LEAST_ONE])
            solver.push(var, mark)
            s.push_mark(var, mark)
            assert solver.feasible().feasible == feasible(s).feasible


def _promoting_system():
    rng = random.Random(7)
    for _ in range(200):
        s = ConstraintSystem(8, [({v: rng.randint(-4096, 4096) for v in range(8)},
                                  rng.randint(-4096, 4096)) for _ in range(4)])
        solver = LPSolver(s)
        if not solver._big:
            r = solver.feasible()
            if r.promotions:
                return s, r
    raise AssertionError("no promoting system found")


def test_overflow_promotes_and_agrees_with_exact_mode():
    s, fast = _promoting_system()
    exact = LPSolver(s, exact=True).feasible()
    assert fast.exact_mode and exact.exact_mode
    assert (fast.feasible, fast.witness, fast.pivots) == (exact.feasible, exact.witness, exact.pivots)
    assert fast.feasible == brute_force_feasible(s)


def test_cycling_instance_falls_back_to_bland():
    trace = []
    with pytest.raises(PivotLimitExceeded):
        LPSolver(cycling_system()).feasible(detect_cycles=False, max_pivots=60, trace=trace)
    assert len(set(trace)) < len(trace)
    r = LPSolver(cycling_system()).feasible()
    assert r.cycling_detected
    assert r.feasible == brute_force_feasible(cycling_system()) is False


def test_brute_force_size_guard():
    with pytest.raises(ValueError):
        brute_force_feasible(ConstraintSystem(30, [({0: 1}, 1)]))
