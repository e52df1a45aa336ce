"""
Independent checks used by the test suite and ``untangle verify``.

``admissible_extreme_rays`` enumerates the extreme rays of the cone
``{x >= 0, A x = 0}`` that satisfy the quadrilateral constraints, using the
double description method with exact integers.  Rays that break the
quadrilateral constraints are dropped as soon as they appear; since the
admissible part of the cone is a union of faces this does not lose any
admissible extreme ray.
"""
from __future__ import annotations

from math import gcd

from .lp import ConstraintSystem, Mark
from .normal import NormalVector, euler_functional, matching_equations, reconstruct_components

__all__ = [
    "admissible_extreme_rays", "positive_rays_with_zero_triangle", "check_search_result",
    "random_system",
]


def _quad_ok(support, n):
    for t in range(n):
        if sum(1 for s in (4, 5, 6) if support >> (7 * t + s) & 1) > 1:
            return False
    return True


def _primitive(vec):
    g = 0
    for v in vec:
        g = gcd(g, v)
    return tuple(v // g for v in vec) if g > 1 else tuple(vec)


def admissible_extreme_rays(tri, max_rays=200000):
    """Primitive integer vectors spanning the admissible extreme rays."""
    dim = 7 * tri.n
    full = (1 << dim) - 1
    rays = []
    for i in range(dim):
        v = [0] * dim
        v[i] = 1
        rays.append((tuple(v), 1 << i))
    for row in matching_equations(tri).rows:
        coef = dict(row)
        vals = [sum(c * r[0][v] for v, c in coef.items()) for r in rays]
        zero = [r for r, s in zip(rays, vals) if s == 0]
        pos = [(r, s) for r, s in zip(rays, vals) if s > 0]
        neg = [(r, s) for r, s in zip(rays, vals) if s < 0]
        zsets = [full ^ r[1] for r in rays]
        new = list(zero)
        for (p, sp) in pos:
            for (q, sq) in neg:
                support = p[1] | q[1]
                if not _quad_ok(support, tri.n):
                    continue
                common = full ^ support
                # adjacent iff no other ray vanishes wherever both do
                if any((z & common) == common for z, r in zip(zsets, rays)
                       if r is not p and r is not q):
                    continue
                vec = _primitive([-sq * a + sp * b for a, b in zip(p[0], q[0])])
                supp = 0
                for i, x in enumerate(vec):
                    if x:
                        supp |= 1 << i
                new.append((vec, supp))
        rays = new
        if len(rays) > max_rays:
            raise RuntimeError("too many intermediate rays")
    return sorted({NormalVector(r[0]) for r in rays}, key=lambda v: v.coords)


def positive_rays_with_zero_triangle(tri, rays=None):
    """Admissible extreme rays with positive Euler characteristic and a zero triangle coordinate."""
    rays = admissible_extreme_rays(tri) if rays is None else rays
    chi = euler_functional(tri)
    out = []
    for r in rays:
        if chi(r) > 0 and any(r[7 * t + v] == 0 for t in range(tri.n) for v in range(4)):
            out.append(r)
    return out


def check_search_result(tri, surface):
    """
    Compare a search outcome against ray enumeration.

    Returns a list of problems (empty when consistent): a None result must
    have no qualifying ray, and a surface must be connected with positive
    Euler characteristic.
    """
    problems = []
    candidates = positive_rays_with_zero_triangle(tri)
    if surface is None:
        if candidates:
            problems.append(f"search found nothing but {len(candidates)} qualifying rays exist")
        return problems
    if not candidates:
        problems.append("search found a surface but no qualifying ray exists")
    comps = reconstruct_components(surface, tri)
    if len(comps) != 1:
        problems.append(f"certificate has {len(comps)} components")
    if euler_functional(tri)(surface) <= 0:
        problems.append("certificate has non-positive Euler characteristic")
    return problems


def random_system(rng, max_vars=9, max_eq=3, max_ge=2, max_marks=3):
    """A small random ConstraintSystem for differential testing."""
    n = rng.randint(2, max_vars)

    def row():
        return {v: rng.randint(-3, 3) for v in rng.sample(range(n), rng.randint(1, min(4, n)))}

    sysm = ConstraintSystem(
        n,
        [(row(), rng.randint(-2, 3)) for _ in range(rng.randint(0, max_eq))],
        [(row(), rng.randint(-2, 3)) for _ in range(rng.randint(0, max_ge))],
    )
    for _ in range(rng.randint(0, max_marks)):
        sysm.push_mark(rng.randrange(n), rng.choice([Mark.ZERO, Mark.AT_LEAST_ONE]))
    return sysm
