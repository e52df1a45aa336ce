"""
Unknot recognition from a triangulated knot complement.

Each round makes the triangulation one-vertex, searches for a connected
normal surface with positive Euler characteristic that is not the vertex
link, and then either stops or crushes:

* no such surface: the knot is non-trivial;
* a disc whose boundary is an essential curve on the torus: the knot is
  trivial and the disc is returned as a certificate;
* a sphere, or a disc with inessential boundary: crush it and repeat on the
  torus-boundary piece (if there is none the knot is trivial).

The triangulation shrinks on every crush, so there are at most n rounds.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .crush import Extraction, crush, extract_complement
from .normal import euler_functional, is_boundary_nontrivial
from .onevertex import make_one_vertex
from .search import SearchStats, search_surface
from .simplify import simplify as simplify_tri
from .tri import BoundaryKind, boundary_kind, connected_components

__all__ = ["Result", "Action", "Round", "Verdict", "RecognitionError", "recognize"]


class RecognitionError(RuntimeError):
    pass


class Result(enum.Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "NonTrivial"

    def __str__(self):
        return self.value


class Action(enum.Enum):
    NO_SURFACE = "NoSurface"
    NONTRIVIAL_DISC = "NontrivialDisc"
    CRUSHED = "Crushed"


@dataclass
class Round:
    n: int
    stats: SearchStats
    action: Action
    euler: int | None = None


@dataclass
class Verdict:
    result: Result
    trace: list
    certificate: object = None          # NormalVector of the disc, if any
    certificate_triangulation: object = None
    input_n: int = 0
    one_vertex_log: list = field(default_factory=list)

    @property
    def is_trivial(self):
        return self.result is Result.TRIVIAL

    @property
    def iterations(self):
        return len(self.trace)

    def total_stats(self):
        total = SearchStats()
        for r in self.trace:
            total.add(r.stats)
        return total


def check_knot_complement(tri):
    if tri.n == 0:
        raise RecognitionError("empty triangulation")
    if len(connected_components(tri)) != 1:
        raise RecognitionError("triangulation is not connected")
    if boundary_kind(tri) is not BoundaryKind.TORUS:
        raise RecognitionError("triangulation does not have a single torus boundary")


def recognize(tri, simplify=False, exact=False):
    """Decide whether ``tri`` is the complement of the unknot."""
    check_knot_complement(tri)
    input_n = tri.n
    if simplify:
        tri = simplify_tri(tri)
    trace, log = [], []
    while True:
        tri = make_one_vertex(tri, log)
        stats = SearchStats()
        surface = search_surface(tri, exact=exact, stats=stats)
        if surface is None:
            trace.append(Round(tri.n, stats, Action.NO_SURFACE))
            return Verdict(Result.NONTRIVIAL, trace, input_n=input_n, one_vertex_log=log)
        chi = int(euler_functional(tri)(surface))
        if chi == 1 and is_boundary_nontrivial(surface, tri):
            trace.append(Round(tri.n, stats, Action.NONTRIVIAL_DISC, chi))
            return Verdict(Result.TRIVIAL, trace, surface, tri, input_n, log)
        if chi not in (1, 2):
            raise RecognitionError(f"found a connected surface with Euler characteristic {chi}")
        trace.append(Round(tri.n, stats, Action.CRUSHED, chi))
        kind, piece, _ = extract_complement(crush(tri, surface))
        if kind is Extraction.KNOT_IS_TRIVIAL:
            return Verdict(Result.TRIVIAL, trace, input_n=input_n, one_vertex_log=log)
        tri = piece
