"""
Crushing a triangulation along a normal surface.

Tetrahedra that carry quadrilaterals are flattened away.  Inside such a
tetrahedron with quads separating ``{a, b}`` from ``{c, d}``, face ``a`` is
pressed onto face ``b`` (and ``c`` onto ``d``) by the transposition that
swaps the two vertices on the same side.  The surviving, quad-free
tetrahedra are then reglued by following paths of faces through the
flattened ones until another survivor or the boundary is reached.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .normal import QUAD_PARTITIONS
from .tri import (
    BoundaryKind, Perm4, Triangulation, boundary_kind, connected_components,
)

__all__ = [
    "CrushError", "CrushResult", "Extraction", "crush", "extract_complement",
    "quad_slot_of",
]


class CrushError(RuntimeError):
    pass


# face x of a quad-carrying tetrahedron is pressed onto face PARTNER[slot][x]
PARTNER = {}
for _slot, ((_a, _b), (_c, _d)) in QUAD_PARTITIONS.items():
    PARTNER[_slot] = {_a: _b, _b: _a, _c: _d, _d: _c}


@dataclass
class CrushResult:
    triangulation: Triangulation
    provenance: tuple          # new tetrahedron index -> original index
    steps: int                 # tetrahedra entered while tracing paths
    original_n: int


class Extraction(enum.Enum):
    REDUCED = "reduced"
    KNOT_IS_TRIVIAL = "trivial"


def quad_slot_of(x, t):
    """The nonzero quad slot of tetrahedron ``t``, or None."""
    slots = [s for s in (4, 5, 6) if x[7 * t + s] != 0]
    if len(slots) > 1:
        raise CrushError(f"tetrahedron {t} carries two quad types")
    return slots[0] if slots else None


def crush(tri, surface):
    """
    Crush ``tri`` along the admissible integer vector ``surface``.

    Each path is traced once and both of its ends are glued together, so the
    walk enters every flattened tetrahedron at most twice overall.
    """
    n = tri.n
    if len(surface) != 7 * n:
        raise CrushError("surface dimension does not match the triangulation")
    slot = [quad_slot_of(surface, t) for t in range(n)]
    if all(s is None for s in slot):
        raise CrushError("surface has no quadrilaterals; crushing would not shrink anything")
    survivors = [t for t in range(n) if slot[t] is None]
    index = {t: i for i, t in enumerate(survivors)}
    rows = [[None] * 4 for _ in survivors]
    done = [[False] * 4 for _ in survivors]
    steps = 0
    for s in survivors:
        for f in range(4):
            if done[index[s]][f]:
                continue
            perm = Perm4()       # maps vertices of s to the current tetrahedron
            t, face = s, f
            end = None
            while True:
                g = tri.gluings[t][face]
                if g is None:
                    break
                t2, p = g
                perm = p * perm
                steps += 1
                if steps > 2 * n + 4 * len(survivors) + 4:
                    raise CrushError("face path does not terminate")
                entry = p(face)
                if slot[t2] is None:
                    end = (t2, perm)
                    break
                exit_face = PARTNER[slot[t2]][entry]
                perm = Perm4.transposition(entry, exit_face) * perm
                t, face = t2, exit_face
            i = index[s]
            done[i][f] = True
            if end is None:
                continue
            t2, perm = end
            j, f2 = index[t2], perm(f)
            if (j, f2) == (i, f):
                raise CrushError(f"face {f} of tetrahedron {s} would be glued to itself")
            rows[i][f] = (j, perm)
            rows[j][f2] = (i, perm.inverse())
            done[j][f2] = True
    return CrushResult(Triangulation(rows), tuple(survivors), steps, n)


def extract_complement(result):
    """
    Keep the torus-boundary piece of a crushed triangulation.

    Returns ``(Extraction.REDUCED, tri, provenance)`` or
    ``(Extraction.KNOT_IS_TRIVIAL, None, None)`` when no piece has torus
    boundary.  Pieces with sphere boundary or no boundary are discarded.
    """
    found = []
    for piece, members in connected_components(result.triangulation, with_maps=True):
        kind = boundary_kind(piece)
        if kind is BoundaryKind.TORUS:
            found.append((piece, tuple(result.provenance[m] for m in members)))
        elif kind is BoundaryKind.OTHER:
            raise CrushError("crushing produced a piece with unexpected boundary")
    if len(found) > 1:
        raise CrushError("crushing produced more than one torus-boundary piece")
    if not found:
        return Extraction.KNOT_IS_TRIVIAL, None, None
    piece, prov = found[0]
    if piece.n >= result.original_n:
        raise CrushError("crushing did not reduce the number of tetrahedra")
    return Extraction.REDUCED, piece, prov
