"""
Follow one recognition from start to finish.

solid-torus-junk is a nine-tetrahedron solid torus that was deliberately
inflated with 2-3 moves.  The search first finds surfaces that are not the
disc we want, so the pipeline crushes them away and searches again.

    python demos/walkthrough.py [corpus-name]
"""
import sys

from untangle.corpus import load
from untangle.normal import euler_functional, reconstruct_components
from untangle.pipeline import recognize
from untangle.tri import count_vertices


def main(name="solid-torus-junk"):
    tri = load(name)
    print(f"{name}: {tri.n} tetrahedra, {count_vertices(tri)} vertices")
    v = recognize(tri)
    for before, after in v.one_vertex_log:
        print(f"  one-vertex crush  {before} -> {after}")
    for i, r in enumerate(v.trace, 1):
        s = r.stats
        chi = "" if r.euler is None else f" chi={r.euler}"
        print(f"  round {i}: n={r.n:2d} nodes={s.nodes:3d} (quad {s.quad_nodes}) "
              f"lp tests={s.feasibility_tests:3d} pivots={s.pivots:4d}  {r.action.value}{chi}")
    print(f"verdict: {v.result}")
    if v.certificate is not None:
        comps = reconstruct_components(v.certificate, v.certificate_triangulation)
        chi = euler_functional(v.certificate_triangulation)(v.certificate)
        print(f"certificate: {len(comps)} component, chi={chi}, "
              f"{sum(1 for c in v.certificate if c)} nonzero coordinates")
        print("  " + v.certificate.to_line())


if __name__ == "__main__":
    main(*sys.argv[1:])
