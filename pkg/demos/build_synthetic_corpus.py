"""
Rebuild the synthetic corpus entries from the minimal ones.

The minimal triangulations are all one-vertex and quite small, so on their
own they never exercise the one-vertex conversion, the crushing loop or the
simplifier.  This script derives larger triangulations of the same knot
complements:

  *-cone      a 1-4 move adds an interior vertex
  *-bump      a tetrahedron glued onto a boundary triangle adds a boundary vertex
  *-expanded  a 1-4 move followed by a 2-3 move
  *-junk      seeded 2-3 moves chosen so that the search first finds a
              disc or sphere that has to be crushed away

Run from the repository root:  python demos/build_synthetic_corpus.py
"""
import json
import random
from pathlib import Path

from untangle.corpus import corpus_dir, load, load_manifest
from untangle.pipeline import Action, recognize
from untangle.simplify import attach_tetrahedron, one_four, two_three
from untangle.tri import count_vertices, serialize

OUT = corpus_dir()


def expanded(tri):
    cone = one_four(tri, 0)
    for t in range(cone.n):
        for f in range(4):
            g = cone.gluings[t][f]
            if g is not None and g[0] != t:
                out = two_three(cone, t, f)
                if out is not None:
                    return out
    raise RuntimeError("no 2-3 move available")


def junk(tri, rounds, seed_range=range(1000), max_n=12):
    """Seeded 2-3 expansions until recognition needs ``rounds`` crushes."""
    for seed in seed_range:
        rng = random.Random(seed)
        x = tri
        for _ in range(rng.randint(1, 6)):
            faces = [(t, f) for t in range(x.n) for f in range(4)
                     if x.gluings[t][f] is not None and x.gluings[t][f][0] != t]
            if not faces:
                break
            y = two_three(x, *rng.choice(faces))
            if y is not None:
                x = y
        if x.n > max_n:
            continue
        v = recognize(x)
        crushes = sum(r.action is Action.CRUSHED for r in v.trace)
        if crushes >= rounds:
            return x, seed
    raise RuntimeError("no seed produced the requested number of crushes")


def main():
    base = {e.name: e for e in load_manifest() if not e.synthetic}
    made = []

    def add(name, source, tri, note):
        e = base[source]
        path = OUT / f"{name}.tri"
        path.write_text(f"# {note}\n" + serialize(tri))
        made.append(dict(name=name, file=path.name, verdict=e.verdict, n=tri.n,
                         vertices=count_vertices(tri), knot=e.knot, synthetic=True, note=note))
        print(f"{name:24s} n={tri.n:2d} vertices={count_vertices(tri)}")

    st = load("solid-torus")
    add("solid-torus-cone", "solid-torus", one_four(st, 0), "solid torus after a 1-4 move")
    bump = attach_tetrahedron(st, *st.boundary_faces()[0])
    add("solid-torus-bump", "solid-torus", bump, "solid torus with a tetrahedron glued to its boundary")
    bump2 = attach_tetrahedron(bump, *bump.boundary_faces()[-1])
    add("solid-torus-bump2", "solid-torus", bump2, "solid torus with two boundary tetrahedra")
    add("solid-torus-expanded", "solid-torus", expanded(st), "solid torus after a 1-4 and a 2-3 move")
    for src in ("trefoil", "figure-eight"):
        add(f"{src}-cone", src, one_four(load(src), 0), f"{src} complement after a 1-4 move")
    for src in ("trefoil", "5_2"):
        t = load(src)
        add(f"{src}-bump", src, attach_tetrahedron(t, *t.boundary_faces()[0]),
            f"{src} complement with a tetrahedron glued to its boundary")
    x, seed = junk(load("trefoil"), 1)
    add("trefoil-junk", "trefoil", x, f"trefoil complement after seeded 2-3 moves (seed {seed})")
    x, seed = junk(load("solid-torus-3a"), 2)
    add("solid-torus-junk", "solid-torus-3a", x, f"solid torus after seeded 2-3 moves (seed {seed})")

    manifest = json.loads((OUT / "manifest.json").read_text())
    manifest["entries"] = [e for e in manifest["entries"] if not e["synthetic"]] + made
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n")


if __name__ == "__main__":
    main()
