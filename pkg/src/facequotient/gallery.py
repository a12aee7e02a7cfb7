"""Deterministic face-pairing schemes: lens shells, trivial spheres, the
quaternion and Poincaré spaces, and seeded random pairings of Platonic solids."""

from __future__ import annotations

import random
from math import gcd

from .complex import BoundaryComplex, FacePairing, FacePairingScheme, SchemeError

# Faces as vertex cycles, each read anticlockwise from outside the solid.
SOLIDS = {
    "tetrahedron": (4, [[2, 1, 3], [3, 0, 2], [1, 0, 3], [2, 0, 1]]),
    "cube": (8, [[5, 4, 6, 7], [2, 0, 1, 3], [6, 2, 3, 7], [1, 0, 4, 5], [3, 1, 5, 7], [4, 0, 2, 6]]),
    "octahedron": (6, [[3, 1, 5], [4, 1, 3], [5, 1, 2], [2, 1, 4],
                       [5, 0, 3], [3, 0, 4], [2, 0, 5], [4, 0, 2]]),
    "dodecahedron": (20, [
        [17, 16, 0, 12, 1], [3, 13, 2, 16, 17], [10, 8, 0, 16, 2], [3, 17, 1, 9, 11],
        [14, 12, 0, 8, 4], [5, 9, 1, 12, 14], [6, 10, 2, 13, 15], [15, 13, 3, 11, 7],
        [6, 18, 4, 8, 10], [11, 9, 5, 19, 7], [5, 14, 4, 18, 19], [19, 18, 6, 15, 7],
    ]),
}

# (face, opposite face, offset); every pairing here is reversed.  With these
# offsets each face lands on its opposite after a quarter turn (cube) or a
# tenth of a turn (dodecahedron), all in the same rotational sense.
QUATERNION_TWISTS = [(0, 1, 0), (2, 3, 0), (4, 5, 0)]
POINCARE_TWISTS = [(0, 11, 2), (1, 10, 3), (2, 9, 2), (3, 8, 3), (4, 7, 2), (5, 6, 3)]


def complex_from_cycles(n_vertices, cycles) -> BoundaryComplex:
    """Edges numbered in order of first appearance, directed as first walked."""
    edges = []
    index = {}
    faces = []
    for cyc in cycles:
        face = []
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            key = frozenset((u, v))
            if key not in index:
                index[key] = len(edges)
                edges.append((u, v))
            e = index[key]
            face.append(e + 1 if edges[e] == (u, v) else -(e + 1))
        faces.append(tuple(face))
    return BoundaryComplex(tuple(f"v{i}" for i in range(n_vertices)), tuple(edges), tuple(faces))


def solid(name) -> BoundaryComplex:
    try:
        n, cycles = SOLIDS[name]
    except KeyError:
        raise SchemeError(f"unknown base solid {name!r}; choose from {sorted(SOLIDS)}") from None
    return complex_from_cycles(n, cycles)


def gen_lens(q, p) -> FacePairingScheme:
    """Two q-gons on a common equator, glued with a rotation by p steps.

    Both hemispheres list the equator edges in the same order, so the gluing
    is the position shift i -> i + p.
    """
    if not (q > p >= 1 and gcd(q, p) == 1):
        raise SchemeError(f"lens shell needs coprime q > p >= 1, got q={q}, p={p}")
    edges = tuple((i, (i + 1) % q) for i in range(q))
    face = tuple(range(1, q + 1))
    cx = BoundaryComplex(tuple(f"z{i}" for i in range(q)), edges, (face, face))
    return FacePairingScheme(cx, (FacePairing(0, 1, p, False),),
                             {"generator": "lens", "q": q, "p": p})


def gen_trivial_sphere(n) -> FacePairingScheme:
    if n < 1:
        raise SchemeError(f"trivial sphere needs n >= 1, got {n}")
    edges = tuple((i, (i + 1) % n) for i in range(n))
    face = tuple(range(1, n + 1))
    cx = BoundaryComplex(tuple(f"v{i}" for i in range(n)), edges, (face, face))
    return FacePairingScheme(cx, (FacePairing(0, 1, 0, False),),
                             {"generator": "trivial_sphere", "n": n})


def gen_platonic_space(kind) -> FacePairingScheme:
    if kind == "quaternion":
        cx, twists = solid("cube"), QUATERNION_TWISTS
    elif kind == "poincare":
        cx, twists = solid("dodecahedron"), POINCARE_TWISTS
    else:
        raise SchemeError(f"unknown platonic space {kind!r}; choose quaternion or poincare")
    pairs = tuple(FacePairing(a, b, o, True) for a, b, o in twists)
    return FacePairingScheme(cx, pairs, {"generator": "platonic_space", "kind": kind})


def random_pairing(cx: BoundaryComplex, seed, meta=None) -> FacePairingScheme:
    """Shuffle the faces, pair neighbours, pick offsets and orientations."""
    rng = random.Random(seed)
    nf = len(cx.faces)
    if nf % 2:
        raise SchemeError(f"cannot pair an odd number of faces ({nf})")
    order = list(range(nf))
    rng.shuffle(order)
    pairs = []
    for a, b in zip(order[::2], order[1::2]):
        n = len(cx.faces[a])
        if len(cx.faces[b]) != n:
            raise SchemeError(f"faces {a} and {b} have different lengths")
        pairs.append(FacePairing(min(a, b), max(a, b), rng.randrange(n), rng.random() < 0.5))
    pairs.sort(key=lambda p: p.a)
    return FacePairingScheme(cx, tuple(pairs), meta)


def gen_random(base, seed) -> FacePairingScheme:
    seed = int(seed) & (2**64 - 1)
    return random_pairing(solid(base), seed, {"generator": "random", "base": base, "seed": seed})
