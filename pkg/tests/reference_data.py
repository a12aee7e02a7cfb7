"""Manifold verdicts and first homology of random gluings, computed once
with an independent 3-manifold package from a cone-on-faces triangulation
of each scheme.  Rows: (base, seed, closed manifold?, H1 as (free rank,
torsion) or None when not a manifold)."""

REFERENCE = [
    ('tetrahedron', 0, False, None),
    ('tetrahedron', 1, True, (0, ())),
    ('tetrahedron', 2, False, None),
    ('tetrahedron', 3, False, None),
    ('tetrahedron', 4, True, (0, (4,))),
    ('tetrahedron', 5, False, None),
    ('tetrahedron', 6, False, None),
    ('tetrahedron', 7, True, (0, (5,))),
    ('tetrahedron', 8, True, (0, ())),
    ('tetrahedron', 9, True, (0, ())),
    ('tetrahedron', 10, False, None),
    ('tetrahedron', 11, False, None),
    ('cube', 0, False, None),
    ('cube', 1, False, None),
    ('cube', 2, False, None),
    ('cube', 3, False, None),
    ('cube', 4, False, None),
    ('cube', 5, True, (1, (2,))),
    ('cube', 6, False, None),
    ('cube', 7, False, None),
    ('cube', 8, False, None),
    ('cube', 9, False, None),
    ('cube', 10, False, None),
    ('cube', 11, False, None),
    ('cube', 129, True, (1, ())),
    ('cube', 162, True, (1, ())),
    ('cube', 274, True, (0, ())),
    ('cube', 384, True, (0, ())),
    ('cube', 548, True, (1, ())),
    ('cube', 742, True, (1, ())),
    ('cube', 779, True, (1, ())),
    ('cube', 809, True, (1, ())),
    ('octahedron', 0, False, None),
    ('octahedron', 1, False, None),
    ('octahedron', 2, False, None),
    ('octahedron', 3, False, None),
    ('octahedron', 4, False, None),
    ('octahedron', 5, False, None),
    ('octahedron', 6, False, None),
    ('octahedron', 7, False, None),
    ('octahedron', 8, False, None),
    ('octahedron', 9, False, None),
    ('octahedron', 10, False, None),
    ('octahedron', 11, False, None),
    ('dodecahedron', 0, False, None),
    ('dodecahedron', 1, False, None),
    ('dodecahedron', 2, False, None),
    ('dodecahedron', 3, False, None),
    ('dodecahedron', 4, False, None),
    ('dodecahedron', 5, False, None),
    ('dodecahedron', 6, False, None),
    ('dodecahedron', 7, False, None),
    ('dodecahedron', 8, False, None),
    ('dodecahedron', 9, False, None),
    ('dodecahedron', 10, False, None),
    ('dodecahedron', 11, False, None),
    ('octahedron', 127, True, (1, ())),
    ('octahedron', 310, True, (1, ())),
    ('octahedron', 393, True, (0, (6,))),
    ('octahedron', 417, True, (1, ())),
]
