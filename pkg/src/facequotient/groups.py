"""Presentations of fundamental groups, Tietze simplification and abelianization.

Words are tuples of signed, 1-based generator indices.  Matrices are lists of
lists of Python ints, so all arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from string import ascii_lowercase

from .complex import SchemeError
from .quotient import QuotientComplex, canonical_word, letter_ends, spanning_tree
from .unionfind import UnionFind

IntegerMatrix = list[list[int]]


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def generator_name(g):
    return ascii_lowercase[g] if g < 26 else f"x{g}"


def format_word(word):
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = (j - i) * (1 if word[i] > 0 else -1)
        name = generator_name(abs(word[i]) - 1)
        parts.append(name if n == 1 else f"{name}^{n}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class Presentation:
    n_generators: int
    relators: tuple[tuple[int, ...], ...]
    # provenance: quotient edge behind each generator, cell behind each relator
    generator_edges: tuple[int, ...] | None = None
    relator_cells: tuple[int | None, ...] | None = None
    source: str | None = None

    def __post_init__(self):
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.n_generators:
                    raise ValueError(f"relator {r} names a generator outside 1..{self.n_generators}")
        object.__setattr__(self, "relators", tuple(free_reduce(r) for r in self.relators))

    def __str__(self):
        gens = ", ".join(generator_name(g) for g in range(self.n_generators))
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def to_dict(self):
        return {
            "generators": self.n_generators,
            "relators": [list(r) for r in self.relators],
            "text": str(self),
        }


def fundamental_presentation(q: QuotientComplex) -> Presentation:
    """Edge-path presentation: non-tree edges generate, cells relate."""
    tree = spanning_tree(q)
    index = {v: i for i, v in enumerate(q.vertices)}
    uf = UnionFind(len(q.vertices))
    for e in q.edges:
        uf.union(index[e.tail], index[e.head])
    if len({uf.find(i) for i in range(len(q.vertices))}) > 1:
        raise SchemeError("complex is disconnected; pick a component first")
    gens = tuple(e.id for e in q.edges if e.id not in tree)
    gen_of = {k: g for g, k in enumerate(gens)}
    rels = []
    for c in q.cells:
        rels.append(tuple(
            (gen_of[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in c.word if abs(x) - 1 in gen_of
        ))
    return Presentation(len(gens), tuple(rels), gens, tuple(c.id for c in q.cells), q.fingerprint)


# -- Tietze moves ---------------------------------------------------------

def _substitute(relators, g, image):
    """Replace generator ``g`` (1-based) by ``image`` and renumber down."""
    inv = tuple(-x for x in reversed(image))
    out = []
    for r in relators:
        w = []
        for x in r:
            if abs(x) == g:
                w.extend(image if x > 0 else inv)
            else:
                w.append(x - 1 if x > g else (x + 1 if x < -g else x))
        out.append(tuple(w))
    return out


def tietze_simplify(p: Presentation) -> Presentation:
    """Simplify by repeated reduction, deduplication and elimination of
    generators through relators of length one or two."""
    n = p.n_generators
    rels = list(p.relators)
    while True:
        seen = set()
        tidy = []
        for r in rels:
            r = cyclic_reduce(r)
            key = canonical_word(r)
            if r and key not in seen:
                seen.add(key)
                tidy.append(r)
        rels = sorted(tidy, key=lambda r: (len(r), canonical_word(r)))
        move = None
        for idx, r in enumerate(rels):
            if len(r) == 1:
                move = (idx, abs(r[0]), ())
                break
            if len(r) == 2 and abs(r[0]) != abs(r[1]):
                # g^e h^d = 1  =>  g = h^(-d*e)
                g, h = r
                move = (idx, abs(g), (-h if g > 0 else h,))
                break
        if move is None:
            return Presentation(n, tuple(rels))
        idx, g, image = move
        rest = rels[:idx] + rels[idx + 1:]
        image = tuple(x - 1 if x > g else (x + 1 if x < -g else x) for x in image)
        rels = _substitute(rest, g, image)
        n -= 1


# -- Smith normal form ----------------------------------------------------

def smith_normal_form(m: IntegerMatrix):
    """Return (D, U, V) with U * m * V = D, U and V unimodular and the
    diagonal of D a divisibility chain of non-negative entries."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def add_row(dst, src, k):  # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    for s in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(s, rows):
                for j in range(s, cols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return a, u, v
            swap_rows(s, pivot[0])
            swap_cols(s, pivot[1])
            p = a[s][s]
            dirty = False
            for i in range(s + 1, rows):
                if a[i][s]:
                    add_row(i, s, -(a[i][s] // p))
                    dirty = dirty or a[i][s] != 0
            for j in range(s + 1, cols):
                if a[s][j]:
                    add_col(j, s, -(a[s][j] // p))
                    dirty = dirty or a[s][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(s + 1, rows) for j in range(s + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(s, bad, 1)
        if a[s][s] < 0:
            a[s] = [-x for x in a[s]]
            u[s] = [-x for x in u[s]]
    return a, u, v


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z_{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


def exponent_matrix(p: Presentation) -> IntegerMatrix:
    mat = []
    for r in p.relators:
        row = [0] * p.n_generators
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        mat.append(row)
    return mat


def abelianization(p: Presentation) -> AbelianGroup:
    mat = exponent_matrix(p)
    if not mat or not p.n_generators:
        return AbelianGroup(p.n_generators)
    d, _, _ = smith_normal_form(mat)
    diag = [d[i][i] for i in range(min(len(d), p.n_generators)) if d[i][i]]
    return AbelianGroup(p.n_generators - len(diag), tuple(x for x in diag if x > 1))


def triviality_status(p: Presentation) -> str:
    if not abelianization(p).is_trivial():
        return "nontrivial"
    if tietze_simplify(p).n_generators == 0:
        return "trivial"
    return "unknown"


def induced_presentation(p: Presentation, record) -> Presentation:
    """Presentation of the deformed complex as a quotient of ``p``.

    Contractions do not change the group, so the presentation is read off
    the contracted complex again.  Crushing a connected subcomplex A kills
    the image of its fundamental group: for each edge of A outside a
    spanning tree of A the corresponding loop becomes a relator, and the
    relators of A's own cells are dropped.
    """
    if p.source is None or p.source != record.source:
        raise SchemeError("presentation and deformation record come from different complexes")
    steps = record.steps or (record,)
    for step in steps:
        if step.kind != "subcomplex-collapse":
            p = fundamental_presentation(step.result)
        else:
            p = _collapse_presentation(p, step)
    return p


def _collapse_presentation(p, rec):
    if p.generator_edges is None or p.relator_cells is None:
        raise SchemeError("presentation has no provenance to follow a collapse")
    if not rec.removed_edges and not rec.removed_cells:
        return replace(p, source=rec.result.fingerprint)
    gen_of = {k: g for g, k in enumerate(p.generator_edges)}

    def letter(x):
        k = abs(x) - 1
        return () if k not in gen_of else ((gen_of[k] + 1) * (1 if x > 0 else -1),)

    # Tree of A from its smallest vertex; path words are in p's generators.
    src_edges = {k: rec.source_complex.edge(k) for k in rec.removed_edges}
    verts = sorted(rec.vertex_map)
    root = verts[0]
    path = {root: ()}
    tree = set()
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for k in sorted(src_edges):
                e = src_edges[k]
                for sgn in (1, -1):
                    a, b = letter_ends(sgn, e)
                    if a == x and b not in path:
                        path[b] = path[x] + letter(sgn * (k + 1))
                        tree.add(k)
                        nxt.append(b)
        frontier = nxt
    new = []
    for k in sorted(src_edges):
        if k in tree:
            continue
        e = src_edges[k]
        w = path[e.tail] + letter(k + 1) + tuple(-x for x in reversed(path[e.head]))
        new.append(free_reduce(w))
    keep = [(r, c) for r, c in zip(p.relators, p.relator_cells) if c not in rec.removed_cells]
    rels = tuple(r for r, _ in keep) + tuple(new)
    cells = tuple(c for _, c in keep) + (None,) * len(new)
    return Presentation(p.n_generators, rels, p.generator_edges, cells, rec.result.fingerprint)
