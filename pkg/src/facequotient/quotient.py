"""The identified 2-complex of a face-pairing scheme and its cellular operations.

Attaching words are tuples of signed, 1-based edge ids: ``+(k + 1)`` walks
edge ``k`` from tail to head, ``-(k + 1)`` walks it backwards.

An edge class glued to itself with a flip cannot be a 1-cell as it stands;
it is folded in half, so the quotient gets an extra vertex at the fold and
each occurrence of the edge reads ``x x^-1`` with ``x`` running from the
original endpoint to the fold.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from functools import cached_property

from .actions import all_orders
from .complex import (
    FacePairingScheme,
    SchemeError,
    _end_of,
    edge_structure,
    vertex_classes,
)
from .unionfind import UnionFind


@dataclass(frozen=True)
class QEdge:
    id: int
    tail: int
    head: int
    order: int = 0  # order of the underlying edge class; 0 if unknown
    origin: tuple[int, ...] = ()


@dataclass(frozen=True)
class QCell:
    id: int
    word: tuple[int, ...]
    origin: tuple[int, ...] = ()


@dataclass(frozen=True)
class QuotientComplex:
    vertices: tuple[int, ...]
    edges: tuple[QEdge, ...]
    cells: tuple[QCell, ...]
    # boundary-sphere vertices behind each quotient vertex (empty for folds)
    vertex_origin: dict = field(default_factory=dict, compare=False)

    @cached_property
    def edge_map(self):
        return {e.id: e for e in self.edges}

    def edge(self, k):
        try:
            return self.edge_map[k]
        except KeyError:
            raise SchemeError(f"no edge {k} in the complex") from None

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "tail": e.tail, "head": e.head, "order": e.order} for e in self.edges
            ],
            "cells": [{"id": c.id, "word": list(c.word)} for c in self.cells],
        }

    @cached_property
    def fingerprint(self):
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def letter_ends(letter, edge: QEdge):
    """(start vertex, end vertex) of a signed letter."""
    return (edge.tail, edge.head) if letter > 0 else (edge.head, edge.tail)


def invert(word):
    return tuple(-x for x in reversed(word))


def canonical_word(word):
    """Lexicographically least rotation of the word or of its inverse."""
    word = tuple(word)
    if not word:
        return word
    candidates = []
    for w in (word, invert(word)):
        candidates.extend(w[i:] + w[:i] for i in range(len(w)))
    return min(candidates)


def build_quotient(scheme: FacePairingScheme) -> QuotientComplex:
    cx = scheme.complex
    es = edge_structure(scheme)
    vc = vertex_classes(scheme)
    orders = all_orders(scheme, es.partition)
    nv = len(vc)
    origin = {k: members for k, members in enumerate(vc.classes)}
    vertices = list(range(nv))
    edges = []
    for k, members in enumerate(es.partition.classes):
        rep = members[0]
        u, v = (vc.index[x] for x in cx.edges[rep])
        if k in es.reversed_classes:
            v = len(vertices)
            vertices.append(v)
            origin[v] = ()
        edges.append(QEdge(k, u, v, orders[k], members))

    cells = []
    for pr in sorted(scheme.pairings, key=lambda p: min(p.a, p.b)):
        f = min(pr.a, pr.b)
        word = []
        for i in range(len(cx.faces[f])):
            e, fwd = cx.side(f, i)
            k = es.partition.index[e]
            if k in es.reversed_classes:
                word.extend((k + 1, -(k + 1)))
            else:
                word.append((k + 1) * es.sign[e] * (1 if fwd else -1))
        cells.append(QCell(len(cells), tuple(word), (pr.a, pr.b)))
    return QuotientComplex(tuple(vertices), tuple(edges), tuple(cells), origin)


def euler_characteristic(q: QuotientComplex) -> int:
    return len(q.vertices) - len(q.edges) + len(q.cells)


# -- manifold check -------------------------------------------------------

@dataclass(frozen=True)
class VertexLink:
    vertex: int
    n_vertices: int
    n_edges: int
    n_faces: int
    connected: bool

    @property
    def chi(self):
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def ok(self):
        return self.connected and self.chi == 2

    def to_dict(self):
        return {
            "vertex": self.vertex,
            "V": self.n_vertices,
            "E": self.n_edges,
            "F": self.n_faces,
            "chi": self.chi,
            "connected": self.connected,
            "sphere": self.ok,
        }


@dataclass(frozen=True)
class ManifoldReport:
    links: tuple[VertexLink, ...]
    # edge classes glued to themselves with a flip: their midpoints have
    # projective-plane links
    singular_edges: tuple[int, ...]

    @property
    def is_manifold(self):
        return not self.singular_edges and all(l.ok for l in self.links)

    def to_dict(self):
        return {
            "is_manifold": self.is_manifold,
            "vertex_links": [l.to_dict() for l in self.links],
            "singular_edges": list(self.singular_edges),
        }


def verify_manifold(scheme: FacePairingScheme) -> ManifoldReport:
    """Assemble the link of every quotient vertex from the corners of the faces.

    Each boundary vertex contributes a polygon whose sides are its face
    corners; the face pairing glues those sides in pairs.  The link vertices
    are edge-ends, identified along the gluing.
    """
    cx = scheme.complex
    vc = vertex_classes(scheme)
    ends = UnionFind(2 * len(cx.edges))
    for pr in scheme.pairings:
        for i in range(len(cx.faces[pr.a])):
            k, j = scheme.glue(pr.a, i)
            s, t = _end_of(cx, pr.a, i, False), _end_of(cx, pr.a, i, True)
            s2, t2 = _end_of(cx, k, j, False), _end_of(cx, k, j, True)
            if pr.reversed:
                s2, t2 = t2, s2
            ends.union(s, s2)
            ends.union(t, t2)

    def vclass_of_end(x):
        return vc.index[cx.edges[x // 2][x % 2]]

    nodes = [set() for _ in vc.classes]
    for x in range(2 * len(cx.edges)):
        nodes[vclass_of_end(x)].add(ends.find(x))

    corners = [0] * len(vc.classes)
    link = UnionFind(2 * len(cx.edges))
    for f, face in enumerate(cx.faces):
        for c in range(len(face)):
            a = ends.find(_end_of(cx, f, c - 1, True))
            b = ends.find(_end_of(cx, f, c, False))
            link.union(a, b)
            corners[vc.index[cx.corner_vertex(f, c)]] += 1

    links = []
    for k, members in enumerate(vc.classes):
        comps = {link.find(x) for x in nodes[k]}
        links.append(VertexLink(k, len(nodes[k]), corners[k] // 2, len(members), len(comps) == 1))

    es = edge_structure(scheme)
    singular = sorted(
        k for k, members in enumerate(es.partition.classes)
        if ends.find(2 * members[0]) == ends.find(2 * members[0] + 1)
    )
    return ManifoldReport(tuple(links), tuple(singular))


# -- graphs ---------------------------------------------------------------

@dataclass(frozen=True)
class NonFlatGraph:
    vertices: tuple[int, ...]
    edges: tuple[QEdge, ...]

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "ends": [e.tail, e.head], "order": e.order} for e in self.edges],
        }


def gamma_graph(q) -> NonFlatGraph:
    """Edges of order > 2, over the quotient vertices they touch."""
    if isinstance(q, FacePairingScheme):
        q = build_quotient(q)
    edges = tuple(e for e in q.edges if e.order > 2)
    verts = sorted({v for e in edges for v in (e.tail, e.head)})
    return NonFlatGraph(tuple(verts), edges)


def _components(vertices, edges):
    index = {v: i for i, v in enumerate(vertices)}
    uf = UnionFind(len(vertices))
    for e in edges:
        uf.union(index[e.tail], index[e.head])
    return uf, index


def has_circuit(g) -> bool:
    """Some component has at least as many edges as vertices (loops count)."""
    if not g.edges:
        return False
    uf, index = _components(g.vertices, g.edges)
    nverts, nedges = {}, {}
    for v in g.vertices:
        r = uf.find(index[v])
        nverts[r] = nverts.get(r, 0) + 1
    for e in g.edges:
        r = uf.find(index[e.tail])
        nedges[r] = nedges.get(r, 0) + 1
    return any(nedges.get(r, 0) >= n for r, n in nverts.items())


def spanning_tree(g) -> frozenset[int]:
    """Breadth-first spanning forest: smallest vertex first, smallest edge id first."""
    adj = {v: [] for v in g.vertices}
    for e in sorted(g.edges, key=lambda e: e.id):
        if e.tail != e.head:
            adj[e.tail].append((e.id, e.head))
            adj[e.head].append((e.id, e.tail))
    seen = set()
    tree = set()
    for root in sorted(g.vertices):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            nxt = []
            for v in queue:
                for eid, w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        tree.add(eid)
                        nxt.append(w)
            queue = nxt
    return frozenset(tree)


def gamma_tree(q: QuotientComplex) -> frozenset[int]:
    """Tree in the 1-skeleton through every vertex of the non-flat graph,
    using as many non-flat edges as possible."""
    gamma = gamma_graph(q)
    if not gamma.edges:
        return frozenset()
    wanted = set(gamma.vertices)
    index = {v: i for i, v in enumerate(q.vertices)}
    uf = UnionFind(len(q.vertices))
    tree = {}
    for e in sorted(q.edges, key=lambda e: (e.order <= 2, e.id)):
        if uf.find(index[e.tail]) != uf.find(index[e.head]):
            uf.union(index[e.tail], index[e.head])
            tree[e.id] = e
    # prune leaves that the non-flat graph does not need
    while True:
        deg = {}
        for e in tree.values():
            deg[e.tail] = deg.get(e.tail, 0) + 1
            deg[e.head] = deg.get(e.head, 0) + 1
        drop = [k for k, e in tree.items()
                if any(deg[v] == 1 and v not in wanted for v in (e.tail, e.head))]
        if not drop:
            return frozenset(tree)
        for k in drop:
            del tree[k]


# -- deformations ---------------------------------------------------------

@dataclass(frozen=True)
class DeformationRecord:
    kind: str  # tree-contraction | edge-contraction | subcomplex-collapse | composite
    removed_cells: frozenset[int]
    removed_edges: frozenset[int]
    removed_vertices: frozenset[int]
    vertex_map: dict
    source: str
    result: QuotientComplex
    steps: tuple = ()
    source_complex: QuotientComplex | None = field(default=None, compare=False, repr=False)

    def then(self, other: "DeformationRecord") -> "DeformationRecord":
        if other.source != self.result.fingerprint:
            raise SchemeError("deformation records do not chain")
        vmap = {v: other.vertex_map.get(w, w) for v, w in self.vertex_map.items()}
        return DeformationRecord(
            "composite",
            self.removed_cells | other.removed_cells,
            self.removed_edges | other.removed_edges,
            self.removed_vertices | other.removed_vertices,
            vmap,
            self.source,
            other.result,
            (self.steps or (self,)) + (other.steps or (other,)),
            self.source_complex,
        )

    def to_dict(self):
        return {
            "kind": self.kind,
            "removed_cells": sorted(self.removed_cells),
            "removed_edges": sorted(self.removed_edges),
            "removed_vertices": sorted(self.removed_vertices),
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "source": self.source,
            "result": self.result.fingerprint,
        }


def _rewrite(q, vmap, drop_edges, drop_cells=frozenset()):
    keep_vertices = tuple(sorted({vmap.get(v, v) for v in q.vertices}))
    edges = tuple(
        replace(e, tail=vmap.get(e.tail, e.tail), head=vmap.get(e.head, e.head))
        for e in q.edges if e.id not in drop_edges
    )
    cells = tuple(
        replace(c, word=tuple(x for x in c.word if abs(x) - 1 not in drop_edges))
        for c in q.cells if c.id not in drop_cells
    )
    origin = {}
    for v, members in q.vertex_origin.items():
        w = vmap.get(v, v)
        origin[w] = tuple(sorted(set(origin.get(w, ())) | set(members)))
    return QuotientComplex(keep_vertices, edges, cells, origin)


def contract_tree(q: QuotientComplex, tree) -> tuple[QuotientComplex, DeformationRecord]:
    """Shrink each component of a forest in the 1-skeleton to its smallest vertex."""
    tree = frozenset(tree)
    index = {v: i for i, v in enumerate(q.vertices)}
    uf = UnionFind(len(q.vertices))
    for k in sorted(tree):
        e = q.edge(k)
        if uf.find(index[e.tail]) == uf.find(index[e.head]):
            raise SchemeError(f"edge {k} closes a cycle; contraction needs a forest")
        uf.union(index[e.tail], index[e.head])
    low = {}
    for v in q.vertices:
        r = uf.find(index[v])
        low[r] = min(low.get(r, v), v)
    vmap = {v: low[uf.find(index[v])] for v in q.vertices}
    out = _rewrite(q, vmap, tree)
    removed_v = frozenset(v for v, w in vmap.items() if v != w)
    rec = DeformationRecord("tree-contraction", frozenset(), tree, removed_v,
                            vmap, q.fingerprint, out, source_complex=q)
    return out, rec


def contract_edge(q: QuotientComplex, k) -> tuple[QuotientComplex, DeformationRecord]:
    e = q.edge(k)
    if e.tail == e.head:
        raise SchemeError(f"edge {k} is a loop; contracting it would change the homotopy type")
    out, rec = contract_tree(q, {k})
    return out, replace(rec, kind="edge-contraction")


def collapse_subcomplex(q: QuotientComplex, cells=(), edges=(), vertices=()):
    """Crush a connected subcomplex to a single vertex."""
    cells, edges, vertices = frozenset(cells), frozenset(edges), frozenset(vertices)
    for c in q.cells:
        if c.id in cells:
            missing = {abs(x) - 1 for x in c.word} - edges
            if missing:
                raise SchemeError(f"cell {c.id} needs edges {sorted(missing)} in the selection")
    for k in edges:
        e = q.edge(k)
        if not {e.tail, e.head} <= vertices:
            raise SchemeError(f"edge {k} needs both endpoints in the selection")
    if not vertices <= set(q.vertices) or not cells <= {c.id for c in q.cells}:
        raise SchemeError("selection names cells or vertices outside the complex")
    if not vertices:
        if cells or edges:
            raise SchemeError("selection has cells or edges but no vertices")
        rec = DeformationRecord("subcomplex-collapse", frozenset(), frozenset(), frozenset(),
                                {}, q.fingerprint, q, source_complex=q)
        return q, rec
    sub_v = sorted(vertices)
    index = {v: i for i, v in enumerate(sub_v)}
    uf = UnionFind(len(sub_v))
    for k in edges:
        e = q.edge(k)
        uf.union(index[e.tail], index[e.head])
    if len({uf.find(i) for i in range(len(sub_v))}) > 1:
        raise SchemeError("selected subcomplex is not connected")
    x0 = sub_v[0]
    vmap = {v: x0 for v in sub_v}
    out = _rewrite(q, vmap, edges, cells)
    rec = DeformationRecord("subcomplex-collapse", cells, edges, frozenset(sub_v[1:]),
                            vmap, q.fingerprint, out, source_complex=q)
    return out, rec


def closure(q: QuotientComplex, cells=(), edges=()):
    """Smallest subcomplex containing the given cells and edges."""
    cells = set(cells)
    edges = set(edges)
    for c in q.cells:
        if c.id in cells:
            edges.update(abs(x) - 1 for x in c.word)
    verts = set()
    for k in edges:
        e = q.edge(k)
        verts.update((e.tail, e.head))
    return cells, edges, verts


def nonflat_circles(q: QuotientComplex) -> int:
    """Surviving non-flat edges; after contracting the non-flat tree these are
    circles through the merged vertex."""
    return sum(1 for e in q.edges if e.order > 2)


# -- recognition ----------------------------------------------------------

@dataclass(frozen=True)
class SurfaceType:
    kind: str  # disk | projective_plane | sphere | other | not_a_surface
    chi: int | None = None
    orientable: bool | None = None
    has_boundary: bool | None = None

    def to_dict(self):
        return {"kind": self.kind, "chi": self.chi, "orientable": self.orientable,
                "has_boundary": self.has_boundary}


def classify_surface(q: QuotientComplex) -> SurfaceType:
    chi = euler_characteristic(q)
    if not q.edges:
        # a cell with empty boundary word closes up into a sphere
        if len(q.vertices) == 1 and len(q.cells) == 1:
            return SurfaceType("sphere", chi, True, False)
        return SurfaceType("not_a_surface")
    occ = {e.id: [] for e in q.edges}
    for c in q.cells:
        if not c.word:
            return SurfaceType("not_a_surface")
        for x in c.word:
            occ[abs(x) - 1].append((c.id, 1 if x > 0 else -1))
    if any(len(v) not in (1, 2) for v in occ.values()):
        return SurfaceType("not_a_surface")

    # vertex links: nodes are edge-ends, arcs are the corners of the cells
    node_id = {}
    for e in q.edges:
        node_id[(e.id, 0)] = len(node_id)
        node_id[(e.id, 1)] = len(node_id)
    uf = UnionFind(len(node_id))
    for c in q.cells:
        w = c.word
        for i in range(len(w)):
            a, b = w[i - 1], w[i]
            uf.union(node_id[(abs(a) - 1, 1 if a > 0 else 0)], node_id[(abs(b) - 1, 0 if b > 0 else 1)])
    per_vertex = {v: set() for v in q.vertices}
    for e in q.edges:
        per_vertex[e.tail].add(uf.find(node_id[(e.id, 0)]))
        per_vertex[e.head].add(uf.find(node_id[(e.id, 1)]))
    if any(len(roots) != 1 for roots in per_vertex.values()):
        return SurfaceType("not_a_surface")

    cell_index = {c.id: i for i, c in enumerate(q.cells)}
    orient = UnionFind(len(q.cells))
    for sides in occ.values():
        if len(sides) == 2:
            (c1, s1), (c2, s2) = sides
            orient.union(cell_index[c1], cell_index[c2], int(s1 == s2))
    orientable = not any(orient.inconsistent(i) for i in range(len(q.cells)))
    boundary = any(len(v) == 1 for v in occ.values())

    uf_v, index = _components(q.vertices, q.edges)
    connected = len({uf_v.find(i) for i in range(len(q.vertices))}) == 1
    kind = "other"
    if connected:
        if boundary and orientable and chi == 1:
            kind = "disk"
        elif not boundary and not orientable and chi == 1:
            kind = "projective_plane"
        elif not boundary and orientable and chi == 2:
            kind = "sphere"
    return SurfaceType(kind, chi, orientable, boundary)


def recognize_lens_shell(q: QuotientComplex) -> int | None:
    """q if the complex is one vertex, one edge and one cell reading a^q, q >= 3."""
    if len(q.vertices) != 1 or len(q.edges) != 1 or len(q.cells) != 1:
        return None
    word = q.cells[0].word
    if len(word) >= 3 and len(set(word)) == 1:
        return len(word)
    return None


def to_dot(g: NonFlatGraph) -> str:
    lines = ["graph gamma {"]
    for v in g.vertices:
        lines.append(f"  v{v};")
    for e in sorted(g.edges, key=lambda e: e.id):
        lines.append(f'  v{e.tail} -- v{e.head} [label="order={e.order}", id="e{e.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
