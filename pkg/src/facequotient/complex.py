"""Polygonal 2-spheres with face pairings, validation and identification classes.

A face is a cyclic sequence of directed edges.  Position ``i`` of a face is
its ``i``-th directed edge; corner ``i`` is the vertex where position ``i``
starts (so position ``i`` runs from corner ``i`` to corner ``i + 1``).

A pairing ``(a, b, offset, reversed)`` glues face ``a`` onto face ``b``::

    reversed=False:  position i of a -> position (i + offset) of b
    reversed=True:   position i of a -> position (offset - i)  of b

indices taken modulo the common face length.  Nothing here requires the
faces to be coherently oriented; correspondences act on positions and
corners only.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property

from .unionfind import UnionFind


class SchemeError(ValueError):
    """Structurally unusable input (bad indices, unparseable file)."""


@dataclass(frozen=True)
class BoundaryComplex:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    # signed, 1-based edge references; the sign is the traversal direction
    faces: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        nv, ne = len(self.vertices), len(self.edges)
        for k, (u, v) in enumerate(self.edges):
            if not (0 <= u < nv and 0 <= v < nv):
                raise SchemeError(f"edge {k + 1} has an endpoint outside 0..{nv - 1}")
        for f, face in enumerate(self.faces):
            if not face:
                raise SchemeError(f"face {f} is empty")
            for ref in face:
                if ref == 0 or abs(ref) > ne:
                    raise SchemeError(f"face {f} references edge {ref}, valid range is ±1..±{ne}")

    @property
    def n_flags(self):
        return sum(len(face) for face in self.faces)

    def side(self, f, i):
        """(edge index, forward?) at position ``i`` of face ``f``."""
        ref = self.faces[f][i % len(self.faces[f])]
        return abs(ref) - 1, ref > 0

    def tail(self, f, i):
        e, fwd = self.side(f, i)
        return self.edges[e][0 if fwd else 1]

    def head(self, f, i):
        e, fwd = self.side(f, i)
        return self.edges[e][1 if fwd else 0]

    def corner_vertex(self, f, c):
        return self.tail(f, c)

    def edge_sides(self):
        """For each edge, the list of (face, position) sides carrying it."""
        sides = [[] for _ in self.edges]
        for f, face in enumerate(self.faces):
            for i, ref in enumerate(face):
                sides[abs(ref) - 1].append((f, i))
        return sides


@dataclass(frozen=True)
class FacePairing:
    a: int
    b: int
    offset: int
    reversed: bool


@dataclass(frozen=True)
class FacePairingScheme:
    complex: BoundaryComplex
    pairings: tuple[FacePairing, ...]
    meta: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        nf = len(self.complex.faces)
        for k, pr in enumerate(self.pairings):
            for face in (pr.a, pr.b):
                if not 0 <= face < nf:
                    raise SchemeError(f"pairing {k} names face {face}, valid range is 0..{nf - 1}")

    @cached_property
    def _partner(self):
        # face -> (peer, pairing, this face is the pairing's ``a`` side)
        table = [None] * len(self.complex.faces)
        for pr in self.pairings:
            for face, peer, is_a in ((pr.a, pr.b, True), (pr.b, pr.a, False)):
                if table[face] is None:
                    table[face] = (peer, pr, is_a)
                else:
                    table[face] = False  # paired more than once
        return table

    def partner(self, f):
        entry = self._partner[f]
        if not entry:
            raise SchemeError(f"face {f} is not paired exactly once")
        return entry[0]

    def glue(self, f, i):
        """Image of position ``i`` of face ``f`` under the face pairing."""
        peer, pr, is_a = self._partner[f]
        n = len(self.complex.faces[f])
        if pr.reversed:
            return peer, (pr.offset - i) % n
        return peer, (i + pr.offset if is_a else i - pr.offset) % n

    def glue_corner(self, f, c):
        peer, pr, is_a = self._partner[f]
        n = len(self.complex.faces[f])
        if pr.reversed:
            return peer, (pr.offset + 1 - c) % n
        return peer, (c + pr.offset if is_a else c - pr.offset) % n

    def is_reversed(self, f):
        return self._partner[f][1].reversed

    @cached_property
    def fingerprint(self):
        return hashlib.sha256(dumps(self, with_meta=False).encode()).hexdigest()


@dataclass(frozen=True)
class ClassPartition:
    kind: str  # "vertex", "edge" or "face"
    classes: tuple[tuple[int, ...], ...]
    index: tuple[int, ...]

    @classmethod
    def from_groups(cls, kind, groups, n):
        groups = sorted((tuple(sorted(g)) for g in groups), key=lambda g: g[0])
        index = [0] * n
        for k, g in enumerate(groups):
            for x in g:
                index[x] = k
        return cls(kind, tuple(groups), tuple(index))

    def __len__(self):
        return len(self.classes)

    def sizes(self):
        return [len(c) for c in self.classes]


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors

    def to_dict(self):
        return {"ok": self.ok, "errors": list(self.errors), "warnings": list(self.warnings)}


def validate(scheme: FacePairingScheme) -> ValidationReport:
    """Check every structural invariant of the scheme.

    Index errors are caught earlier, when the dataclasses are built.  The
    condition that no face carries two edges of one class is only a warning.
    """
    cx = scheme.complex
    rep = ValidationReport()
    nv, ne, nf = len(cx.vertices), len(cx.edges), len(cx.faces)

    walks_ok = True
    for f, face in enumerate(cx.faces):
        for i in range(len(face)):
            if cx.head(f, i) != cx.tail(f, i + 1):
                rep.errors.append(f"face {f}: position {i} does not end where position {(i + 1) % len(face)} starts")
                walks_ok = False
                break

    sides = cx.edge_sides()
    sides_ok = True
    for e, s in enumerate(sides):
        if len(s) != 2:
            rep.errors.append(f"edge {e + 1} lies on {len(s)} face-sides, expected 2")
            sides_ok = False

    uf = UnionFind(nv)
    for u, v in cx.edges:
        uf.union(u, v)
    if nv and len(uf.groups()) > 1:
        rep.errors.append("boundary complex is not connected")
    if nv - ne + nf != 2:
        rep.errors.append(f"V - E + F = {nv - ne + nf}, a sphere needs 2")

    if walks_ok and sides_ok:
        for v in _pinched_vertices(cx):
            rep.errors.append(f"vertex {v} ({cx.vertices[v]}) has no disk neighbourhood in the boundary")

    partner = scheme._partner
    if nf % 2 or any(not entry or entry[0] == f for f, entry in enumerate(partner)):
        rep.errors.append("pairing has a fixed point or odd face count")
    else:
        for pr in scheme.pairings:
            la, lb = len(cx.faces[pr.a]), len(cx.faces[pr.b])
            if la != lb:
                rep.errors.append(f"paired faces {pr.a} and {pr.b} have lengths {la} and {lb}")

    if rep.ok:
        edge_cls = edge_classes(scheme)
        for k, members in enumerate(edge_cls.classes):
            crowded = []
            for f, face in enumerate(cx.faces):
                hit = {abs(r) - 1 for r in face if edge_cls.index[abs(r) - 1] == k}
                if len(hit) > 1:
                    crowded.append(f)
            if crowded:
                rep.warnings.append(
                    f"edge class {k} appears as several distinct edges on faces {crowded}"
                )
    return rep


def _pinched_vertices(cx):
    # Around each vertex the corners must chain the incident edge-ends into
    # one cycle; otherwise the faces do not close up into a surface there.
    uf = UnionFind(2 * len(cx.edges))
    for f, face in enumerate(cx.faces):
        for c in range(len(face)):
            uf.union(_end_of(cx, f, c - 1, head=True), _end_of(cx, f, c, head=False))
    seen = {}
    bad = []
    for e, (u, v) in enumerate(cx.edges):
        for end, vert in ((2 * e, u), (2 * e + 1, v)):
            root = uf.find(end)
            if seen.setdefault(vert, root) != root and vert not in bad:
                bad.append(vert)
    return sorted(bad)


def _end_of(cx, f, i, head):
    """Edge-end id (2e or 2e+1) where position ``i`` of ``f`` starts or finishes."""
    e, fwd = cx.side(f, i)
    return 2 * e + (1 if fwd == head else 0)


def check_valid(scheme):
    rep = validate(scheme)
    if not rep.ok:
        raise SchemeError("; ".join(rep.errors))
    return scheme


def _edge_union(scheme):
    cx = scheme.complex
    uf = UnionFind(len(cx.edges))
    for pr in scheme.pairings:
        for i in range(len(cx.faces[pr.a])):
            e, fwd = cx.side(pr.a, i)
            k, j = scheme.glue(pr.a, i)
            e2, fwd2 = cx.side(k, j)
            # same edge direction iff traversal directions agree, modulo reversal
            uf.union(e, e2, int((fwd == fwd2) == pr.reversed))
    return uf


@dataclass(frozen=True)
class EdgeStructure:
    partition: ClassPartition
    # +1/-1: direction of each edge relative to its class representative
    sign: tuple[int, ...]
    # classes glued to themselves with a flip
    reversed_classes: frozenset[int]


def edge_structure(scheme) -> EdgeStructure:
    uf = _edge_union(scheme)
    ne = len(scheme.complex.edges)
    part = ClassPartition.from_groups("edge", uf.groups(), ne)
    sign = []
    for e in range(ne):
        rep = part.classes[part.index[e]][0]
        sign.append(1 if uf.parity(e) == uf.parity(rep) else -1)
    bad = frozenset(k for k, c in enumerate(part.classes) if uf.inconsistent(c[0]))
    return EdgeStructure(part, tuple(sign), bad)


def edge_classes(scheme: FacePairingScheme) -> ClassPartition:
    """Edges glued together by chains of correspondences."""
    return ClassPartition.from_groups("edge", _edge_union(scheme).groups(), len(scheme.complex.edges))


def vertex_classes(scheme: FacePairingScheme) -> ClassPartition:
    """Vertices glued together through the corner maps of the correspondences."""
    cx = scheme.complex
    uf = UnionFind(len(cx.vertices))
    for pr in scheme.pairings:
        for c in range(len(cx.faces[pr.a])):
            k, c2 = scheme.glue_corner(pr.a, c)
            uf.union(cx.corner_vertex(pr.a, c), cx.corner_vertex(k, c2))
    return ClassPartition.from_groups("vertex", uf.groups(), len(cx.vertices))


# -- JSON -----------------------------------------------------------------

def to_dict(scheme, with_meta=True):
    cx = scheme.complex
    out = {}
    if with_meta and scheme.meta is not None:
        out["meta"] = scheme.meta
    out["vertices"] = list(cx.vertices)
    out["edges"] = [list(e) for e in cx.edges]
    out["faces"] = [list(f) for f in cx.faces]
    out["pairing"] = [
        {"a": p.a, "b": p.b, "offset": p.offset, "reversed": p.reversed} for p in scheme.pairings
    ]
    return out


def from_dict(data) -> FacePairingScheme:
    try:
        cx = BoundaryComplex(
            vertices=tuple(str(v) for v in data["vertices"]),
            edges=tuple((int(u), int(v)) for u, v in data["edges"]),
            faces=tuple(tuple(int(r) for r in f) for f in data["faces"]),
        )
        pairs = tuple(
            FacePairing(int(p["a"]), int(p["b"]), int(p["offset"]), bool(p["reversed"]))
            for p in data["pairing"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SchemeError):
            raise
        raise SchemeError(f"malformed scheme: {exc!r}") from exc
    return FacePairingScheme(cx, pairs, data.get("meta"))


def dumps(scheme, with_meta=True) -> str:
    return json.dumps(to_dict(scheme, with_meta), indent=1, sort_keys=False) + "\n"


def loads(text) -> FacePairingScheme:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SchemeError("scheme file must hold a JSON object")
    return from_dict(data)


def load(path) -> FacePairingScheme:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(scheme, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(scheme))
