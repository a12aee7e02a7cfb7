"""The involutions p0 and p_alpha acting on flags, and the invariants built from them.

A flag is a (face, position) pair.  Flags are numbered globally in
(face, position) lexicographic order, which fixes the iteration order of
every cycle decomposition below.

The face pairing p0 sends a flag to its glued image.  For an edge class
alpha, p_alpha swaps the two face-sides of each edge in alpha and fixes all
other flags.  order(alpha) is the order of p0 . p_alpha on the flags of alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import lcm
from typing import NamedTuple

from .complex import ClassPartition, FacePairingScheme, SchemeError, edge_classes
from .unionfind import UnionFind


class Flag(NamedTuple):
    face: int
    position: int


class FlagIndex:
    """Bidirectional numbering of the flags of a boundary complex."""

    def __init__(self, cx):
        self.start = []
        self.flags = []
        for f, face in enumerate(cx.faces):
            self.start.append(len(self.flags))
            self.flags.extend(Flag(f, i) for i in range(len(face)))
        self.edge = [cx.side(f, i)[0] for f, i in self.flags]

    def __len__(self):
        return len(self.flags)

    def id(self, flag):
        return self.start[flag[0]] + flag[1]


class FlagPermutation:
    """A bijection of the flag set, stored as an image table."""

    def __init__(self, index: FlagIndex, image):
        self.index = index
        self.image = tuple(image)

    def __call__(self, flag):
        return self.index.flags[self.image[self.index.id(flag)]]

    def __eq__(self, other):
        return isinstance(other, FlagPermutation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def then(self, other):
        """Apply ``self`` first, then ``other``."""
        return FlagPermutation(self.index, [other.image[x] for x in self.image])

    def is_identity(self):
        return all(x == i for i, x in enumerate(self.image))

    def is_involution(self):
        return self.then(self).is_identity()

    def fixed(self):
        return [self.index.flags[i] for i, x in enumerate(self.image) if x == i]

    def cycles(self, support=None):
        """Cycle decomposition, optionally restricted to an invariant flag set."""
        ids = range(len(self.image)) if support is None else sorted(support)
        seen = set()
        out = []
        for start in ids:
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.image[x]
            out.append([self.index.flags[i] for i in cyc])
        return out

    def order(self, support=None):
        return reduce(lcm, (len(c) for c in self.cycles(support)), 1)


def _class_of(scheme, alpha, classes):
    classes = classes if classes is not None else edge_classes(scheme)
    if not 0 <= alpha < len(classes):
        raise SchemeError(f"unknown edge class {alpha}")
    return classes


def p0_flags(scheme: FacePairingScheme) -> FlagPermutation:
    idx = FlagIndex(scheme.complex)
    return FlagPermutation(idx, [idx.id(scheme.glue(f, i)) for f, i in idx.flags])


def _swap_sides(scheme, idx, edges):
    image = list(range(len(idx)))
    for e, sides in enumerate(scheme.complex.edge_sides()):
        if e in edges:
            a, b = (idx.id(s) for s in sides)
            image[a], image[b] = b, a
    return image


def p_alpha_flags(scheme, alpha, classes: ClassPartition | None = None) -> FlagPermutation:
    classes = _class_of(scheme, alpha, classes)
    idx = FlagIndex(scheme.complex)
    return FlagPermutation(idx, _swap_sides(scheme, idx, set(classes.classes[alpha])))


def class_flags(idx: FlagIndex, classes: ClassPartition, alpha):
    return {i for i, e in enumerate(idx.edge) if classes.index[e] == alpha}


def edge_order(scheme, alpha, classes=None) -> int:
    """Smallest m > 0 with (p0 . p_alpha)^m = 1 on the flags of alpha."""
    classes = _class_of(scheme, alpha, classes)
    comp = p_alpha_flags(scheme, alpha, classes).then(p0_flags(scheme))
    return comp.order(class_flags(comp.index, classes, alpha))


def all_orders(scheme, classes=None):
    """order(alpha) for every class in one pass.

    The p_alpha for different classes have disjoint supports, so their
    product swaps the sides of every edge; on the flags of alpha it agrees
    with p_alpha, and p0 preserves each class's flag set.
    """
    classes = classes if classes is not None else edge_classes(scheme)
    idx = FlagIndex(scheme.complex)
    swap = _swap_sides(scheme, idx, set(range(len(scheme.complex.edges))))
    p0 = [idx.id(scheme.glue(f, i)) for f, i in idx.flags]
    orders = [1] * len(classes)
    seen = [False] * len(idx)
    for start in range(len(idx)):
        if seen[start]:
            continue
        n = 0
        x = start
        while not seen[x]:
            seen[x] = True
            n += 1
            x = p0[swap[x]]
        k = classes.index[idx.edge[start]]
        orders[k] = lcm(orders[k], n)
    return orders


def degree_of_scheme(scheme, classes=None) -> int:
    return max(all_orders(scheme, classes), default=1)


def is_flat(scheme, classes=None) -> bool:
    # degree 1 counts as flat
    return degree_of_scheme(scheme, classes) <= 2


def is_collapsible(scheme, alpha, classes=None) -> bool:
    """True if some edge of alpha is folded onto itself by its face's gluing."""
    classes = _class_of(scheme, alpha, classes)
    sides = scheme.complex.edge_sides()
    for e in classes.classes[alpha]:
        (f, i), (k, j) = sides[e]
        if scheme.partner(f) == k and scheme.glue(f, i) == (k, j):
            return True
    return False


@dataclass(frozen=True)
class EdgeClassInfo:
    class_id: int
    members: tuple[int, ...]
    order: int
    collapsible: bool

    @property
    def flat(self):
        return self.order <= 2

    def to_dict(self):
        return {
            "class": self.class_id,
            "members": [e + 1 for e in self.members],
            "order": self.order,
            "collapsible": self.collapsible,
            "flat": self.flat,
        }


def edge_class_table(scheme, classes=None) -> list[EdgeClassInfo]:
    classes = classes if classes is not None else edge_classes(scheme)
    orders = all_orders(scheme, classes)
    return [
        EdgeClassInfo(k, members, orders[k], is_collapsible(scheme, k, classes))
        for k, members in enumerate(classes.classes)
    ]


def face_action(scheme, alpha, classes=None):
    """Face-level view of p_alpha, as a list ``face -> face``.

    A face whose alpha-sides all lead back to its own peer is left fixed:
    crossing there would merge a face with the face it is glued to.  A face
    whose alpha-sides lead to more than one place has no well-defined image.
    """
    classes = _class_of(scheme, alpha, classes)
    cx = scheme.complex
    sides = cx.edge_sides()
    members = set(classes.classes[alpha])
    action = list(range(len(cx.faces)))
    for f, face in enumerate(cx.faces):
        across = []
        for i, ref in enumerate(face):
            e = abs(ref) - 1
            if e in members:
                other = [s for s in sides[e] if s != (f, i)][0]
                across.append(other[0])
        targets = set(across) - {scheme.partner(f)}
        if not targets:
            continue
        if len(across) > 1:
            raise SchemeError(
                f"face {f} carries {len(across)} sides of edge class {alpha}; "
                "subdivide the scheme so each face meets the class at most once"
            )
        action[f] = across[0]
    return action


def g2_orbits(scheme, classes=None) -> ClassPartition:
    """Face orbits under the p_alpha with order 2 that are not collapsible."""
    classes = classes if classes is not None else edge_classes(scheme)
    uf = UnionFind(len(scheme.complex.faces))
    for info in edge_class_table(scheme, classes):
        if info.order == 2 and not info.collapsible:
            for f, g in enumerate(face_action(scheme, info.class_id, classes)):
                uf.union(f, g)
    return ClassPartition.from_groups("face", uf.groups(), len(scheme.complex.faces))
