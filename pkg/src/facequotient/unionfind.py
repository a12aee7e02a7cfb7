"""Disjoint-set forest with an optional orientation parity per element."""


class UnionFind:
    """Union-find over ``0..n-1`` with path compression and union by size.

    Each element also carries a parity bit relative to its root, so the
    structure can track whether two identified edges agree or disagree in
    direction.  ``union(a, b, flip)`` records ``parity(a) ^ parity(b) == flip``;
    a later union contradicting earlier ones marks the whole set as
    inconsistent instead of raising.
    """

    def __init__(self, n):
        self._parent = list(range(n))
        self._parity = [0] * n
        self._size = [1] * n
        self._bad = [False] * n

    def find(self, a):
        parent = self._parent
        path = []
        while parent[a] != a:
            path.append(a)
            a = parent[a]
        root = a
        # Compress, accumulating parity from the top of the path down.
        acc = 0
        for node in reversed(path):
            acc ^= self._parity[node]
            self._parity[node] = acc
            parent[node] = root
        return root

    def parity(self, a):
        self.find(a)
        return 0 if self._parent[a] == a else self._parity[a]

    def union(self, a, b, flip=0):
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.parity(a), self.parity(b)
        if ra == rb:
            if pa ^ pb != flip:
                self._bad[ra] = True
            return ra
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._parity[rb] = pa ^ pb ^ flip
        self._size[ra] += self._size[rb]
        self._bad[ra] = self._bad[ra] or self._bad[rb]
        return ra

    def inconsistent(self, a):
        return self._bad[self.find(a)]

    def groups(self):
        """Sets as sorted tuples, ordered by their smallest member."""
        buckets = {}
        for x in range(len(self._parent)):
            buckets.setdefault(self.find(x), []).append(x)
        return sorted((tuple(v) for v in buckets.values()), key=lambda g: g[0])
