"""Array-based disjoint-set forest for connected-component queries."""
from __future__ import annotations


class UnionFind:
    """Union by size with path halving over elements 0..n-1."""

    __slots__ = ("parent", "size", "n_components")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.n_components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.n_components -= 1

    def labels(self) -> list[int]:
        """Component labels, numbered by order of first appearance."""
        out = [0] * len(self.parent)
        index: dict[int, int] = {}
        for x in range(len(self.parent)):
            r = self.find(x)
            lab = index.get(r)
            if lab is None:
                lab = len(index)
                index[r] = lab
            out[x] = lab
        return out
