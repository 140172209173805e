"""
Disjoint-set forest with path compression and union by rank
"""
from typing import Dict, Hashable, List


class UnionFind:
    """Union-find over arbitrary hashable items, created lazily on first use"""

    def __init__(self) -> None:
        self._parent: Dict[Hashable, Hashable] = {}
        self._rank: Dict[Hashable, int] = {}

    def find(self, item: Hashable) -> Hashable:
        parent = self._parent
        if item not in parent:
            parent[item] = item
            self._rank[item] = 0
            return item
        root = item
        while parent[root] != root:
            root = parent[root]
        # path compression
        while parent[item] != root:
            parent[item], item = root, parent[item]
        return root

    def union(self, a: Hashable, b: Hashable) -> bool:
        """
        Merge the sets of a and b

        Returns:
            False if a and b were already connected
        """
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1
        return True

    def connected(self, a: Hashable, b: Hashable) -> bool:
        return self.find(a) == self.find(b)

    def components(self) -> List[List[Hashable]]:
        """Groups of items sharing a root, each sorted, ordered by minimum"""
        groups: Dict[Hashable, List[Hashable]] = {}
        for item in list(self._parent):
            groups.setdefault(self.find(item), []).append(item)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


__all__ = ['UnionFind']
