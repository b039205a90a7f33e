from typing import List


class UnionFind:
    """Union-find over hyperedge ids with path compression.

    Each root also keeps the list of members of its component, so a merge
    can report exactly which pairs became connected. The threshold oracle
    relies on that to fill its bottleneck table in one pass.
    """

    def __init__(self, size: int):
        self.parents = list(range(size))
        self.members: List[List[int]] = [[i] for i in range(size)]

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]

        # compress
        while elem != root:
            parent = self.parents[elem]
            self.parents[elem] = root
            elem = parent
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the components of a and b. Returns False if already joined."""
        ra = self.find(a)
        rb = self.find(b)
        if ra == rb:
            return False

        # smaller list goes under the larger root
        if len(self.members[ra]) < len(self.members[rb]):
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.members[ra].extend(self.members[rb])
        self.members[rb] = []
        return True

    def component(self, elem: int) -> List[int]:
        return self.members[self.find(elem)]
