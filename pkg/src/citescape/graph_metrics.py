"""Structure of the thresholded similarity graph: components, k-cores, articulation points.

Edges are unweighted here: two journals are adjacent when their cosine
survived the cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "SimilarityGraph",
    "connected_components",
    "k_core",
    "core_clusters",
    "articulation_points",
]


@dataclass(frozen=True)
class SimilarityGraph:
    nodes: tuple
    adjacency: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, nodes, edges) -> "SimilarityGraph":
        nodes = tuple(nodes)
        index = {v: i for i, v in enumerate(nodes)}
        if len(index) != len(nodes):
            raise ValueError("duplicate nodes")
        adj = [set() for _ in nodes]
        for a, b in edges:
            i, j = index[a], index[b]
            if i != j:
                adj[i].add(j)
                adj[j].add(i)
        return cls(nodes, tuple(frozenset(s) for s in adj))

    @classmethod
    def from_similarity(cls, sim) -> "SimilarityGraph":
        """Graph with an edge wherever a similarity entry is positive."""
        nodes = tuple(sim.journals)
        return cls.from_edges(nodes, [(nodes[i], nodes[j]) for i, j, _ in sim.edges()])

    def degree(self, node) -> int:
        return len(self.adjacency[self.nodes.index(node)])

    def edges(self):
        for i, nbrs in enumerate(self.adjacency):
            for j in sorted(nbrs):
                if i < j:
                    yield self.nodes[i], self.nodes[j]

    def __len__(self):
        return len(self.nodes)


def _components(adjacency):
    n = len(adjacency)
    seen = set()
    out = []
    for start in range(n):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def connected_components(g: SimilarityGraph) -> list[list]:
    """Maximal connected node sets in node order, singletons included."""
    return [[g.nodes[i] for i in comp] for comp in _components(g.adjacency)]


def k_core(g: SimilarityGraph) -> dict:
    """Coreness of every node by bucket-ordered minimum-degree peeling."""
    n = len(g.nodes)
    degree = [len(a) for a in g.adjacency]
    max_deg = max(degree, default=0)
    buckets = [[] for _ in range(max_deg + 1)]
    for v in range(n):
        buckets[degree[v]].append(v)
    core = [0] * n
    removed = [False] * n
    for d in range(max_deg + 1):
        # degrees only drop to >= the current level, so buckets below d stay finished
        while buckets[d]:
            v = buckets[d].pop()
            if removed[v] or degree[v] != d:
                continue
            core[v] = d
            removed[v] = True
            for w in g.adjacency[v]:
                if not removed[w] and degree[w] > d:
                    degree[w] -= 1
                    buckets[degree[w]].append(w)
    return {g.nodes[v]: core[v] for v in range(n)}


def core_clusters(coreness: dict) -> list[tuple[int, list]]:
    """Group nodes by coreness, highest core first."""
    groups: dict[int, list] = {}
    for node, k in coreness.items():
        groups.setdefault(k, []).append(node)
    return [(k, groups[k]) for k in sorted(groups, reverse=True)]


def articulation_points(g: SimilarityGraph) -> set:
    """Nodes whose removal splits their connected component (iterative lowpoint DFS)."""
    n = len(g.nodes)
    disc = [-1] * n
    low = [0] * n
    points = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(g.adjacency[root])))]
        while stack:
            u, parent, it = stack[-1]
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(sorted(g.adjacency[w]))))
                    break
                if w != parent:
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if parent == -1:
                    continue
                low[parent] = min(low[parent], low[u])
                if parent == root:
                    root_children += 1
                elif low[u] >= disc[parent]:
                    points.add(parent)
        if root_children > 1:
            points.add(root)
    return {g.nodes[i] for i in points}
