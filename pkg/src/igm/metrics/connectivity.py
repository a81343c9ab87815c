"""Breadth-first distances, components, articulation points and diameter."""
from __future__ import annotations

from collections import deque

from ..graph import GraphSnapshot


def bfs_distances(g: GraphSnapshot, source: int) -> list[int]:
    """Hop distances from ``source``; -1 marks unreachable nodes."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def connected_components(g: GraphSnapshot) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: GraphSnapshot) -> bool:
    return g.n > 0 and min(bfs_distances(g, 0)) >= 0


def articulation_points(g: GraphSnapshot) -> list[int]:
    """Cut vertices via iterative depth-first low-link search."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut = [False] * n
    timer = 0
    adj = g.adjacency
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # frames: (node, parent, next neighbor index)
        stack = [(root, -1, 0)]
        while stack:
            u, parent, i = stack[-1]
            if i < len(adj[u]):
                stack[-1] = (u, parent, i + 1)
                v = adj[u][i]
                if disc[v] < 0:
                    disc[v] = low[v] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((v, u, 0))
                elif v != parent:
                    low[u] = min(low[u], disc[v])
            else:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[u])
                    if parent != root and low[u] >= disc[parent]:
                        cut[parent] = True
        if root_children > 1:
            cut[root] = True
    return [v for v in range(n) if cut[v]]


def is_biconnected(g: GraphSnapshot) -> bool:
    """Connected, at least 3 nodes, and no cut vertex."""
    return g.n >= 3 and is_connected(g) and not articulation_points(g)


def eccentricity(g: GraphSnapshot, v: int) -> int | None:
    dist = bfs_distances(g, v)
    return None if min(dist) < 0 else max(dist)


def diameter(g: GraphSnapshot) -> int | None:
    """Largest eccentricity; ``None`` when the graph is disconnected."""
    best = 0
    for v in range(g.n):
        ecc = eccentricity(g, v)
        if ecc is None:
            return None
        best = max(best, ecc)
    return best
