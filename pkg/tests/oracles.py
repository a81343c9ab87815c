"""Brute-force reference computations, independent of the package's algorithms."""
from __future__ import annotations

import itertools
from collections import deque


def pascal_binomial(n, m):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[m] if 0 <= m <= n else 0


def colex_order(n, m):
    """All m-subsets of range(n), sorted colexicographically."""
    return sorted(itertools.combinations(range(n), m), key=lambda s: tuple(reversed(s)))


def adjacency_sets(g):
    return [set(nb) for nb in g.adjacency]


def brute_max_clique(adj):
    n = len(adj)
    for size in range(n, 0, -1):
        for cand in itertools.combinations(range(n), size):
            if all(b in adj[a] for a, b in itertools.combinations(cand, 2)):
                return size
    return 0


def brute_max_independent(adj):
    n = len(adj)
    for size in range(n, 0, -1):
        for cand in itertools.combinations(range(n), size):
            if all(b not in adj[a] for a, b in itertools.combinations(cand, 2)):
                return size
    return 0


def brute_chromatic(adj):
    """Smallest k with a proper coloring, over restricted-growth color strings."""
    n = len(adj)
    if n == 0:
        return 0

    def colorable(k):
        colors = [0] * n

        def place(v, used):
            if v == n:
                return True
            for c in range(min(k, used + 1)):
                if all(colors[w] != c for w in adj[v] if w < v):
                    colors[v] = c
                    if place(v + 1, max(used, c + 1)):
                        return True
            return False

        return place(0, 0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def brute_domination(adj):
    n = len(adj)
    for size in range(1, n + 1):
        for cand in itertools.combinations(range(n), size):
            s = set(cand)
            if all(v in s or adj[v] & s for v in range(n)):
                return size
    return 0


def bfs_all(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist
