"""Shared brute-force oracles and small factories for the test suite.

Everything here deliberately avoids the code paths it is used to check:
walk counting enumerates walks one edge at a time instead of powering the
adjacency matrix, and graphs are assembled directly from edge sets.
"""

import numpy as np

from vgpool.graphs import VisibilityGraph


def graph_from_edges(n, edges, weights=None, kind=None):
    """Assemble a VisibilityGraph straight from an (i, j) edge collection."""
    pairs = sorted({(min(i, j), max(i, j)) for i, j in edges})
    arr = np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)
    if weights is not None:
        wmap = {}
        for (i, j), w in weights.items():
            wmap[(min(i, j), max(i, j))] = w
        warr = np.array([wmap[p] for p in pairs], dtype=np.float64)
        return VisibilityGraph(n=n, kind=kind or "weighted", edges=arr, weights=warr)
    return VisibilityGraph(n=n, kind=kind or "natural", edges=arr)


def random_test_graph(rng, max_n=8, weighted=False):
    """Random symmetric graph containing the path edges (i, i+1)."""
    n = int(rng.integers(2, max_n + 1))
    edges = {(i, i + 1) for i in range(n - 1)}
    for i in range(n):
        for j in range(i + 2, n):
            if rng.random() < 0.4:
                edges.add((i, j))
    if weighted:
        weights = {e: float(rng.uniform(-np.pi / 2, np.pi / 2)) for e in edges}
        return graph_from_edges(n, edges, weights=weights)
    return graph_from_edges(n, edges)


def neighbor_lists(graph):
    nbrs = [[] for _ in range(graph.n)]
    weights = graph.weights if graph.weights is not None else np.ones(graph.n_edges)
    for (i, j), w in zip(graph.edges.tolist(), weights.tolist()):
        nbrs[i].append((j, w))
        nbrs[j].append((i, w))
    return nbrs


def enumerate_walk_degree(graph, r):
    """Walk-count oracle: explicitly enumerate every length-r walk from each
    node and sum the weight products of walks ending elsewhere."""
    nbrs = neighbor_lists(graph)
    out = np.zeros(graph.n)
    for start in range(graph.n):
        total = 0.0
        stack = [(start, r, 1.0)]
        while stack:
            node, steps, acc = stack.pop()
            if steps == 0:
                if node != start:
                    total += acc
                continue
            for nb, w in nbrs[node]:
                stack.append((nb, steps - 1, acc * w))
        out[start] = total
    return out


def bfs_shell_counts(graph, r):
    """Shell oracle: per node, count nodes at hop distance exactly r via BFS."""
    nbrs = neighbor_lists(graph)
    out = np.zeros(graph.n)
    for start in range(graph.n):
        dist = {start: 0}
        frontier = [start]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for node in frontier:
                for nb, _ in nbrs[node]:
                    if nb not in dist:
                        dist[nb] = depth
                        nxt.append(nb)
            frontier = nxt
        out[start] = sum(1 for d in dist.values() if d == r)
    return out
