"""Seed-deterministic random road networks for benchmarks and stress tests.

Nodes are points uniform in the unit square; candidate links come from
the Delaunay triangulation (planar, short local connections, like a
street network). A spanning tree is kept first so the graph is strongly
connected (every undirected pick yields both directed edges), then the
remaining link budget is filled by a seeded shuffle. Durations map link
length linearly onto [30 s, 600 s]; each link is covered with
probability 0.7 (single segment).
"""

from __future__ import annotations

import math

import numpy as np

from .graph import CoverageSegment, Edge, Node, RoadGraph

MIN_DURATION_S = 30.0
MAX_DURATION_S = 600.0


def _delaunay_links(points: np.ndarray) -> list[tuple[int, int]]:
    n = len(points)
    if n == 2:
        return [(0, 1)]
    from scipy.spatial import Delaunay

    tri = Delaunay(points)
    links: set[tuple[int, int]] = set()
    for simplex in tri.simplices:
        for a in range(3):
            u, v = int(simplex[a]), int(simplex[(a + 1) % 3])
            links.add((min(u, v), max(u, v)))
    return sorted(links)


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def random_planar_graph(
    nodes: int, edges: int, seed: int, covered_probability: float = 0.7
) -> RoadGraph:
    """Random strongly connected planar road network.

    ``edges`` is the target *directed* edge count; every kept link
    contributes both directions, and the spanning tree sets a floor of
    2*(nodes-1), so the result has the nearest achievable even count.
    """
    if nodes < 2:
        raise ValueError("need at least 2 nodes")
    if not 0.0 <= covered_probability <= 1.0:
        raise ValueError("covered_probability must be in [0, 1]")
    rng = np.random.default_rng(seed)
    points = rng.random((nodes, 2))
    links = _delaunay_links(points)

    lengths = {
        (u, v): float(np.hypot(*(points[u] - points[v]))) for u, v in links
    }
    # Spanning tree over shortest links first keeps the network connected.
    uf = _UnionFind(nodes)
    tree: list[tuple[int, int]] = []
    rest: list[tuple[int, int]] = []
    for u, v in sorted(links, key=lambda l: (lengths[l], l)):
        (tree if uf.union(u, v) else rest).append((u, v))
    target_links = max(len(tree), math.ceil(edges / 2))
    extra = target_links - len(tree)
    if extra > 0:
        order = rng.permutation(len(rest))
        chosen = tree + [rest[i] for i in order[:extra]]
    else:
        chosen = list(tree)
    chosen.sort()

    lmin = min(lengths[l] for l in chosen)
    lmax = max(lengths[l] for l in chosen)
    span = lmax - lmin

    node_objs = {
        f"n{i}": Node(f"n{i}", lat=float(points[i][1]), lon=float(points[i][0]))
        for i in range(nodes)
    }
    edge_objs: list[Edge] = []
    for u, v in chosen:
        if span > 0:
            duration = MIN_DURATION_S + (lengths[(u, v)] - lmin) / span * (
                MAX_DURATION_S - MIN_DURATION_S
            )
        else:
            duration = MIN_DURATION_S
        covered = bool(rng.random() < covered_probability)
        segments = (CoverageSegment(1.0, covered),)
        edge_objs.append(Edge(f"n{u}", f"n{v}", duration, segments))
        edge_objs.append(Edge(f"n{v}", f"n{u}", duration, segments))
    return RoadGraph(nodes=node_objs, edges=tuple(edge_objs))


def far_apart_pair(g: RoadGraph) -> tuple[str, str]:
    """Deterministic source/target pick: the node farthest from n0."""
    nodes = list(g.nodes.values())
    origin = g.nodes["n0"]
    best = max(
        (n for n in nodes if n.id != "n0"),
        key=lambda n: ((n.lat - origin.lat) ** 2 + (n.lon - origin.lon) ** 2, n.id),
    )
    return "n0", best.id
