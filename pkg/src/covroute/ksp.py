"""Loopless shortest-path enumeration as a lazy, resumable stream.

The stream yields simple source-to-target paths one at a time in
nondecreasing duration order (deviation search over the best path so
far, spur paths found with an A* whose heuristic is the exact distance
to the target in the unrestricted graph, which stays admissible under
edge/node removals). The candidate filter upstream may consume far more
than k raw paths, so laziness is part of the contract, not an
optimization.

Tie-breaking is total and deterministic: duration, then fewer edges,
then lexicographic node-id sequence, then parallel-edge ordinal keys.
"""

from __future__ import annotations

import heapq
import weakref
from dataclasses import dataclass
from math import inf

from .graph import Path, RoadGraph


@dataclass(frozen=True)
class _GraphIndex:
    """Integer-indexed adjacency view used by the searches."""

    ids: tuple[str, ...]
    idx: dict[str, int]
    rank: tuple[int, ...]  # rank[i] = position of ids[i] in sorted id order
    adj: tuple[tuple[tuple[int, float, int], ...], ...]  # (to, duration, edge_pos)
    radj: tuple[tuple[tuple[int, float], ...], ...]
    dur: tuple[float, ...]  # duration per edge position
    to_idx: tuple[int, ...]  # head-node index per edge position
    to_rank: tuple[int, ...]  # head-node rank per edge position

    @staticmethod
    def build(g: RoadGraph) -> "_GraphIndex":
        ids = tuple(g.nodes)
        idx = {nid: i for i, nid in enumerate(ids)}
        order = sorted(range(len(ids)), key=lambda i: ids[i])
        rank = [0] * len(ids)
        for r, i in enumerate(order):
            rank[i] = r
        adj: list[list[tuple[int, float, int]]] = [[] for _ in ids]
        radj: list[list[tuple[int, float]]] = [[] for _ in ids]
        dur: list[float] = []
        to_idx: list[int] = []
        for pos, e in enumerate(g.edges):
            u, v = idx[e.from_id], idx[e.to_id]
            adj[u].append((v, e.duration_s, pos))
            radj[v].append((u, e.duration_s))
            dur.append(e.duration_s)
            to_idx.append(v)
        return _GraphIndex(
            ids=ids,
            idx=idx,
            rank=tuple(rank),
            adj=tuple(tuple(a) for a in adj),
            radj=tuple(tuple(a) for a in radj),
            dur=tuple(dur),
            to_idx=tuple(to_idx),
            to_rank=tuple(rank[v] for v in to_idx),
        )


_index_cache: "weakref.WeakKeyDictionary[RoadGraph, _GraphIndex]" = weakref.WeakKeyDictionary()


def _index_for(g: RoadGraph) -> _GraphIndex:
    try:
        return _index_cache[g]
    except KeyError:
        ix = _GraphIndex.build(g)
        _index_cache[g] = ix
        return ix


def _dist_to_target(ix: _GraphIndex, t: int) -> list[float]:
    """Exact distance from every node to t (reverse Dijkstra)."""
    dist = [inf] * len(ix.ids)
    dist[t] = 0.0
    heap = [(0.0, t)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for u, w in ix.radj[v]:
            nd = d + w
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def _search(
    ix: _GraphIndex,
    s: int,
    t: int,
    h: list[float] | None = None,
    banned_nodes: frozenset[int] = frozenset(),
    banned_edges: set[int] | frozenset[int] = frozenset(),
) -> tuple[int, ...] | None:
    """Tie-break-minimal simple path from s to t as edge positions.

    Label-setting search keyed by (duration [+ heuristic], edge count,
    node-rank sequence, edge-position sequence); the first settlement of
    t is the global minimum under that order. Positive durations make
    every duration-minimal walk simple, so no explicit loop check is
    needed.
    """
    if s == t:
        return ()
    rank = ix.rank
    hs = 0.0 if h is None else h[s]
    if hs == inf:
        return None
    settled = [False] * len(ix.ids)
    best_g = [inf] * len(ix.ids)
    best_g[s] = 0.0
    heap: list[tuple[float, int, tuple[int, ...], tuple[int, ...], int, float]] = [
        (hs, 0, (), (), s, 0.0)
    ]
    while heap:
        _f, n, rseq, pseq, v, g = heapq.heappop(heap)
        if settled[v]:
            continue
        settled[v] = True
        if v == t:
            return pseq
        for w, dur, pos in ix.adj[v]:
            if settled[w] or w in banned_nodes or pos in banned_edges:
                continue
            if h is not None and h[w] == inf:
                continue
            g2 = g + dur
            if g2 > best_g[w]:
                continue
            best_g[w] = g2
            f2 = g2 if h is None else g2 + h[w]
            heapq.heappush(heap, (f2, n + 1, rseq + (rank[w],), pseq + (pos,), w, g2))
    return None


def _to_path(g: RoadGraph, source: str, posseq: tuple[int, ...]) -> Path:
    return Path(source=source, edges=tuple(g.edges[p] for p in posseq))


def _candidate_key(
    ix: _GraphIndex, posseq: tuple[int, ...]
) -> tuple[float, int, tuple[int, ...], tuple[int, ...]]:
    dur = ix.dur
    cost = 0.0
    for pos in posseq:  # flat left-to-right sum, same term order as Path
        cost += dur[pos]
    return (cost, len(posseq), tuple(map(ix.to_rank.__getitem__, posseq)), posseq)


def shortest_path(g: RoadGraph, s: str, t: str) -> Path | None:
    """Minimum-duration simple path, or None if t is unreachable."""
    g.require_node(s)
    g.require_node(t)
    ix = _index_for(g)
    pseq = _search(ix, ix.idx[s], ix.idx[t])
    if pseq is None:
        return None
    return _to_path(g, s, pseq)


def _yen_paths(g: RoadGraph, s: str, t: str):
    ix = _index_for(g)
    si, ti = ix.idx[s], ix.idx[t]
    if si == ti:
        yield Path(source=s, edges=())
        return
    h = _dist_to_target(ix, ti)
    if h[si] == inf:
        return
    first = _search(ix, si, ti, h)
    if first is None:
        return
    yield _to_path(g, s, first)

    accepted: list[tuple[tuple[int, ...], int]] = [(first, 0)]
    in_b: set[tuple[int, ...]] = set()
    heap: list[tuple[float, int, tuple[int, ...], tuple[int, ...], int]] = []

    while True:
        last, last_dev = accepted[-1]
        # Node indices along the last accepted path (excluding t).
        spur_nodes = [si]
        for pos in last[:-1]:
            spur_nodes.append(ix.to_idx[pos])
        # At spur index i every accepted path sharing the root last[:i]
        # must have its continuation edge banned. Paths sharing a longer
        # prefix continue with last[i] itself, so one pass recording each
        # path's edge at its divergence point covers the whole set.
        banned_by_i: dict[int, set[int]] = {}
        for p, _ in accepted:
            m = min(len(p), len(last))
            l = 0
            while l < m and p[l] == last[l]:
                l += 1
            if l < len(p) and l < len(last):
                banned_by_i.setdefault(l, set()).add(p[l])
        for i in range(last_dev, len(last)):
            banned_edges = banned_by_i.get(i, set())
            banned_edges.add(last[i])
            banned_nodes = frozenset(spur_nodes[:i])
            spur = _search(ix, spur_nodes[i], ti, h, banned_nodes, banned_edges)
            if spur is None:
                continue
            cand = last[:i] + spur
            if cand in in_b:
                continue
            in_b.add(cand)
            heapq.heappush(heap, _candidate_key(ix, cand) + (i,))
        if not heap:
            return
        _cost, _n, _rseq, posseq, dev = heapq.heappop(heap)
        in_b.discard(posseq)
        yield _to_path(g, s, posseq)
        accepted.append((posseq, dev))


class PathStream:
    """Single-owner cursor over the simple s-t paths of a graph.

    Distinct streams over the same (immutable) graph are independent;
    two streams on the same inputs yield identical sequences.
    """

    def __init__(self, graph: RoadGraph, source: str, target: str):
        graph.require_node(source)
        graph.require_node(target)
        self.graph = graph
        self.source = source
        self.target = target
        self._gen = _yen_paths(graph, source, target)

    def next_path(self) -> Path | None:
        """The next simple path in nondecreasing duration order, or None."""
        return next(self._gen, None)

    def __iter__(self):
        return self._gen


def open_stream(g: RoadGraph, s: str, t: str) -> PathStream:
    return PathStream(g, s, t)


def next_path(stream: PathStream) -> Path | None:
    return stream.next_path()
