"""Road-network data model and the coverage-label graph rewrites.

A road network is a directed weighted graph whose edge weights are travel
durations in seconds. Each edge carries an ordered list of coverage
segments (fractions of the edge's duration flagged covered/uncovered).
Two rewrites operate on it:

* ``transform_graph`` partitions every multi-segment edge into a chain of
  singly-labeled sub-edges joined by synthetic nodes, keeping provenance
  so planned routes can be folded back onto the original map.
* ``simplify_graph`` drops uncovered edges whose duration exceeds the
  contiguous-breakage budget.

Graphs are immutable after construction; every function here is pure.
"""

from __future__ import annotations

import json
import os
import weakref
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Any, Iterable, Mapping, Sequence

FRACTION_TOL = 1e-9


class GraphError(ValueError):
    """Invalid graph document or graph operation."""


class UnknownNodeError(GraphError):
    """A referenced node id does not exist in the graph."""


@dataclass(frozen=True)
class Node:
    id: str
    lat: float | None = None
    lon: float | None = None


@dataclass(frozen=True)
class CoverageSegment:
    """A fraction of an edge's duration with a binary coverage flag."""

    fraction: float
    covered: bool


@dataclass(frozen=True)
class EdgeRef:
    """Identity of an edge in the originally loaded graph.

    ``key`` is the ordinal among parallel edges with the same endpoints,
    in input order; it disambiguates two physical roads between the same
    pair of intersections.
    """

    from_id: str
    to_id: str
    key: int


@dataclass(frozen=True)
class Edge:
    from_id: str
    to_id: str
    duration_s: float
    segments: tuple[CoverageSegment, ...]
    key: int = 0
    # On edges of a transformed graph: the original edge this (sub-)edge
    # came from. None on freshly loaded graphs.
    origin: EdgeRef | None = None

    @property
    def ref(self) -> EdgeRef:
        return EdgeRef(self.from_id, self.to_id, self.key)

    @property
    def covered(self) -> bool:
        """Coverage flag of a singly-labeled edge."""
        if len(self.segments) != 1:
            raise GraphError(
                f"edge {self.from_id}->{self.to_id} is multi-labeled; "
                "transform the graph first"
            )
        return self.segments[0].covered

    def uncovered_duration_s(self) -> float:
        return sum(s.fraction * self.duration_s for s in self.segments if not s.covered)


@dataclass(frozen=True, eq=False)
class RoadGraph:
    """Directed road network. ``eq=False``: compare via ``to_doc`` if needed."""

    nodes: dict[str, Node]
    edges: tuple[Edge, ...]

    @cached_property
    def label_form(self) -> str:
        return "single" if all(len(e.segments) == 1 for e in self.edges) else "multi"

    @cached_property
    def adjacency(self) -> dict[str, tuple[int, ...]]:
        """Outgoing edge indices (into ``edges``) per node, in edge order."""
        adj: dict[str, list[int]] = {nid: [] for nid in self.nodes}
        for i, e in enumerate(self.edges):
            adj[e.from_id].append(i)
        return {nid: tuple(ix) for nid, ix in adj.items()}

    @cached_property
    def edge_by_ref(self) -> dict[EdgeRef, Edge]:
        return {e.ref: e for e in self.edges}

    def require_node(self, node_id: str) -> None:
        if node_id not in self.nodes:
            raise UnknownNodeError(f"unknown node id: {node_id!r}")


@dataclass(frozen=True)
class Path:
    """A simple walk given as its source node plus an ordered edge sequence.

    The explicit source makes the empty path (source == target) well
    defined.
    """

    source: str
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        prev = self.source
        seen = {self.source}
        for e in self.edges:
            if e.from_id != prev:
                raise GraphError(
                    f"disconnected path: edge starts at {e.from_id!r}, expected {prev!r}"
                )
            if e.to_id in seen:
                raise GraphError(f"path repeats node {e.to_id!r}")
            seen.add(e.to_id)
            prev = e.to_id

    @cached_property
    def nodes(self) -> tuple[str, ...]:
        return (self.source,) + tuple(e.to_id for e in self.edges)

    @property
    def target(self) -> str:
        return self.nodes[-1]

    @cached_property
    def duration_s(self) -> float:
        # Flat left-to-right sum; every other duration aggregate in the
        # package uses the same order so equality checks are exact.
        total = 0.0
        for e in self.edges:
            total += e.duration_s
        return total

    @cached_property
    def edge_refs(self) -> tuple[EdgeRef, ...]:
        return tuple(e.ref for e in self.edges)


def _as_document(source: Mapping[str, Any] | str | os.PathLike | IO) -> Mapping[str, Any]:
    if isinstance(source, Mapping):
        return source
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    elif isinstance(source, str):
        text = source
    else:
        raise GraphError(f"cannot read graph document from {source!r}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"graph document parse failure: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise GraphError("graph document must be a JSON object")
    return doc


def _normalize_segments(raw: Sequence[Mapping[str, Any]], where: str) -> tuple[CoverageSegment, ...]:
    if not raw:
        raise GraphError(f"empty segment list on edge {where}")
    segs: list[CoverageSegment] = []
    for s in raw:
        try:
            fraction = float(s["fraction"])
            covered = bool(s["covered"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed segment on edge {where}: {exc}") from exc
        if fraction <= 0.0:
            raise GraphError(f"nonpositive segment fraction on edge {where}")
        segs.append(CoverageSegment(fraction, covered))
    total = 0.0
    for s in segs:
        total += s.fraction
    if total <= 0.0:
        raise GraphError(f"segment fractions sum to zero on edge {where}")
    normalized = [CoverageSegment(s.fraction / total, s.covered) for s in segs]
    return merge_segments(normalized)


def merge_segments(segments: Iterable[CoverageSegment]) -> tuple[CoverageSegment, ...]:
    """Merge adjacent same-flag segments into maximal runs."""
    merged: list[CoverageSegment] = []
    for s in segments:
        if merged and merged[-1].covered == s.covered:
            merged[-1] = CoverageSegment(merged[-1].fraction + s.fraction, s.covered)
        else:
            merged.append(s)
    return tuple(merged)


def load_graph(source: Mapping[str, Any] | str | os.PathLike | IO) -> RoadGraph:
    """Parse and validate a graph document (mapping, JSON text, path, or file)."""
    doc = _as_document(source)
    nodes: dict[str, Node] = {}
    for n in doc.get("nodes", []):
        try:
            nid = str(n["id"])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed node entry: {n!r}") from exc
        if nid in nodes:
            raise GraphError(f"duplicate node id: {nid!r}")
        lat = n.get("lat")
        lon = n.get("lon")
        nodes[nid] = Node(nid, None if lat is None else float(lat), None if lon is None else float(lon))

    edges: list[Edge] = []
    key_counter: dict[tuple[str, str], int] = {}
    for raw in doc.get("edges", []):
        try:
            u = str(raw["from"])
            v = str(raw["to"])
            duration = float(raw["duration_s"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed edge entry: {raw!r}") from exc
        where = f"{u}->{v}"
        for endpoint in (u, v):
            if endpoint not in nodes:
                raise GraphError(f"dangling endpoint {endpoint!r} on edge {where}")
        if duration <= 0.0:
            raise GraphError(f"nonpositive duration on edge {where}")
        raw_segments = raw.get("segments")
        if raw_segments is None:
            segments = (CoverageSegment(1.0, True),)
        else:
            segments = _normalize_segments(raw_segments, where)
        key = key_counter.get((u, v), 0)
        key_counter[(u, v)] = key + 1
        edges.append(Edge(u, v, duration, segments, key=key))
    return RoadGraph(nodes=nodes, edges=tuple(edges))


def graph_to_doc(g: RoadGraph) -> dict[str, Any]:
    """Serializable document form of a graph (inverse of ``load_graph``)."""
    nodes = []
    for n in g.nodes.values():
        entry: dict[str, Any] = {"id": n.id}
        if n.lat is not None:
            entry["lat"] = n.lat
        if n.lon is not None:
            entry["lon"] = n.lon
        nodes.append(entry)
    edges = []
    for e in g.edges:
        edges.append(
            {
                "from": e.from_id,
                "to": e.to_id,
                "duration_s": e.duration_s,
                "segments": [{"fraction": s.fraction, "covered": s.covered} for s in e.segments],
            }
        )
    return {"nodes": nodes, "edges": edges}


_transform_cache: "weakref.WeakKeyDictionary[RoadGraph, RoadGraph]" = weakref.WeakKeyDictionary()


def synthetic_node_id(ref: EdgeRef, boundary: int, taken: Iterable[str] = ()) -> str:
    """Deterministic id for the node after segment ``boundary`` of ``ref``."""
    base = f"{ref.from_id}..{ref.to_id}.{ref.key}.{boundary}"
    taken_set = set(taken)
    while base in taken_set:
        base = "~" + base
    return base


def transform_graph(g: RoadGraph) -> RoadGraph:
    """Partition multi-segment edges into singly-labeled chains.

    An edge of duration w with segments (f1..fm) becomes m edges of
    durations w*f1..w*fm joined by fresh synthetic nodes; each sub-edge
    records the original edge in ``origin``. Singly-labeled edges pass
    through unchanged, so the transform is idempotent. Graphs are
    immutable, so the result is memoized per input graph.
    """
    try:
        return _transform_cache[g]
    except KeyError:
        pass
    nodes = dict(g.nodes)
    edges: list[Edge] = []
    for e in g.edges:
        if len(e.segments) == 1:
            seg = e.segments[0]
            if seg.fraction != 1.0 or e.origin is None:
                e = Edge(
                    e.from_id,
                    e.to_id,
                    e.duration_s,
                    (CoverageSegment(1.0, seg.covered),),
                    key=e.key,
                    origin=e.origin or e.ref,
                )
            edges.append(e)
            continue
        origin = e.origin or e.ref
        prev = e.from_id
        base_lat = g.nodes[e.from_id].lat
        base_lon = g.nodes[e.from_id].lon
        end_lat = g.nodes[e.to_id].lat
        end_lon = g.nodes[e.to_id].lon
        cum = 0.0
        for i, seg in enumerate(e.segments):
            cum += seg.fraction
            last = i == len(e.segments) - 1
            if last:
                nxt = e.to_id
            else:
                nxt = synthetic_node_id(origin, i, nodes)
                lat = lon = None
                if None not in (base_lat, base_lon, end_lat, end_lon):
                    lat = base_lat + (end_lat - base_lat) * cum
                    lon = base_lon + (end_lon - base_lon) * cum
                nodes[nxt] = Node(nxt, lat, lon)
            edges.append(
                Edge(
                    prev,
                    nxt,
                    e.duration_s * seg.fraction,
                    (CoverageSegment(1.0, seg.covered),),
                    key=0,
                    origin=origin,
                )
            )
            prev = nxt
    out = RoadGraph(nodes=nodes, edges=tuple(edges))
    _transform_cache[g] = out
    return out


def simplify_graph(g: RoadGraph, d2_s: float) -> RoadGraph:
    """Drop uncovered edges longer than the contiguous-breakage budget.

    Covered edges always survive; nodes are preserved.
    """
    if g.label_form != "single":
        raise GraphError("simplify_graph requires a singly-labeled graph")
    if d2_s < 0:
        raise GraphError("d2 budget must be nonnegative")
    kept = tuple(e for e in g.edges if e.covered or e.duration_s <= d2_s)
    if len(kept) == len(g.edges):
        return g  # nothing dropped; keep identity (and downstream caches)
    return RoadGraph(nodes=dict(g.nodes), edges=kept)


def coverage_runs(p: Path) -> tuple[tuple[bool, float], ...]:
    """Maximal same-flag runs of travel time along a path.

    Runs merge across segment and edge boundaries; the contiguous-
    breakage budget applies to these runs, not to single edges. Works on
    multi-labeled paths by walking segments in order, with the same
    ``duration * fraction`` terms the label transform produces, so a
    folded path yields byte-identical runs to its transformed original.
    """
    runs: list[tuple[bool, float]] = []

    def push(flag: bool, duration: float) -> None:
        if runs and runs[-1][0] == flag:
            runs[-1] = (flag, runs[-1][1] + duration)
        else:
            runs.append((flag, duration))

    for e in p.edges:
        if len(e.segments) == 1:
            push(e.segments[0].covered, e.duration_s)
        else:
            for seg in e.segments:
                push(seg.covered, e.duration_s * seg.fraction)
    return tuple(runs)


def fold_path(original: RoadGraph, p: Path) -> Path:
    """Map a transformed-graph path back onto original edges.

    Consecutive sub-edges sharing an ``origin`` collapse into the single
    original edge; synthetic nodes disappear from the node sequence.
    """
    folded: list[Edge] = []
    i = 0
    while i < len(p.edges):
        e = p.edges[i]
        ref = e.origin
        if ref is None:
            folded.append(e)
            i += 1
            continue
        j = i
        while j < len(p.edges) and p.edges[j].origin == ref:
            j += 1
        try:
            folded.append(original.edge_by_ref[ref])
        except KeyError as exc:
            raise GraphError(f"no original edge for provenance ref {ref}") from exc
        i = j
    return Path(source=p.source, edges=tuple(folded))
