"""Bandwidth drive-trace ingestion and coverage-label derivation.

A drive trace is a CSV of bandwidth samples taken while traversing known
edges. Per edge, a hysteresis state machine over the samples (ordered by
position along the edge) yields covered/uncovered stretches; stretches
shorter than a minimum dwell are absorbed into their longer neighbor so
measurement jitter does not produce sliver segments.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from typing import IO, Iterable, Mapping, Sequence

from .graph import CoverageSegment, Edge, GraphError, RoadGraph, merge_segments

TRACE_COLUMNS = ("timestamp_s", "route_id", "from", "to", "offset", "bandwidth_kbps")


class TraceError(ValueError):
    """Malformed trace input."""


@dataclass(frozen=True)
class TraceSample:
    timestamp_s: float
    route_id: str
    from_id: str
    to_id: str
    offset: float  # position along the edge as a fraction of its duration
    bandwidth_kbps: float


@dataclass(frozen=True)
class LabelingPolicy:
    """Hysteresis thresholds for bandwidth-to-coverage classification.

    A stretch counts as covered while bandwidth stays at or above
    ``threshold_kbps``; once covered it only flips to uncovered when
    bandwidth falls below ``threshold_kbps - hysteresis_kbps``, and flips
    back at ``threshold_kbps``. Resulting stretches shorter than
    ``min_segment_s`` merge into their longer neighbor.
    """

    threshold_kbps: float = 256.0
    hysteresis_kbps: float = 64.0
    min_segment_s: float = 8.0

    def __post_init__(self) -> None:
        if self.threshold_kbps <= 0:
            raise ValueError("threshold_kbps must be > 0")
        if not 0 <= self.hysteresis_kbps < self.threshold_kbps:
            raise ValueError("hysteresis_kbps must be in [0, threshold_kbps)")
        if self.min_segment_s < 0:
            raise ValueError("min_segment_s must be >= 0")


def parse_trace(source: str | os.PathLike | IO) -> tuple[TraceSample, ...]:
    """Parse a trace CSV; errors carry the 1-based file row number."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            text = fh.read()
    elif isinstance(source, str):
        text = source
    else:
        raise TraceError(f"cannot read trace from {source!r}")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise TraceError("row 1: empty trace file, expected header") from None
    if tuple(h.strip() for h in header) != TRACE_COLUMNS:
        raise TraceError(
            f"row 1: bad header {header!r}, expected {','.join(TRACE_COLUMNS)}"
        )
    samples: list[TraceSample] = []
    for row_no, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(TRACE_COLUMNS):
            raise TraceError(
                f"row {row_no}: expected {len(TRACE_COLUMNS)} fields, got {len(row)}"
            )
        ts_raw, route_id, from_id, to_id, off_raw, bw_raw = (f.strip() for f in row)
        try:
            ts = float(ts_raw)
            off = float(off_raw)
            bw = float(bw_raw)
        except ValueError as exc:
            raise TraceError(f"row {row_no}: {exc}") from exc
        if ts < 0:
            raise TraceError(f"row {row_no}: negative timestamp_s")
        if not 0.0 <= off <= 1.0:
            raise TraceError(f"row {row_no}: offset {off} outside [0, 1]")
        if bw < 0:
            raise TraceError(f"row {row_no}: negative bandwidth_kbps")
        if not from_id or not to_id:
            raise TraceError(f"row {row_no}: empty edge endpoint")
        samples.append(TraceSample(ts, route_id, from_id, to_id, off, bw))
    return tuple(samples)


def group_by_edge(samples: Iterable[TraceSample]) -> dict[tuple[str, str], tuple[TraceSample, ...]]:
    """Samples bucketed per (from, to) edge, in input order."""
    groups: dict[tuple[str, str], list[TraceSample]] = {}
    for s in samples:
        groups.setdefault((s.from_id, s.to_id), []).append(s)
    return {k: tuple(v) for k, v in groups.items()}


def _absorb_short(
    segs: list[CoverageSegment], edge_duration_s: float, min_segment_s: float
) -> tuple[CoverageSegment, ...]:
    """Repeatedly fold the shortest under-minimum segment into its longer
    neighbor (leftmost on equal length; left neighbor on neighbor ties)."""
    segs = list(merge_segments(segs))
    while len(segs) > 1:
        durations = [s.fraction * edge_duration_s for s in segs]
        victim = None
        for i, d in enumerate(durations):
            if d < min_segment_s and (victim is None or d < durations[victim]):
                victim = i
        if victim is None:
            break
        if victim == 0:
            into = 1
        elif victim == len(segs) - 1:
            into = victim - 1
        else:
            into = victim - 1 if durations[victim - 1] >= durations[victim + 1] else victim + 1
        absorbed = CoverageSegment(
            segs[victim].fraction + segs[into].fraction, segs[into].covered
        )
        lo = min(victim, into)
        segs[lo : lo + 2] = [absorbed]
        segs = list(merge_segments(segs))
    return tuple(segs)


def label_edge(
    samples: Sequence[TraceSample],
    policy: LabelingPolicy,
    edge_duration_s: float,
) -> tuple[CoverageSegment, ...]:
    """Coverage segments for one edge from its bandwidth samples.

    Samples are ordered by offset (ties by timestamp, so a later pass
    wins at the same position); the first sample's state extends back to
    the edge start and the last state extends to the edge end.
    """
    if edge_duration_s <= 0:
        raise ValueError("edge_duration_s must be > 0")
    if not samples:
        raise ValueError("label_edge needs at least one sample")
    ordered = sorted(samples, key=lambda s: (s.offset, s.timestamp_s))
    low_bar = policy.threshold_kbps - policy.hysteresis_kbps

    state = ordered[0].bandwidth_kbps >= policy.threshold_kbps
    boundaries: list[tuple[float, bool]] = [(0.0, state)]
    for s in ordered[1:]:
        if state and s.bandwidth_kbps < low_bar:
            state = False
            boundaries.append((s.offset, state))
        elif not state and s.bandwidth_kbps >= policy.threshold_kbps:
            state = True
            boundaries.append((s.offset, state))

    segs: list[CoverageSegment] = []
    for i, (start, flag) in enumerate(boundaries):
        end = boundaries[i + 1][0] if i + 1 < len(boundaries) else 1.0
        if end > start:
            segs.append(CoverageSegment(end - start, flag))
    return _absorb_short(segs, edge_duration_s, policy.min_segment_s)


def label_trace(
    g: RoadGraph,
    samples: Iterable[TraceSample],
    policy: LabelingPolicy | None = None,
) -> dict[tuple[str, str], tuple[CoverageSegment, ...]]:
    """Labels for every edge that has samples, keyed by (from, to)."""
    if policy is None:
        policy = LabelingPolicy()
    labels: dict[tuple[str, str], tuple[CoverageSegment, ...]] = {}
    for (u, v), group in group_by_edge(samples).items():
        edge = _sole_edge(g, u, v)
        labels[(u, v)] = label_edge(group, policy, edge.duration_s)
    return labels


def _sole_edge(g: RoadGraph, u: str, v: str) -> Edge:
    matches = [e for e in g.edges if e.from_id == u and e.to_id == v]
    if not matches:
        raise GraphError(f"trace references unknown edge {u}->{v}")
    if len(matches) > 1:
        raise GraphError(
            f"edge {u}->{v} is ambiguous ({len(matches)} parallel edges); "
            "traces cannot address parallel edges"
        )
    return matches[0]


def apply_labels(
    g: RoadGraph,
    labels: Mapping[tuple[str, str], Sequence[CoverageSegment]],
) -> RoadGraph:
    """New graph with the given edges relabeled; all else unchanged."""
    for u, v in labels:
        _sole_edge(g, u, v)
    edges = []
    for e in g.edges:
        new = labels.get((e.from_id, e.to_id))
        if new is None:
            edges.append(e)
        else:
            edges.append(
                Edge(e.from_id, e.to_id, e.duration_s, merge_segments(new), key=e.key, origin=e.origin)
            )
    return RoadGraph(nodes=dict(g.nodes), edges=tuple(edges))
