"""Discrete-time simulation of a transport following a planned route.

The vehicle moves at uniform speed along each edge (offset proportional
to the edge's duration) and accrues endured breakage over uncovered
stretches. Mid-transport events (alpha change, coverage relabeling,
forced replan, abort) mutate the pending configuration or graph
immediately, but replanning only executes once the vehicle stands at a
node; the traversed prefix is immutable history.

Clock and endured-breakage values at edge boundaries are computed from
prefix sums over exactly the duration terms the planner summed, so a
run without events arrives at precisely the plan's totals.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import isfinite
from typing import Any, Mapping, Sequence

from .graph import CoverageSegment, Edge, Path, RoadGraph, _normalize_segments
from .ingest import apply_labels
from .planner import PlannerConfig, PlanResult, plan, replan, result_to_doc

EVENT_KINDS = ("set_alpha", "relabel_graph", "force_replan", "abort")


class SimError(RuntimeError):
    """Simulation lifecycle violation (unreachable start, late event, ...)."""


@dataclass(frozen=True)
class SimEvent:
    """An external instruction due at a given simulation clock time."""

    at_time_s: float
    kind: str
    value: float | None = None
    # relabel payload: ((from, to, (segments...)), ...)
    labels: tuple[tuple[str, str, tuple[CoverageSegment, ...]], ...] = ()

    def __post_init__(self) -> None:
        if self.at_time_s < 0 or not isfinite(self.at_time_s):
            raise ValueError(f"event at_time_s must be finite and >= 0, got {self.at_time_s}")
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.kind == "set_alpha":
            if self.value is None or not (isfinite(self.value) and self.value >= 0):
                raise ValueError("set_alpha needs a finite value >= 0")
        if self.kind == "relabel_graph" and not self.labels:
            raise ValueError("relabel_graph needs at least one edge label")


@dataclass(frozen=True)
class _Leg:
    """One singly-labeled stretch of the route (a segment of an edge)."""

    duration_s: float
    covered: bool
    edge_index: int  # into active_plan.chosen.edges
    edge_start_leg: int  # index of the first leg of the same edge


@dataclass(frozen=True)
class ReplanRecord:
    at_time_s: float
    node: str
    reasons: tuple[str, ...]
    status: str
    cost: float


@dataclass(frozen=True)
class TransportState:
    """Immutable simulation snapshot; operations return new states."""

    graph: RoadGraph
    target: str
    config: PlannerConfig
    active_plan: PlanResult
    legs: tuple[_Leg, ...]
    leg_clock: tuple[float, ...]  # prefix sums of leg durations, len(legs)+1
    leg_breakage: tuple[float, ...]  # prefix sums of uncovered leg durations
    plan_started_s: float
    breakage_before_s: float
    leg_index: int
    leg_progress_s: float
    status: str  # en_route | arrived | aborted
    traversed: tuple[tuple[Edge, float], ...]  # (edge, entry clock)
    pending_reasons: tuple[str, ...]
    replans: tuple[ReplanRecord, ...]

    @property
    def clock_s(self) -> float:
        return self.plan_started_s + self.leg_clock[self.leg_index] + self.leg_progress_s

    @property
    def endured_breakage_s(self) -> float:
        accrued = self.breakage_before_s + self.leg_breakage[self.leg_index]
        if self.leg_index < len(self.legs) and not self.legs[self.leg_index].covered:
            accrued += self.leg_progress_s
        return accrued

    @property
    def at_node(self) -> str | None:
        """Node id when standing at one, else None (mid-edge)."""
        if self.leg_index == len(self.legs):
            return self.target
        if self.leg_progress_s != 0.0 or not _is_edge_start(self):
            return None
        leg = self.legs[self.leg_index]
        return self.active_plan.chosen.edges[leg.edge_index].from_id


def _is_edge_start(st: TransportState) -> bool:
    i = st.leg_index
    return i == 0 or st.legs[i].edge_index != st.legs[i - 1].edge_index


def _expand_legs(path: Path) -> tuple[tuple[_Leg, ...], tuple[float, ...], tuple[float, ...]]:
    """Per-segment legs plus exact prefix sums of clock and breakage.

    Uses the same ``duration * fraction`` terms, in the same order, as
    the labeling transform, so boundary clocks match plan costs exactly.
    """
    legs: list[_Leg] = []
    for ei, e in enumerate(path.edges):
        start = len(legs)
        if len(e.segments) == 1:
            legs.append(_Leg(e.duration_s, e.segments[0].covered, ei, start))
        else:
            for seg in e.segments:
                legs.append(_Leg(e.duration_s * seg.fraction, seg.covered, ei, start))
    clock = [0.0]
    breakage = [0.0]
    for leg in legs:
        clock.append(clock[-1] + leg.duration_s)
        if leg.covered:
            breakage.append(breakage[-1])
        else:
            breakage.append(breakage[-1] + leg.duration_s)
    return tuple(legs), tuple(clock), tuple(breakage)


def start(g: RoadGraph, s: str, t: str, config: PlannerConfig | None = None) -> TransportState:
    if config is None:
        config = PlannerConfig()
    result = plan(g, s, t, config)
    if result.chosen is None:
        raise SimError(f"no route from {s!r} to {t!r}")
    legs, clock, breakage = _expand_legs(result.chosen)
    return TransportState(
        graph=g,
        target=t,
        config=config,
        active_plan=result,
        legs=legs,
        leg_clock=clock,
        leg_breakage=breakage,
        plan_started_s=0.0,
        breakage_before_s=0.0,
        leg_index=0,
        leg_progress_s=0.0,
        status="arrived" if not legs else "en_route",
        traversed=(),
        pending_reasons=(),
        replans=(),
    )


def _replan_now(st: TransportState) -> TransportState:
    node = st.at_node
    if node is None:
        raise SimError("replanning is only defined at a node")
    result = replan(st.graph, node, st.target, st.config)
    record = ReplanRecord(
        at_time_s=st.clock_s,
        node=node,
        reasons=st.pending_reasons,
        status=result.status,
        cost=result.breakdown.cost,
    )
    if result.chosen is None:
        return replace(st, status="aborted", pending_reasons=(), replans=st.replans + (record,))
    legs, clock, breakage = _expand_legs(result.chosen)
    return replace(
        st,
        active_plan=result,
        legs=legs,
        leg_clock=clock,
        leg_breakage=breakage,
        plan_started_s=st.clock_s,
        breakage_before_s=st.endured_breakage_s,
        leg_index=0,
        leg_progress_s=0.0,
        status="arrived" if not legs else "en_route",
        pending_reasons=(),
        replans=st.replans + (record,),
    )


def advance(state: TransportState, dt: float) -> TransportState:
    """Move dt seconds along the active route (pending replans fire at nodes)."""
    if state.status != "en_route":
        raise SimError(f"advance requires an en_route simulation, status is {state.status}")
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    st = state
    remaining = float(dt)
    while st.status == "en_route":
        if st.leg_progress_s == 0.0 and _is_edge_start(st):
            # Standing at a node: settle any pending replan before (and even
            # without) departing, so a step ending exactly on a node still
            # reroutes there.
            if st.pending_reasons:
                st = _replan_now(st)
                continue
            if remaining <= 0.0:
                break
            edge = st.active_plan.chosen.edges[st.legs[st.leg_index].edge_index]
            st = replace(st, traversed=st.traversed + ((edge, st.clock_s),))
        elif remaining <= 0.0:
            break
        leg = st.legs[st.leg_index]
        room = leg.duration_s - st.leg_progress_s
        if remaining < room:
            st = replace(st, leg_progress_s=st.leg_progress_s + remaining)
            remaining = 0.0
        else:
            remaining -= room
            nxt = st.leg_index + 1
            if nxt == len(st.legs):
                st = replace(st, leg_index=nxt, leg_progress_s=0.0, status="arrived")
            else:
                st = replace(st, leg_index=nxt, leg_progress_s=0.0)
    return st


def apply_event(state: TransportState, event: SimEvent) -> TransportState:
    """Apply one event; set_alpha/relabel defer their replan to the next node."""
    if state.status != "en_route":
        raise SimError(f"events are rejected once {state.status}")
    if event.kind == "abort":
        return replace(state, status="aborted")
    if event.kind == "set_alpha":
        cfg = replace(state.config, alpha=float(event.value))
        return replace(
            state, config=cfg, pending_reasons=state.pending_reasons + ("set_alpha",)
        )
    if event.kind == "relabel_graph":
        labels = {(u, v): segs for u, v, segs in event.labels}
        relabeled = apply_labels(state.graph, labels)
        return replace(
            state, graph=relabeled, pending_reasons=state.pending_reasons + ("relabel_graph",)
        )
    # force_replan: immediate at a node, deferred mid-edge
    st = replace(state, pending_reasons=state.pending_reasons + ("force_replan",))
    if st.at_node is not None:
        st = _replan_now(st)
    return st


def run(
    state: TransportState, events: Sequence[SimEvent], step: float
) -> tuple[TransportState, ...]:
    """Advance in fixed steps until arrival/abort, applying due events first.

    Events apply at step boundaries in at_time order (submission order on
    ties); a snapshot is emitted for the initial state, after each event,
    and after each step.
    """
    if not step > 0:
        raise ValueError(f"step must be > 0, got {step}")
    queue = sorted(enumerate(events), key=lambda p: (p[1].at_time_s, p[0]))
    timeline = [state]
    st = state
    qi = 0
    while st.status == "en_route":
        while qi < len(queue) and queue[qi][1].at_time_s <= st.clock_s:
            st = apply_event(st, queue[qi][1])
            qi += 1
            timeline.append(st)
            if st.status != "en_route":
                return tuple(timeline)
        st = advance(st, step)
        timeline.append(st)
    return tuple(timeline)


def _position_doc(st: TransportState) -> dict[str, Any]:
    node = st.at_node
    if node is not None:
        return {"node": node}
    leg = st.legs[st.leg_index]
    edge = st.active_plan.chosen.edges[leg.edge_index]
    into_edge = st.leg_clock[st.leg_index] - st.leg_clock[leg.edge_start_leg] + st.leg_progress_s
    return {"edge": [edge.from_id, edge.to_id], "offset": into_edge / edge.duration_s}


def state_to_doc(st: TransportState) -> dict[str, Any]:
    """Plain-dict snapshot with a stable field order."""
    return {
        "clock_s": st.clock_s,
        "status": st.status,
        "alpha": st.config.alpha,
        "position": _position_doc(st),
        "endured_breakage_s": st.endured_breakage_s,
        "pending_reasons": list(st.pending_reasons),
        "traversed": [
            {"edge": [e.from_id, e.to_id], "entry_time_s": entry} for e, entry in st.traversed
        ],
        "replans": [
            {
                "at_time_s": r.at_time_s,
                "node": r.node,
                "reasons": list(r.reasons),
                "status": r.status,
                "cost": r.cost,
            }
            for r in st.replans
        ],
        "active_plan": result_to_doc(st.active_plan),
    }


def _labels_from_doc(raw: Any) -> tuple[tuple[str, str, tuple[CoverageSegment, ...]], ...]:
    if not isinstance(raw, Sequence) or isinstance(raw, (str, bytes)):
        raise ValueError("relabel_graph labels must be an array of edge objects")
    out = []
    for entry in raw:
        if not isinstance(entry, Mapping):
            raise ValueError(f"bad label entry {entry!r}")
        try:
            u = str(entry["from"])
            v = str(entry["to"])
            segs_raw = entry["segments"]
        except KeyError as exc:
            raise ValueError(f"label entry missing {exc}") from None
        segs = _normalize_segments(segs_raw, f"{u}->{v}")
        out.append((u, v, segs))
    return tuple(out)


def event_from_doc(doc: Mapping[str, Any]) -> SimEvent:
    """Parse the JSON event form, e.g. {"at_time_s":120,"kind":"set_alpha","value":4.0}."""
    if not isinstance(doc, Mapping):
        raise ValueError("event must be a JSON object")
    try:
        at_time = float(doc["at_time_s"])
        kind = str(doc["kind"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad event document: {exc}") from exc
    value = doc.get("value")
    labels: tuple = ()
    if kind == "relabel_graph":
        labels = _labels_from_doc(doc.get("labels"))
    return SimEvent(
        at_time_s=at_time,
        kind=kind,
        value=None if value is None else float(value),
        labels=labels,
    )


def event_to_doc(event: SimEvent) -> dict[str, Any]:
    doc: dict[str, Any] = {"at_time_s": event.at_time_s, "kind": event.kind}
    if event.kind == "set_alpha":
        doc["value"] = event.value
    if event.kind == "relabel_graph":
        doc["labels"] = [
            {
                "from": u,
                "to": v,
                "segments": [{"fraction": s.fraction, "covered": s.covered} for s in segs],
            }
            for u, v, segs in event.labels
        ]
    return doc
