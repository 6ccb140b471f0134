"""Coverage-aware route planning for emergency medical transport.

Plans ambulance routes over road networks whose edges carry cellular
coverage labels, trading total travel time against time spent without
a usable connection (breakage) under per-trip breakage budgets.
"""

from .constraints import (
    CandidateMatrix,
    CandidateRow,
    RelaxationPolicy,
    Requirements,
    SweepPolicy,
    breakage_max_run,
    breakage_total,
    check_req1,
    check_req2,
    collect_candidates,
    relax_until_found,
    sweep,
)
from .graph import (
    CoverageSegment,
    Edge,
    EdgeRef,
    GraphError,
    Node,
    Path,
    RoadGraph,
    UnknownNodeError,
    coverage_runs,
    fold_path,
    graph_to_doc,
    load_graph,
    simplify_graph,
    transform_graph,
)
from .ingest import (
    LabelingPolicy,
    TraceError,
    TraceSample,
    apply_labels,
    label_edge,
    label_trace,
    parse_trace,
)
from .jsonio import canonical_dumps
from .ksp import PathStream, next_path, open_stream, shortest_path
from .planner import (
    CostBreakdown,
    PlannerConfig,
    PlanResult,
    plan,
    replan,
    result_to_doc,
    score,
    select_optimal,
)
from .presets import PRESETS, DiseasePreset, get_preset
from .randgraph import far_apart_pair, random_planar_graph
from .sim import (
    SimError,
    SimEvent,
    TransportState,
    advance,
    apply_event,
    event_from_doc,
    event_to_doc,
    run,
    start,
    state_to_doc,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateMatrix",
    "CandidateRow",
    "CostBreakdown",
    "CoverageSegment",
    "DiseasePreset",
    "Edge",
    "EdgeRef",
    "GraphError",
    "LabelingPolicy",
    "Node",
    "PRESETS",
    "Path",
    "PathStream",
    "PlanResult",
    "PlannerConfig",
    "RelaxationPolicy",
    "Requirements",
    "RoadGraph",
    "SimError",
    "SimEvent",
    "SweepPolicy",
    "TraceError",
    "TraceSample",
    "TransportState",
    "UnknownNodeError",
    "advance",
    "apply_event",
    "apply_labels",
    "breakage_max_run",
    "breakage_total",
    "canonical_dumps",
    "check_req1",
    "check_req2",
    "collect_candidates",
    "coverage_runs",
    "event_from_doc",
    "event_to_doc",
    "far_apart_pair",
    "fold_path",
    "get_preset",
    "graph_to_doc",
    "label_edge",
    "label_trace",
    "load_graph",
    "next_path",
    "open_stream",
    "plan",
    "random_planar_graph",
    "relax_until_found",
    "replan",
    "result_to_doc",
    "run",
    "score",
    "select_optimal",
    "shortest_path",
    "simplify_graph",
    "start",
    "state_to_doc",
    "sweep",
    "transform_graph",
]
