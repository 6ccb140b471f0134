"""End-to-end route planning: transform, simplify, relax, sweep, select.

The pipeline runs on the singly-labeled form of the graph (every edge
either fully covered or fully uncovered), collects a matrix of candidate
paths across a grid of total-breakage budgets, and picks the candidate
minimizing ``total_duration + alpha * breakage_duration``. The chosen
path is folded back onto the original edges before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf, isfinite

from .constraints import (
    CandidateMatrix,
    CandidateRow,
    RelaxationPolicy,
    Requirements,
    SweepPolicy,
    breakage_max_run,
    breakage_total,
    relax_until_found,
    sweep,
)
from .graph import Path, RoadGraph, fold_path, simplify_graph, transform_graph
from .ksp import shortest_path


@dataclass(frozen=True)
class PlannerConfig:
    alpha: float = 1.0
    requirements: Requirements = field(default_factory=Requirements)
    k: int = 8
    relaxation: RelaxationPolicy = field(default_factory=RelaxationPolicy)
    sweep: SweepPolicy = field(default_factory=SweepPolicy)

    def __post_init__(self) -> None:
        if not (isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class CostBreakdown:
    total_duration_s: float
    breakage_s: float
    cost: float


def score(p: Path, alpha: float) -> CostBreakdown:
    total = p.duration_s
    breakage = breakage_total(p)
    return CostBreakdown(total, breakage, total + alpha * breakage)


def _selection_key(p: Path, b: CostBreakdown):
    return (b.cost, b.total_duration_s, len(p.edges), p.nodes, tuple(e.key for e in p.edges))


def select_optimal(matrix: CandidateMatrix, alpha: float) -> tuple[Path, CostBreakdown] | None:
    """Deterministic argmin over the (deduplicated) matrix entries.

    Ties on cost break by shorter total duration, then fewer edges, then
    lexicographic node sequence, then parallel-edge keys.
    """
    best: tuple[Path, CostBreakdown] | None = None
    best_key = None
    seen: set[tuple] = set()
    for row in matrix.rows:
        for p in row.paths:
            ident = p.edge_refs if p.edges else ("", p.source)
            if ident in seen:
                continue
            seen.add(ident)
            b = score(p, alpha)
            key = _selection_key(p, b)
            if best_key is None or key < best_key:
                best, best_key = (p, b), key
    return best


@dataclass(frozen=True)
class PlanResult:
    chosen: Path | None  # folded back onto original edges; None if unreachable
    breakdown: CostBreakdown
    max_breakage_run_s: float
    status: str  # optimal | relaxed | best_effort | unreachable
    effective_d1_s: float
    matrix: CandidateMatrix
    config: PlannerConfig


def plan(g: RoadGraph, s: str, t: str, config: PlannerConfig | None = None) -> PlanResult:
    if config is None:
        config = PlannerConfig()
    g.require_node(s)
    g.require_node(t)
    req = config.requirements
    labeled = transform_graph(g)
    pruned = simplify_graph(labeled, req.d2_s)

    relax = relax_until_found(pruned, s, t, req, config.k, config.relaxation)
    if relax.status in ("found", "partial"):
        sw = config.sweep
        if sw.rows == 1 and sw.low == 1.0 and sw.high == 1.0:
            # The single-row grid at the effective budget repeats exactly
            # the collection the relaxation just did; reuse it.
            matrix = CandidateMatrix((CandidateRow(relax.effective_d1_s, relax.paths),))
        else:
            matrix = sweep(pruned, s, t, relax.effective_d1_s, req.d2_s, config.k, sw)
        picked = select_optimal(matrix, config.alpha)
        if picked is not None:
            chosen, breakdown = picked
            status = "optimal" if relax.effective_d1_s == req.d1_s else "relaxed"
            return PlanResult(
                chosen=fold_path(g, chosen),
                breakdown=breakdown,
                max_breakage_run_s=breakage_max_run(chosen),
                status=status,
                effective_d1_s=relax.effective_d1_s,
                matrix=matrix,
                config=config,
            )
    else:
        matrix = CandidateMatrix(())

    # Fall back to the unconstrained shortest path on the full labeled
    # graph (simplification may have severed the only connection).
    sp = shortest_path(labeled, s, t)
    if sp is None:
        return PlanResult(
            chosen=None,
            breakdown=CostBreakdown(0.0, 0.0, 0.0),
            max_breakage_run_s=0.0,
            status="unreachable",
            effective_d1_s=req.d1_s,
            matrix=matrix,
            config=config,
        )
    breakdown = score(sp, config.alpha)
    return PlanResult(
        chosen=fold_path(g, sp),
        breakdown=breakdown,
        max_breakage_run_s=breakage_max_run(sp),
        status="best_effort",
        effective_d1_s=req.d1_s,
        matrix=matrix,
        config=config,
    )


def replan(g: RoadGraph, current: str, t: str, config: PlannerConfig | None = None) -> PlanResult:
    """Plan from an intermediate position with unchanged configuration."""
    return plan(g, current, t, config)


def _finite_or_none(v: float) -> float | None:
    return v if isfinite(v) else None


def result_to_doc(result: PlanResult) -> dict:
    """Plain-dict form of a plan result with a stable field order."""
    chosen = result.chosen
    return {
        "chosen_path": list(chosen.nodes) if chosen is not None else None,
        "edges": [[e.from_id, e.to_id] for e in chosen.edges] if chosen is not None else None,
        "total_duration_s": result.breakdown.total_duration_s,
        "breakage_s": result.breakdown.breakage_s,
        "max_breakage_run_s": result.max_breakage_run_s,
        "cost": result.breakdown.cost,
        "alpha": result.config.alpha,
        "status": result.status,
        "effective_d1_s": _finite_or_none(result.effective_d1_s),
        "matrix_summary": [
            {"d1_s": _finite_or_none(row.d1_s), "path_count": len(row.paths)}
            for row in result.matrix.rows
        ],
    }
