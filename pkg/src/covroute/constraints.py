"""Breakage budgets on paths, the budget-relaxation loop, and the sweep.

Two budgets constrain a candidate route: d1 caps the *total* travel time
spent without coverage, d2 caps the longest *contiguous* stretch of it
(runs merge across edge boundaries, so per-edge pruning alone would
under-count). Budgets are inclusive ("must not exceed" reads as <=) and
math.inf is the explicit unbounded sentinel.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf, isnan
from typing import Iterator

from .graph import Path, RoadGraph, coverage_runs
from .ksp import PathStream, open_stream, shortest_path


def _check_budget(value: float, name: str) -> None:
    if isnan(value) or value < 0:
        raise ValueError(f"{name} must be >= 0 (or inf for unbounded), got {value}")


@dataclass(frozen=True)
class Requirements:
    """Breakage budgets in seconds; inf means unbounded."""

    d1_s: float = inf
    d2_s: float = inf

    def __post_init__(self) -> None:
        _check_budget(self.d1_s, "d1_s")
        _check_budget(self.d2_s, "d2_s")


@dataclass(frozen=True)
class RelaxationPolicy:
    """Geometric growth schedule for the total-breakage budget."""

    growth: float = 1.5
    max_d1_s: float = inf

    def __post_init__(self) -> None:
        if not self.growth > 1.0:
            raise ValueError(f"growth coefficient must be > 1, got {self.growth}")
        _check_budget(self.max_d1_s, "max_d1_s")


@dataclass(frozen=True)
class SweepPolicy:
    """Uniform grid of d1 scale factors: rows values in [low, high]."""

    low: float = 1.0
    high: float = 1.0
    rows: int = 1

    def __post_init__(self) -> None:
        if not self.low > 0:
            raise ValueError(f"sweep low scale must be > 0, got {self.low}")
        if self.high < self.low:
            raise ValueError("sweep high scale must be >= low scale")
        if self.rows < 1:
            raise ValueError(f"sweep rows must be >= 1, got {self.rows}")


@dataclass(frozen=True)
class CandidateRow:
    d1_s: float
    paths: tuple[Path, ...]


@dataclass(frozen=True)
class CandidateMatrix:
    rows: tuple[CandidateRow, ...]

    def path_count(self) -> int:
        return sum(len(r.paths) for r in self.rows)


def breakage_total(p: Path) -> float:
    """Total uncovered duration along a path (segment-level)."""
    total = 0.0
    for e in p.edges:
        if len(e.segments) == 1:
            if not e.segments[0].covered:
                total += e.duration_s
        else:
            for seg in e.segments:
                if not seg.covered:
                    total += e.duration_s * seg.fraction
    return total


def breakage_max_run(p: Path) -> float:
    """Longest contiguous uncovered run, merged across edge boundaries."""
    worst = 0.0
    for covered, duration in coverage_runs(p):
        if not covered and duration > worst:
            worst = duration
    return worst


def check_req1(p: Path, d1_s: float) -> bool:
    return breakage_total(p) <= d1_s


def check_req2(p: Path, d2_s: float) -> bool:
    return breakage_max_run(p) <= d2_s


@dataclass(frozen=True)
class _CollectOutcome:
    paths: tuple[Path, ...]
    exhausted: bool
    # True when some path failed only the total-breakage budget: growing
    # d1 might still help. False with zero candidates means relaxing d1
    # is futile (everything else failed the d1-independent run budget).
    req1_blocked: bool


def _collect(stream: PathStream, req: Requirements, k: int) -> _CollectOutcome:
    found: list[Path] = []
    req1_blocked = False
    exhausted = False
    while len(found) < k:
        p = stream.next_path()
        if p is None:
            exhausted = True
            break
        if check_req2(p, req.d2_s):
            if check_req1(p, req.d1_s):
                found.append(p)
            else:
                req1_blocked = True
    return _CollectOutcome(tuple(found), exhausted, req1_blocked)


def collect_candidates(stream: PathStream, req: Requirements, k: int) -> tuple[Path, ...]:
    """Up to k stream paths passing both budget checks, in stream order."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _collect(stream, req, k).paths


def relaxation_schedule(d1_s: float, policy: RelaxationPolicy) -> Iterator[float]:
    """d1, d1*growth, d1*growth^2, ... while <= max_d1_s.

    Stops when the value no longer grows (inf or 0 fixed points).
    """
    value = d1_s
    while True:
        yield value
        nxt = value * policy.growth
        if nxt == value or nxt > policy.max_d1_s:
            return
        value = nxt


@dataclass(frozen=True)
class RelaxationResult:
    paths: tuple[Path, ...]
    effective_d1_s: float
    status: str  # found | partial | best_effort | unreachable


def relax_until_found(
    g: RoadGraph,
    s: str,
    t: str,
    req: Requirements,
    k: int,
    policy: RelaxationPolicy,
) -> RelaxationResult:
    """Grow the total-breakage budget geometrically until candidates exist.

    Returns the first nonempty candidate set (found with k paths,
    partial with fewer at stream exhaustion). If no budget in the
    schedule admits any path, falls back to the unconstrained shortest
    path of ``g`` (best_effort), or unreachable when none exists.
    """
    g.require_node(s)
    g.require_node(t)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if policy.max_d1_s < req.d1_s:
        raise ValueError("relaxation bound max_d1_s is below the initial d1 budget")
    for d1 in relaxation_schedule(req.d1_s, policy):
        outcome = _collect(open_stream(g, s, t), Requirements(d1, req.d2_s), k)
        if outcome.paths:
            status = "found" if len(outcome.paths) == k else "partial"
            return RelaxationResult(outcome.paths, d1, status)
        if not outcome.req1_blocked:
            break
    sp = shortest_path(g, s, t)
    if sp is None:
        return RelaxationResult((), req.d1_s, "unreachable")
    return RelaxationResult((sp,), req.d1_s, "best_effort")


def sweep_grid(base_d1_s: float, policy: SweepPolicy) -> tuple[float, ...]:
    """The d1 values swept: rows points spanning [low, high] * base."""
    if base_d1_s == inf:
        return (inf,) * policy.rows
    if policy.rows == 1:
        return (policy.low * base_d1_s,)
    step = (policy.high - policy.low) * base_d1_s / (policy.rows - 1)
    return tuple(policy.low * base_d1_s + i * step for i in range(policy.rows))


def sweep(
    g: RoadGraph,
    s: str,
    t: str,
    base_d1_s: float,
    d2_s: float,
    k: int,
    policy: SweepPolicy,
) -> CandidateMatrix:
    """Collect candidates for every grid value; no relaxation inside."""
    g.require_node(s)
    g.require_node(t)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rows = []
    for d1 in sweep_grid(base_d1_s, policy):
        outcome = _collect(open_stream(g, s, t), Requirements(d1, d2_s), k)
        rows.append(CandidateRow(d1, outcome.paths))
    return CandidateMatrix(tuple(rows))
