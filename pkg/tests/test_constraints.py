"""Budget checks, candidate collection, relaxation, and the sweep."""

from __future__ import annotations

import random
from math import inf

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covroute import (
    Path,
    RelaxationPolicy,
    Requirements,
    SweepPolicy,
    breakage_max_run,
    breakage_total,
    check_req1,
    check_req2,
    collect_candidates,
    load_graph,
    open_stream,
    relax_until_found,
    sweep,
    transform_graph,
)
from covroute.constraints import relaxation_schedule, sweep_grid

from conftest import random_scenario
from oracles import (
    enumerate_simple_paths,
    flat_breakage,
    scan_max_uncovered_run,
    stream_order_key,
)


def chain_path(seed: int) -> Path:
    """A random singly-labeled chain with runs spanning edge boundaries."""
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    nodes = [f"c{i:02d}" for i in range(n + 1)]
    edges = [
        {
            "from": nodes[i],
            "to": nodes[i + 1],
            "duration_s": float(rng.randint(1, 400)),
            "segments": [{"fraction": 1.0, "covered": rng.random() < 0.5}],
        }
        for i in range(n)
    ]
    g = load_graph({"nodes": [{"id": x} for x in nodes], "edges": edges})
    return Path(nodes[0], g.edges)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 1_000_000))
def test_max_run_agrees_with_scan_oracle(seed):
    p = chain_path(seed)
    assert breakage_max_run(p) == scan_max_uncovered_run(p.edges)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 1_000_000))
def test_breakage_total_agrees_with_oracle(seed):
    p = chain_path(seed)
    assert breakage_total(p) == flat_breakage(p.edges)


def test_budget_checks_are_inclusive():
    p = chain_path(99)
    total = breakage_total(p)
    run = breakage_max_run(p)
    assert check_req1(p, total)
    assert not check_req1(p, total - 0.5) or total == 0.0
    assert check_req2(p, run)
    assert not check_req2(p, run - 0.5) or run == 0.0
    assert check_req1(p, inf) and check_req2(p, inf)


def test_requirements_reject_negative_budgets():
    with pytest.raises(ValueError):
        Requirements(d1_s=-1.0)
    with pytest.raises(ValueError):
        Requirements(d2_s=-0.5)


def test_relaxation_schedule_is_geometric_and_bounded():
    assert list(relaxation_schedule(100.0, RelaxationPolicy(growth=1.5, max_d1_s=350.0))) == [
        100.0,
        150.0,
        225.0,
        337.5,
    ]
    assert list(relaxation_schedule(inf, RelaxationPolicy())) == [inf]
    assert list(relaxation_schedule(0.0, RelaxationPolicy(growth=2.0, max_d1_s=inf))) == [0.0]


def test_relaxation_policy_validation():
    with pytest.raises(ValueError):
        RelaxationPolicy(growth=1.0)
    with pytest.raises(ValueError):
        RelaxationPolicy(growth=0.5)


def test_sweep_grid_formula():
    assert sweep_grid(100.0, SweepPolicy(low=0.5, high=2.0, rows=3)) == (50.0, 125.0, 200.0)
    assert sweep_grid(100.0, SweepPolicy(low=0.5, high=2.0, rows=1)) == (50.0,)
    assert sweep_grid(inf, SweepPolicy(low=0.5, high=2.0, rows=3)) == (inf, inf, inf)
    assert sweep_grid(0.0, SweepPolicy(low=0.5, high=2.0, rows=2)) == (0.0, 0.0)


def test_sweep_policy_validation():
    with pytest.raises(ValueError):
        SweepPolicy(low=0.0)
    with pytest.raises(ValueError):
        SweepPolicy(low=1.0, high=0.5)
    with pytest.raises(ValueError):
        SweepPolicy(rows=0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 4))
def test_collect_candidates_takes_first_k_admissible(seed, k):
    g, s, t = random_scenario(seed)
    tg = transform_graph(g)
    rng = random.Random(seed ^ 0xBEEF)
    req = Requirements(
        d1_s=rng.choice([inf, 0.0, float(rng.randint(1, 800))]),
        d2_s=rng.choice([inf, 0.0, float(rng.randint(1, 600))]),
    )
    got = collect_candidates(open_stream(tg, s, t), req, k)
    want = []
    for edges in sorted(enumerate_simple_paths(tg, s, t), key=lambda e: stream_order_key(s, e)):
        if flat_breakage(edges) <= req.d1_s and scan_max_uncovered_run(edges) <= req.d2_s:
            want.append(edges)
            if len(want) == k:
                break
    assert [p.nodes for p in got] == [(s,) + tuple(e.to_id for e in edges) for edges in want]


def _two_leg_graph():
    # direct: 100 s uncovered; detour: 300 s covered
    return load_graph(
        {
            "nodes": [{"id": n} for n in "SMT"],
            "edges": [
                {
                    "from": "S",
                    "to": "T",
                    "duration_s": 100,
                    "segments": [{"fraction": 1.0, "covered": False}],
                },
                {"from": "S", "to": "M", "duration_s": 150},
                {"from": "M", "to": "T", "duration_s": 150},
            ],
        }
    )


def test_relax_finds_at_original_budget():
    g = transform_graph(_two_leg_graph())
    res = relax_until_found(g, "S", "T", Requirements(d1_s=100.0, d2_s=inf), 8, RelaxationPolicy())
    assert res.status == "partial"  # only 2 simple paths < k=8
    assert res.effective_d1_s == 100.0
    assert len(res.paths) == 2


def test_relax_grows_budget_until_candidates_appear():
    g = transform_graph(_two_leg_graph())
    # d1=40 rejects the direct path; the covered detour always passes, so
    # no relaxation is needed at all: found at the base budget.
    res = relax_until_found(g, "S", "T", Requirements(d1_s=40.0, d2_s=inf), 1, RelaxationPolicy())
    assert res.status == "found"
    assert res.effective_d1_s == 40.0
    assert res.paths[0].nodes == ("S", "M", "T")


def test_relax_grows_when_every_path_blocked_on_total():
    # both routes have breakage; smallest is 100 s, budget starts at 30 s
    g = load_graph(
        {
            "nodes": [{"id": n} for n in "SMT"],
            "edges": [
                {
                    "from": "S",
                    "to": "T",
                    "duration_s": 100,
                    "segments": [{"fraction": 1.0, "covered": False}],
                },
                {
                    "from": "S",
                    "to": "M",
                    "duration_s": 150,
                    "segments": [{"fraction": 1.0, "covered": False}],
                },
                {"from": "M", "to": "T", "duration_s": 150},
            ],
        }
    )
    tg = transform_graph(g)
    res = relax_until_found(
        tg, "S", "T", Requirements(d1_s=30.0, d2_s=inf), 8, RelaxationPolicy(growth=2.0)
    )
    assert res.status == "partial"
    assert res.effective_d1_s == 120.0  # 30 -> 60 -> 120 covers the 100 s direct path
    assert [p.nodes for p in res.paths] == [("S", "T")]


def test_relax_gives_up_when_only_run_budget_blocks():
    # single path with a 100 s uncovered run; d2=50 can never pass and
    # growing d1 must stop immediately (futile), yielding best effort
    g = transform_graph(
        load_graph(
            {
                "nodes": [{"id": n} for n in "ST"],
                "edges": [
                    {
                        "from": "S",
                        "to": "T",
                        "duration_s": 100,
                        "segments": [{"fraction": 1.0, "covered": False}],
                    }
                ],
            }
        )
    )
    res = relax_until_found(
        g, "S", "T", Requirements(d1_s=10.0, d2_s=50.0), 4, RelaxationPolicy(max_d1_s=inf)
    )
    assert res.status == "best_effort"
    assert res.effective_d1_s == 10.0
    assert res.paths[0].nodes == ("S", "T")


def test_relax_reports_unreachable():
    g = load_graph({"nodes": [{"id": "S"}, {"id": "T"}], "edges": []})
    res = relax_until_found(g, "S", "T", Requirements(), 4, RelaxationPolicy())
    assert res.status == "unreachable"
    assert res.paths == ()


def test_relax_rejects_bound_below_initial_budget():
    g = transform_graph(_two_leg_graph())
    with pytest.raises(ValueError, match="below the initial d1"):
        relax_until_found(
            g, "S", "T", Requirements(d1_s=100.0), 4, RelaxationPolicy(max_d1_s=50.0)
        )


def test_sweep_collects_per_grid_row():
    g = transform_graph(_two_leg_graph())
    matrix = sweep(g, "S", "T", 100.0, inf, 8, SweepPolicy(low=0.5, high=1.0, rows=2))
    assert [row.d1_s for row in matrix.rows] == [50.0, 100.0]
    # row at 50: only the covered detour; row at 100: both paths
    assert [len(row.paths) for row in matrix.rows] == [1, 2]
    assert matrix.path_count() == 3
