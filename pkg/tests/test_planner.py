"""Five-phase planning pipeline against the brute-force oracle."""

from __future__ import annotations

import random
from math import inf

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covroute import (
    PlannerConfig,
    RelaxationPolicy,
    Requirements,
    SweepPolicy,
    UnknownNodeError,
    load_graph,
    plan,
    replan,
    result_to_doc,
    score,
    select_optimal,
    sweep,
    transform_graph,
)

from conftest import random_config, random_scenario
from oracles import brute_force_plan, dijkstra_duration


def _assert_matches_oracle(g, s, t, config):
    got = plan(g, s, t, config)
    want = brute_force_plan(g, s, t, config)
    assert got.status == want.status
    assert got.effective_d1_s == want.effective_d1_s
    assert tuple(len(r.paths) for r in got.matrix.rows) == want.matrix_counts
    if want.node_seq is None:
        assert got.chosen is None
        return
    assert got.chosen is not None
    assert got.chosen.nodes == want.node_seq
    assert got.breakdown.cost == pytest.approx(want.cost, abs=1e-9)
    assert got.breakdown.total_duration_s == pytest.approx(want.total_duration_s, abs=1e-9)
    assert got.breakdown.breakage_s == pytest.approx(want.breakage_s, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 1_000_000))
def test_plan_matches_brute_force_oracle(seed):
    g, s, t = random_scenario(seed)
    config = random_config(random.Random(seed ^ 0xC0FFEE))
    _assert_matches_oracle(g, s, t, config)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 1_000_000))
def test_alpha_zero_collapses_to_shortest_path(seed):
    g, s, t = random_scenario(seed)
    config = PlannerConfig(alpha=0.0)
    result = plan(g, s, t, config)
    shortest = dijkstra_duration(transform_graph(g), s, t)
    if shortest is None:
        assert result.status == "unreachable"
    else:
        assert result.status == "optimal"
        assert result.breakdown.cost == shortest


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1_000_000))
def test_chosen_breakage_nonincreasing_in_alpha(seed):
    g, s, t = random_scenario(seed)
    tg = transform_graph(g)
    matrix = sweep(tg, s, t, inf, inf, 8, SweepPolicy(low=1.0, high=1.0, rows=1))
    previous = None
    for alpha in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0):
        picked = select_optimal(matrix, alpha)
        if picked is None:
            return
        breakage = picked[1].breakage_s
        if previous is not None:
            assert breakage <= previous
        previous = breakage


def test_select_optimal_breaks_ties_deterministically():
    # two candidates with identical cost: same duration, same breakage;
    # the lexicographically smaller node sequence must win
    g = load_graph(
        {
            "nodes": [{"id": n} for n in "SABT"],
            "edges": [
                {"from": "S", "to": "A", "duration_s": 10},
                {"from": "A", "to": "T", "duration_s": 10},
                {"from": "S", "to": "B", "duration_s": 10},
                {"from": "B", "to": "T", "duration_s": 10},
            ],
        }
    )
    matrix = sweep(g, "S", "T", inf, inf, 8, SweepPolicy())
    picked = select_optimal(matrix, 1.0)
    assert picked is not None
    assert picked[0].nodes == ("S", "A", "T")


def test_select_optimal_prefers_lower_duration_on_cost_ties():
    # equal cost, different split: 100+0*a vs 80+20 breakage at alpha=1
    g = load_graph(
        {
            "nodes": [{"id": n} for n in "SABT"],
            "edges": [
                {"from": "S", "to": "A", "duration_s": 50},
                {"from": "A", "to": "T", "duration_s": 50},
                {"from": "S", "to": "B", "duration_s": 40},
                {
                    "from": "B",
                    "to": "T",
                    "duration_s": 40,
                    "segments": [
                        {"fraction": 0.5, "covered": True},
                        {"fraction": 0.5, "covered": False},
                    ],
                },
            ],
        }
    )
    tg = transform_graph(g)
    matrix = sweep(tg, "S", "T", inf, inf, 8, SweepPolicy())
    picked = select_optimal(matrix, 1.0)
    assert picked is not None
    assert picked[1].cost == 100.0
    assert picked[1].total_duration_s == 80.0  # lower duration wins the tie


def test_plan_statuses_cover_all_outcomes(two_route_graph):
    g = two_route_graph
    optimal = plan(g, "A", "H", PlannerConfig(alpha=0.5, requirements=Requirements(900.0, 600.0)))
    assert optimal.status == "optimal"

    # d2=10 kills every route through the 480 s uncovered run... but the
    # detour A->C->D->H is fully covered, so tighten d1 instead: with
    # alpha high the covered route still passes, meaning best_effort
    # requires blocking it too; force that by routing B->H only
    best_effort = plan(
        g,
        "B",
        "H",
        PlannerConfig(requirements=Requirements(d1_s=10.0, d2_s=10.0)),
    )
    assert best_effort.status == "best_effort"
    assert best_effort.chosen.nodes == ("B", "H")

    unreachable = plan(g, "H", "A", PlannerConfig())
    assert unreachable.status == "unreachable"
    assert unreachable.chosen is None


def test_plan_relaxed_status_when_budget_grows():
    # single route with 480 s breakage; d1 starts at 200 and must grow
    g = load_graph(
        {
            "nodes": [{"id": n} for n in "ST"],
            "edges": [
                {
                    "from": "S",
                    "to": "T",
                    "duration_s": 960,
                    "segments": [
                        {"fraction": 0.5, "covered": True},
                        {"fraction": 0.5, "covered": False},
                    ],
                }
            ],
        }
    )
    result = plan(
        g,
        "S",
        "T",
        PlannerConfig(
            requirements=Requirements(d1_s=200.0, d2_s=inf),
            relaxation=RelaxationPolicy(growth=2.0, max_d1_s=inf),
        ),
    )
    assert result.status == "relaxed"
    assert result.effective_d1_s == 800.0  # 200 -> 400 -> 800 >= 480
    assert result.breakdown.breakage_s == 480.0


def test_plan_same_source_and_target():
    g = load_graph({"nodes": [{"id": "A"}, {"id": "B"}], "edges": [{"from": "A", "to": "B", "duration_s": 5}]})
    result = plan(g, "A", "A", PlannerConfig())
    assert result.status == "optimal"
    assert result.chosen is not None
    assert result.chosen.nodes == ("A",)
    assert result.breakdown.cost == 0.0


def test_plan_rejects_unknown_nodes(two_route_graph):
    with pytest.raises(UnknownNodeError):
        plan(two_route_graph, "A", "nope", PlannerConfig())


def test_plan_is_deterministic_and_replan_identical(two_route_graph):
    config = PlannerConfig(alpha=0.5, requirements=Requirements(900.0, 600.0))
    a = plan(two_route_graph, "A", "H", config)
    b = plan(two_route_graph, "A", "H", config)
    c = replan(two_route_graph, "A", "H", config)
    assert result_to_doc(a) == result_to_doc(b) == result_to_doc(c)


def test_result_doc_shape(two_route_graph):
    config = PlannerConfig(alpha=0.5, requirements=Requirements(900.0, 600.0))
    doc = result_to_doc(plan(two_route_graph, "A", "H", config))
    assert list(doc) == [
        "chosen_path",
        "edges",
        "total_duration_s",
        "breakage_s",
        "max_breakage_run_s",
        "cost",
        "alpha",
        "status",
        "effective_d1_s",
        "matrix_summary",
    ]
    assert doc["chosen_path"] == ["A", "B", "H"]
    assert doc["edges"] == [["A", "B"], ["B", "H"]]
    assert doc["matrix_summary"] == [{"d1_s": 900.0, "path_count": 3}]


def test_result_doc_encodes_unbounded_as_null(two_route_graph):
    doc = result_to_doc(plan(two_route_graph, "A", "H", PlannerConfig()))
    assert doc["effective_d1_s"] is None
    assert doc["matrix_summary"][0]["d1_s"] is None


def test_score_combines_duration_and_breakage(two_route_graph):
    result = plan(
        two_route_graph, "A", "H", PlannerConfig(alpha=0.5, requirements=Requirements(900.0, 600.0))
    )
    assert result.breakdown.cost == result.breakdown.total_duration_s + 0.5 * result.breakdown.breakage_s
    rescored = score(result.chosen, 2.0)
    assert rescored.cost == result.breakdown.total_duration_s + 2.0 * result.breakdown.breakage_s
