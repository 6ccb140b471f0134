"""Shared builders for the test suite.

Scenario generators draw durations as integer-valued floats and segment
fractions as multiples of 1/64 (exact binary floats), so duration
arithmetic in both the engine and the oracles is exact and equality
assertions can be strict. Builders are seeded and deterministic.
"""

from __future__ import annotations

import os
import random

import pytest

from covroute import PlannerConfig, RelaxationPolicy, Requirements, RoadGraph, SweepPolicy, load_graph

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, "fixtures")
TWO_ROUTE_PATH = os.path.join(FIXTURES_DIR, "two_route.json")
DEMO_TRACE_PATH = os.path.join(FIXTURES_DIR, "demo_trace.csv")


def dyadic_fractions(rng: random.Random, parts: int) -> list[float]:
    """``parts`` positive fractions, each a multiple of 1/64, summing to
    exactly 1.0 in floating point."""
    cuts = sorted(rng.sample(range(1, 64), parts - 1))
    bounds = [0] + cuts + [64]
    return [(bounds[i + 1] - bounds[i]) / 64.0 for i in range(parts)]


def random_graph_doc(
    rng: random.Random,
    max_nodes: int = 12,
    max_edges: int = 30,
    multi_segment_prob: float = 0.5,
    covered_prob: float = 0.6,
    parallel_prob: float = 0.15,
) -> dict:
    n = rng.randint(2, max_nodes)
    ids = [f"n{i:02d}" for i in range(n)]
    m = rng.randint(1, max_edges)
    edges = []
    pairs: list[tuple[str, str]] = []
    for _ in range(m):
        if pairs and rng.random() < parallel_prob:
            u, v = rng.choice(pairs)
        else:
            u = rng.choice(ids)
            v = rng.choice([x for x in ids if x != u])
        pairs.append((u, v))
        duration = float(rng.randint(1, 600))
        if rng.random() < multi_segment_prob:
            parts = rng.randint(2, 4)
            fractions = dyadic_fractions(rng, parts)
            segments = [
                {"fraction": f, "covered": rng.random() < covered_prob} for f in fractions
            ]
        else:
            segments = [{"fraction": 1.0, "covered": rng.random() < covered_prob}]
        edges.append({"from": u, "to": v, "duration_s": duration, "segments": segments})
    return {"nodes": [{"id": i} for i in ids], "edges": edges}


def random_scenario(
    seed: int, same_endpoint_prob: float = 0.05, **doc_kwargs
) -> tuple[RoadGraph, str, str]:
    rng = random.Random(seed)
    g = load_graph(random_graph_doc(rng, **doc_kwargs))
    ids = sorted(g.nodes)
    s = rng.choice(ids)
    if rng.random() < same_endpoint_prob:
        return g, s, s
    t = rng.choice([x for x in ids if x != s] or [s])
    return g, s, t


def random_config(rng: random.Random) -> PlannerConfig:
    alpha = rng.choice([0.0, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0])
    d1 = rng.choice([float("inf"), float("inf"), 0.0, float(rng.randint(1, 1200))])
    d2 = rng.choice([float("inf"), float("inf"), 0.0, float(rng.randint(1, 900))])
    growth = rng.choice([1.5, 2.0])
    if d1 == float("inf") or d1 == 0.0:
        max_d1 = rng.choice([d1, float("inf")])
    else:
        max_d1 = d1 * rng.choice([1.0, growth, growth * growth * growth, float("inf")])
    low, high = rng.choice([(1.0, 1.0), (0.5, 1.5), (0.5, 2.0), (1.0, 2.0), (0.75, 1.25)])
    return PlannerConfig(
        alpha=alpha,
        requirements=Requirements(d1_s=d1, d2_s=d2),
        k=rng.choice([1, 2, 3, 8]),
        relaxation=RelaxationPolicy(growth=growth, max_d1_s=max_d1),
        sweep=SweepPolicy(low=low, high=high, rows=rng.choice([1, 1, 2, 3])),
    )


@pytest.fixture()
def two_route_graph() -> RoadGraph:
    return load_graph(TWO_ROUTE_PATH)
