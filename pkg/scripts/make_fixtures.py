"""Regenerate the bundled fixtures under fixtures/.

The two-route graph is built so the preset alphas flip the decision:
the direct route takes 2100 s (35 min) with one 480 s uncovered run;
the detour takes 2820 s (47 min) fully covered. Costs cross at
alpha = (2820 - 2100) / 480 = 1.5, between the hemorrhagic (0.5) and
ischemic (4.0) presets. Segment fractions are powers of two so segment
durations are exact binary floats.
"""

from __future__ import annotations

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, os.pardir, "fixtures")

TWO_ROUTE = {
    "nodes": [
        {"id": "A", "lat": 0.0, "lon": 0.0},
        {"id": "B", "lat": 0.1, "lon": 0.5},
        {"id": "C", "lat": -0.4, "lon": 0.3},
        {"id": "D", "lat": -0.4, "lon": 0.8},
        {"id": "H", "lat": 0.0, "lon": 1.0},
    ],
    "edges": [
        {
            "from": "A",
            "to": "B",
            "duration_s": 180.0,
            "segments": [{"fraction": 1.0, "covered": True}],
        },
        {
            "from": "B",
            "to": "H",
            "duration_s": 1920.0,
            "segments": [
                {"fraction": 0.5, "covered": True},
                {"fraction": 0.25, "covered": False},
                {"fraction": 0.25, "covered": True},
            ],
        },
        {
            "from": "A",
            "to": "C",
            "duration_s": 900.0,
            "segments": [{"fraction": 1.0, "covered": True}],
        },
        {
            "from": "C",
            "to": "D",
            "duration_s": 960.0,
            "segments": [{"fraction": 1.0, "covered": True}],
        },
        {
            "from": "D",
            "to": "H",
            "duration_s": 960.0,
            "segments": [{"fraction": 1.0, "covered": True}],
        },
        {
            "from": "C",
            "to": "B",
            "duration_s": 300.0,
            "segments": [{"fraction": 1.0, "covered": True}],
        },
    ],
}


def demo_trace_rows() -> list[tuple[float, str, str, str, float, float]]:
    """A drive over A->B then B->H sampled every 4 s of trace time.

    Bandwidth stays high on A->B; on B->H it collapses between offsets
    0.5 and 0.75, reproducing the fixture's uncovered middle quarter.
    """
    rows: list[tuple[float, str, str, str, float, float]] = []
    ts = 0.0
    for i in range(10):
        rows.append((ts, "demo-1", "A", "B", i / 10.0, 1800.0 - 35.0 * i))
        ts += 4.0
    for i in range(40):
        offset = i / 40.0
        if 0.5 <= offset < 0.75:
            bandwidth = 96.0 + 8.0 * (i % 3)
        else:
            bandwidth = 1400.0 + 12.0 * (i % 5)
        rows.append((ts, "demo-1", "B", "H", offset, bandwidth))
        ts += 4.0
    return rows


DEMO_EVENTS = [
    {"at_time_s": 120.0, "kind": "set_alpha", "value": 4.0},
]


def main() -> None:
    os.makedirs(FIXTURES, exist_ok=True)
    with open(os.path.join(FIXTURES, "two_route.json"), "w", encoding="utf-8") as fh:
        json.dump(TWO_ROUTE, fh, indent=2)
        fh.write("\n")
    with open(os.path.join(FIXTURES, "demo_trace.csv"), "w", encoding="utf-8") as fh:
        fh.write("timestamp_s,route_id,from,to,offset,bandwidth_kbps\n")
        for ts, route, u, v, off, bw in demo_trace_rows():
            fh.write(f"{ts},{route},{u},{v},{off},{bw}\n")
    with open(os.path.join(FIXTURES, "demo_events.json"), "w", encoding="utf-8") as fh:
        json.dump(DEMO_EVENTS, fh, indent=2)
        fh.write("\n")
    print(f"fixtures written to {os.path.normpath(FIXTURES)}")


if __name__ == "__main__":
    main()
