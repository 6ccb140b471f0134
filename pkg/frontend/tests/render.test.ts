import { describe, expect, it } from "vitest";

import type { Layout } from "../src/layout.js";
import {
  activeEdgeKeys,
  esc,
  markerPoint,
  renderEdges,
  renderMap,
  renderMarker,
} from "../src/render.js";
import type { GraphDoc, PlanDoc, SimStateDoc } from "../src/types.js";

const graph: GraphDoc = {
  nodes: [
    { id: "A", lat: 48.0, lon: 16.0 },
    { id: "B", lat: 48.0, lon: 16.2 },
    { id: "T", lat: 48.1, lon: 16.2 },
  ],
  edges: [
    {
      from: "A",
      to: "B",
      duration_s: 400,
      segments: [
        { fraction: 0.5, covered: true },
        { fraction: 0.25, covered: false },
        { fraction: 0.25, covered: true },
      ],
    },
    { from: "B", to: "T", duration_s: 200, segments: [{ fraction: 1.0, covered: false }] },
  ],
};

const layout: Layout = {
  width: 800,
  height: 600,
  pos: new Map([
    ["A", { x: 100, y: 100 }],
    ["B", { x: 300, y: 100 }],
    ["T", { x: 300, y: 500 }],
  ]),
};

const plan: PlanDoc = {
  chosen_path: ["A", "B", "T"],
  edges: [
    ["A", "B"],
    ["B", "T"],
  ],
  total_duration_s: 600,
  breakage_s: 300,
  max_breakage_run_s: 300,
  cost: 750,
  alpha: 0.5,
  status: "optimal",
  effective_d1_s: 900,
  matrix_summary: [{ d1_s: 900, path_count: 2 }],
};

const state: SimStateDoc = {
  clock_s: 100,
  status: "en_route",
  alpha: 0.5,
  position: { edge: ["A", "B"], offset: 0.25 },
  endured_breakage_s: 0,
  pending_reasons: [],
  traversed: [{ edge: ["A", "B"], entry_time_s: 0 }],
  replans: [],
  active_plan: plan,
};

describe("renderEdges", () => {
  it("draws one span per coverage segment at exact fraction boundaries", () => {
    const svg = renderEdges(graph, layout, new Set());
    const lines = svg.split("\n");
    expect(lines).toHaveLength(4); // 3 segments on A->B, 1 on B->T
    expect(lines[0]).toBe(
      `<line class="edge covered" x1="100.0" y1="100.0" x2="200.0" y2="100.0" />`,
    );
    expect(lines[1]).toBe(
      `<line class="edge uncovered" x1="200.0" y1="100.0" x2="250.0" y2="100.0" />`,
    );
    expect(lines[2]).toBe(
      `<line class="edge covered" x1="250.0" y1="100.0" x2="300.0" y2="100.0" />`,
    );
  });

  it("marks only active-route edges with the route class", () => {
    const svg = renderEdges(graph, layout, new Set(["B->T"]));
    const lines = svg.split("\n");
    expect(lines[0]).toContain(`class="edge covered"`);
    expect(lines[3]).toContain(`class="edge uncovered route"`);
  });
});

describe("activeEdgeKeys", () => {
  it("collects directed edge keys from the plan", () => {
    expect(activeEdgeKeys(plan)).toEqual(new Set(["A->B", "B->T"]));
  });

  it("is empty for unreachable plans", () => {
    expect(activeEdgeKeys({ ...plan, edges: null, chosen_path: null })).toEqual(new Set());
  });
});

describe("marker", () => {
  it("sits exactly at the position offset along the edge", () => {
    expect(markerPoint(state, layout)).toEqual({ x: 150, y: 100 });
    expect(renderMarker(state, layout)).toBe(
      `<circle class="ambulance en_route" cx="150.0" cy="100.0" r="8" />`,
    );
  });

  it("sits on the node when the position is a node", () => {
    const atNode = { ...state, position: { node: "T" } };
    expect(markerPoint(atNode, layout)).toEqual({ x: 300, y: 500 });
  });

  it("renders nothing for unknown nodes", () => {
    const lost = { ...state, position: { node: "nowhere" } };
    expect(renderMarker(lost, layout)).toBe("");
  });
});

describe("renderMap", () => {
  it("composes viewbox, edges, nodes and marker", () => {
    const svg = renderMap(graph, layout, state);
    expect(svg).toContain(`viewBox="0 0 800 600"`);
    expect(svg).toContain(`class="edge uncovered route"`);
    expect(svg).toContain(`class="ambulance en_route"`);
    expect(svg).toContain(`>A</text>`);
  });

  it("overlays a preview plan without a marker when no state exists", () => {
    const svg = renderMap(graph, layout, null, plan);
    expect(svg).toContain(`class="edge covered route"`);
    expect(svg).not.toContain("ambulance");
  });
});

describe("esc", () => {
  it("escapes markup metacharacters", () => {
    expect(esc(`<a & "b">`)).toBe("&lt;a &amp; &quot;b&quot;&gt;");
  });
});
