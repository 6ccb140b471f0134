/** Pure SVG markup builders; no DOM access, so every view is unit
 * testable as a string. Coverage state is drawn exactly where the
 * service's segment fractions say it is. */

import type { Layout, XY } from "./layout.js";
import { pointAlong } from "./layout.js";
import type { EdgeDoc, GraphDoc, PlanDoc, SimStateDoc } from "./types.js";

export const esc = (s: string): string =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");

function segmentSpans(edge: EdgeDoc, a: XY, b: XY): { from: XY; to: XY; covered: boolean }[] {
  const spans: { from: XY; to: XY; covered: boolean }[] = [];
  let at = 0;
  for (const seg of edge.segments) {
    const next = at + seg.fraction;
    spans.push({ from: pointAlong(a, b, at), to: pointAlong(a, b, next), covered: seg.covered });
    at = next;
  }
  return spans;
}

function line(a: XY, b: XY, cls: string): string {
  return (
    `<line class="${cls}" x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" ` +
    `x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}" />`
  );
}

export function renderEdges(graph: GraphDoc, layout: Layout, activeEdges: Set<string>): string {
  const parts: string[] = [];
  for (const edge of graph.edges) {
    const a = layout.pos.get(edge.from);
    const b = layout.pos.get(edge.to);
    if (!a || !b) {
      continue;
    }
    const onRoute = activeEdges.has(`${edge.from}->${edge.to}`);
    for (const span of segmentSpans(edge, a, b)) {
      const coverage = span.covered ? "covered" : "uncovered";
      const route = onRoute ? " route" : "";
      parts.push(line(span.from, span.to, `edge ${coverage}${route}`));
    }
  }
  return parts.join("\n");
}

export function renderNodes(graph: GraphDoc, layout: Layout): string {
  const parts: string[] = [];
  for (const node of graph.nodes) {
    const p = layout.pos.get(node.id);
    if (!p) {
      continue;
    }
    parts.push(
      `<g class="node"><circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="6" />` +
        `<text x="${(p.x + 9).toFixed(1)}" y="${(p.y - 9).toFixed(1)}">${esc(node.id)}</text></g>`,
    );
  }
  return parts.join("\n");
}

export function activeEdgeKeys(plan: PlanDoc): Set<string> {
  const keys = new Set<string>();
  for (const [u, v] of plan.edges ?? []) {
    keys.add(`${u}->${v}`);
  }
  return keys;
}

/** Ambulance marker from the service position document (node, or edge +
 * offset along it); null when the position references unknown nodes. */
export function markerPoint(state: SimStateDoc, layout: Layout): XY | null {
  const pos = state.position;
  if (pos.node !== undefined) {
    return layout.pos.get(pos.node) ?? null;
  }
  if (pos.edge !== undefined && pos.offset !== undefined) {
    const a = layout.pos.get(pos.edge[0]);
    const b = layout.pos.get(pos.edge[1]);
    if (!a || !b) {
      return null;
    }
    return pointAlong(a, b, pos.offset);
  }
  return null;
}

export function renderMarker(state: SimStateDoc, layout: Layout): string {
  const p = markerPoint(state, layout);
  if (p === null) {
    return "";
  }
  return `<circle class="ambulance ${state.status}" cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(
    1,
  )}" r="8" />`;
}

export function renderMap(
  graph: GraphDoc,
  layout: Layout,
  state: SimStateDoc | null,
  plan: PlanDoc | null = state ? state.active_plan : null,
): string {
  const active = plan ? activeEdgeKeys(plan) : new Set<string>();
  const marker = state ? renderMarker(state, layout) : "";
  return (
    `<svg viewBox="0 0 ${layout.width} ${layout.height}" xmlns="http://www.w3.org/2000/svg">` +
    `<g class="edges">${renderEdges(graph, layout, active)}</g>` +
    `<g class="nodes">${renderNodes(graph, layout)}</g>` +
    `${marker}</svg>`
  );
}
