/** Schematic node placement for the SVG map.
 *
 * With lat/lon on every node, positions are a plain linear fit of
 * lon/lat into the viewbox (lat axis flipped, aspect preserved). When
 * any node lacks coordinates the whole graph falls back to a
 * deterministic circle in document order, so rendering stays stable
 * across reloads without any physics.
 */

import type { GraphDoc } from "./types.js";

export interface XY {
  x: number;
  y: number;
}

export interface Layout {
  width: number;
  height: number;
  pos: Map<string, XY>;
}

export function layoutGraph(graph: GraphDoc, width = 800, height = 600, pad = 40): Layout {
  const pos = new Map<string, XY>();
  const located = graph.nodes.every((n) => typeof n.lat === "number" && typeof n.lon === "number");
  if (!located || graph.nodes.length === 0) {
    const r = Math.min(width, height) / 2 - pad;
    const cx = width / 2;
    const cy = height / 2;
    graph.nodes.forEach((n, i) => {
      const angle = (2 * Math.PI * i) / Math.max(graph.nodes.length, 1) - Math.PI / 2;
      pos.set(n.id, { x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
    });
    return { width, height, pos };
  }
  const lons = graph.nodes.map((n) => n.lon as number);
  const lats = graph.nodes.map((n) => n.lat as number);
  const lonMin = Math.min(...lons);
  const lonMax = Math.max(...lons);
  const latMin = Math.min(...lats);
  const latMax = Math.max(...lats);
  const spanLon = lonMax - lonMin || 1;
  const spanLat = latMax - latMin || 1;
  const scale = Math.min((width - 2 * pad) / spanLon, (height - 2 * pad) / spanLat);
  const offX = (width - spanLon * scale) / 2;
  const offY = (height - spanLat * scale) / 2;
  for (const n of graph.nodes) {
    pos.set(n.id, {
      x: offX + ((n.lon as number) - lonMin) * scale,
      // screen y grows downward; larger latitude renders higher
      y: offY + (latMax - (n.lat as number)) * scale,
    });
  }
  return { width, height, pos };
}

export function pointAlong(a: XY, b: XY, t: number): XY {
  return { x: a.x + (b.x - a.x) * t, y: a.y + (b.y - a.y) * t };
}
