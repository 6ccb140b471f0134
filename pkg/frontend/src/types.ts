/** Wire documents exactly as the service emits them. The console never
 * computes paths or costs; these shapes are rendered verbatim. */

export interface NodeDoc {
  id: string;
  lat?: number;
  lon?: number;
}

export interface SegmentDoc {
  fraction: number;
  covered: boolean;
}

export interface EdgeDoc {
  from: string;
  to: string;
  duration_s: number;
  segments: SegmentDoc[];
}

export interface GraphDoc {
  nodes: NodeDoc[];
  edges: EdgeDoc[];
}

export interface MatrixRowDoc {
  d1_s: number | null;
  path_count: number;
}

export interface PlanDoc {
  chosen_path: string[] | null;
  edges: [string, string][] | null;
  total_duration_s: number;
  breakage_s: number;
  max_breakage_run_s: number;
  cost: number;
  alpha: number;
  status: "optimal" | "relaxed" | "best_effort" | "unreachable";
  effective_d1_s: number | null;
  matrix_summary: MatrixRowDoc[];
}

export interface PositionDoc {
  node?: string;
  edge?: [string, string];
  offset?: number;
}

export interface TraversedDoc {
  edge: [string, string];
  entry_time_s: number;
}

export interface ReplanDoc {
  at_time_s: number;
  node: string;
  reasons: string[];
  status: string;
  cost: number;
}

export interface SimStateDoc {
  clock_s: number;
  status: "en_route" | "arrived" | "aborted";
  alpha: number;
  position: PositionDoc;
  endured_breakage_s: number;
  pending_reasons: string[];
  traversed: TraversedDoc[];
  replans: ReplanDoc[];
  active_plan: PlanDoc;
}

export interface PlanRequest {
  from: string;
  to: string;
  preset?: string;
  alpha?: number;
  d1_s?: number;
  d2_s?: number;
  k?: number;
}

export type EventRequest =
  | { kind: "set_alpha"; value: number; at_time_s?: number }
  | { kind: "force_replan"; at_time_s?: number }
  | { kind: "abort"; at_time_s?: number }
  | {
      kind: "relabel_graph";
      labels: { from: string; to: string; segments: SegmentDoc[] }[];
      at_time_s?: number;
    };
