/** Thin typed client over fetch; one function per service endpoint. */

import type { EventRequest, GraphDoc, PlanDoc, PlanRequest, SimStateDoc } from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(base + path, init);
  const text = await response.text();
  if (!response.ok) {
    let detail = text.trim();
    try {
      detail = (JSON.parse(text) as { error?: string }).error ?? detail;
    } catch {
      // non-JSON error body; keep raw text
    }
    throw new ServiceError(response.status, detail);
  }
  return JSON.parse(text) as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class ApiClient {
  constructor(readonly base: string) {}

  graph(): Promise<GraphDoc> {
    return request(this.base, "/graph");
  }

  plan(req: PlanRequest): Promise<PlanDoc> {
    return request(this.base, "/plan", post(req));
  }

  simStart(req: PlanRequest): Promise<SimStateDoc> {
    return request(this.base, "/sim/start", post(req));
  }

  simEvent(event: EventRequest): Promise<SimStateDoc> {
    return request(this.base, "/sim/event", post(event));
  }

  simAdvance(dtS: number): Promise<SimStateDoc> {
    return request(this.base, "/sim/advance", post({ dt_s: dtS }));
  }

  simState(): Promise<SimStateDoc> {
    return request(this.base, "/sim/state");
  }

  streamUrl(): string {
    return this.base + "/sim/stream";
  }
}
