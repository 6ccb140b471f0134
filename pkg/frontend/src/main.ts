/** DOM wiring for the dispatch console. All mutations go to the
 * service and the view re-renders only from confirmed server documents
 * (POST responses and the state stream). */

import { ApiClient } from "./api.js";
import { fmtAlpha } from "./format.js";
import { layoutGraph } from "./layout.js";
import { renderEventLog, renderPlanPanel, renderStatusBar } from "./panels.js";
import { renderMap } from "./render.js";
import { subscribe } from "./sse.js";
import { ConsoleStore } from "./store.js";
import type { EventRequest, PlanDoc, PlanRequest, SegmentDoc, SimStateDoc } from "./types.js";

const byId = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
};

const store = new ConsoleStore();
let client: ApiClient | null = null;
let streamAbort: AbortController | null = null;
/** Standalone plan preview (before a transport starts). */
let preview: PlanDoc | null = null;

function showError(message: string): void {
  byId("error").textContent = message;
}

function clearError(): void {
  byId("error").textContent = "";
}

function renderAll(): void {
  const state = store.state;
  const mapEl = byId("map");
  if (store.graph !== null) {
    const layout = layoutGraph(store.graph);
    const overlay =
      state !== null && state.status === "en_route"
        ? state.active_plan
        : (preview ?? state?.active_plan ?? null);
    mapEl.innerHTML = renderMap(store.graph, layout, state, overlay);
  }
  byId("status-bar").innerHTML = renderStatusBar(state);
  byId("plan-panel").innerHTML = renderPlanPanel(
    state !== null && state.status === "en_route" ? state.active_plan : (preview ?? state?.active_plan ?? null),
  );
  const logEl = byId("log");
  logEl.innerHTML = renderEventLog(store.log);
  logEl.scrollTop = logEl.scrollHeight;
}

function fillSelect(select: HTMLSelectElement, values: string[], keep: string): void {
  select.innerHTML = "";
  for (const v of values) {
    const opt = document.createElement("option");
    opt.value = v;
    opt.textContent = v;
    select.append(opt);
  }
  if (values.includes(keep)) {
    select.value = keep;
  }
}

function populateControls(): void {
  const graph = store.graph;
  if (graph === null) {
    return;
  }
  const ids = graph.nodes.map((n) => n.id);
  const from = byId<HTMLSelectElement>("from");
  const to = byId<HTMLSelectElement>("to");
  fillSelect(from, ids, from.value);
  fillSelect(to, ids, to.value !== "" && to.value !== from.value ? to.value : (ids[ids.length - 1] ?? ""));
  const edge = byId<HTMLSelectElement>("edge");
  const previous = edge.value;
  edge.innerHTML = "";
  graph.edges.forEach((e, i) => {
    const covered = e.segments.every((s) => s.covered);
    const opt = document.createElement("option");
    opt.value = String(i);
    opt.textContent = `${e.from} -> ${e.to} (${covered ? "covered" : "uncovered"})`;
    edge.append(opt);
  });
  if ([...edge.options].some((o) => o.value === previous)) {
    edge.value = previous;
  }
}

function planRequest(): PlanRequest {
  const req: PlanRequest = {
    from: byId<HTMLSelectElement>("from").value,
    to: byId<HTMLSelectElement>("to").value,
  };
  const preset = byId<HTMLSelectElement>("preset").value;
  if (preset !== "custom") {
    req.preset = preset;
    return req;
  }
  req.alpha = Number(byId<HTMLInputElement>("alpha").value);
  const d1 = byId<HTMLInputElement>("d1").value;
  const d2 = byId<HTMLInputElement>("d2").value;
  if (d1 !== "") {
    req.d1_s = Number(d1);
  }
  if (d2 !== "") {
    req.d2_s = Number(d2);
  }
  return req;
}

async function refreshGraph(c: ApiClient): Promise<void> {
  store.setGraph(await c.graph());
  populateControls();
}

async function connect(): Promise<void> {
  streamAbort?.abort();
  const base = byId<HTMLInputElement>("base").value.replace(/\/+$/, "");
  const c = new ApiClient(base);
  await refreshGraph(c);
  client = c;
  try {
    store.applyState(await c.simState());
  } catch {
    // no active session yet
  }
  streamAbort = new AbortController();
  void subscribe(
    c.streamUrl(),
    (payload) => {
      store.applyState(JSON.parse(payload) as SimStateDoc);
      renderAll();
    },
    streamAbort.signal,
  ).catch((err: unknown) => {
    if (!streamAbort?.signal.aborted) {
      showError(`stream lost: ${String(err)}`);
    }
  });
  byId("conn-status").textContent = `connected to ${base || window.location.origin}`;
  renderAll();
}

async function planPreview(c: ApiClient): Promise<void> {
  preview = await c.plan(planRequest());
  renderAll();
}

async function startTransport(c: ApiClient): Promise<void> {
  const req = planRequest();
  preview = await c.plan(req); // render the agreed plan first
  store.startSession(await c.simStart(req));
  preview = null;
  renderAll();
}

async function postEvent(c: ApiClient, label: string, ev: EventRequest): Promise<void> {
  store.noteEvent(label, await c.simEvent(ev));
  if (ev.kind === "relabel_graph") {
    await refreshGraph(c);
  }
  renderAll();
}

async function toggleCoverage(c: ApiClient): Promise<void> {
  const graph = store.graph;
  if (graph === null) {
    return;
  }
  const edge = graph.edges[Number(byId<HTMLSelectElement>("edge").value)];
  if (edge === undefined) {
    return;
  }
  const covered = edge.segments.every((s) => s.covered);
  const segments: SegmentDoc[] = [{ fraction: 1.0, covered: !covered }];
  await postEvent(c, `relabel ${edge.from} -> ${edge.to} ${covered ? "uncovered" : "covered"}`, {
    kind: "relabel_graph",
    labels: [{ from: edge.from, to: edge.to, segments }],
  });
}

async function advance(c: ApiClient, dtS: number): Promise<void> {
  store.applyState(await c.simAdvance(dtS));
  renderAll();
}

/** Drive a recorded scenario: advance to each event's timestamp, post
 * it, then run the transport to completion. */
async function replay(c: ApiClient, text: string): Promise<void> {
  const events = JSON.parse(text) as (EventRequest & { at_time_s?: number })[];
  if (!Array.isArray(events)) {
    throw new Error("events file must be a JSON array");
  }
  for (const ev of events) {
    const at = ev.at_time_s ?? 0;
    const clock = store.state?.clock_s ?? 0;
    if (at > clock) {
      await advance(c, at - clock);
    }
    const { at_time_s: _dropped, ...body } = ev;
    await postEvent(c, `${ev.kind} (replay)`, body as EventRequest);
    if (store.state?.status !== "en_route") {
      return;
    }
  }
  for (let i = 0; i < 10_000 && store.state?.status === "en_route"; i += 1) {
    await advance(c, 60);
  }
}

function withClient(run: (c: ApiClient) => Promise<void>): () => void {
  return () => {
    if (client === null) {
      showError("connect to a service first");
      return;
    }
    clearError();
    run(client).catch((err: unknown) => showError(String(err instanceof Error ? err.message : err)));
  };
}

function wire(): void {
  const alpha = byId<HTMLInputElement>("alpha");
  const alphaOut = byId("alpha-out");
  const preset = byId<HTMLSelectElement>("preset");
  const presetAlpha: Record<string, number> = { hemorrhagic: 0.5, ischemic: 4.0 };
  alpha.addEventListener("input", () => {
    alphaOut.textContent = fmtAlpha(Number(alpha.value));
    preset.value = "custom";
  });
  preset.addEventListener("change", () => {
    const pinned = presetAlpha[preset.value];
    if (pinned !== undefined) {
      alpha.value = String(pinned);
      alphaOut.textContent = fmtAlpha(pinned);
    }
  });
  alphaOut.textContent = fmtAlpha(Number(alpha.value));

  byId("connect").addEventListener(
    "click",
    () => void connect().catch((err: unknown) => showError(String(err))),
  );
  byId("plan").addEventListener("click", withClient(planPreview));
  byId("start").addEventListener("click", withClient(startTransport));
  byId("advance").addEventListener(
    "click",
    withClient((c) => advance(c, Number(byId<HTMLInputElement>("advance-dt").value))),
  );
  byId("apply-alpha").addEventListener(
    "click",
    withClient((c) =>
      postEvent(c, `set_alpha ${fmtAlpha(Number(alpha.value))}`, {
        kind: "set_alpha",
        value: Number(alpha.value),
      }),
    ),
  );
  byId("force-replan").addEventListener(
    "click",
    withClient((c) => postEvent(c, "force_replan", { kind: "force_replan" })),
  );
  byId("abort").addEventListener(
    "click",
    withClient((c) => postEvent(c, "abort", { kind: "abort" })),
  );
  byId("toggle-coverage").addEventListener("click", withClient(toggleCoverage));
  byId("replay").addEventListener(
    "click",
    withClient(async (c) => {
      const file = byId<HTMLInputElement>("replay-file").files?.[0];
      if (file === undefined) {
        throw new Error("choose an events file first");
      }
      await replay(c, await file.text());
    }),
  );
  renderAll();
}

if (typeof document !== "undefined") {
  const base = byId<HTMLInputElement>("base");
  if (base.value === "" && window.location.protocol.startsWith("http")) {
    base.value = window.location.origin;
  }
  wire();
}
