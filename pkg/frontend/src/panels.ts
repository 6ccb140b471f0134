/** Pure HTML-string builders for the side panels. Every number shown
 * comes straight out of a server document through a display formatter;
 * nothing here recomputes costs, breakage, or paths. */

import { fmtAlpha, fmtBudget, fmtClock, fmtCost, fmtSeconds } from "./format.js";
import { esc } from "./render.js";
import type { LogEntry } from "./store.js";
import type { PlanDoc, SimStateDoc } from "./types.js";

export function renderPlanPanel(plan: PlanDoc | null): string {
  if (plan === null) {
    return `<p class="hint">No plan yet. Pick endpoints and press Plan.</p>`;
  }
  const rows: string[] = [
    `<dt>Status</dt><dd class="status-${esc(plan.status)}">${esc(plan.status)}</dd>`,
    `<dt>Route</dt><dd>${
      plan.chosen_path === null ? "&mdash;" : esc(plan.chosen_path.join(" - "))
    }</dd>`,
    `<dt>Total duration</dt><dd>${esc(fmtSeconds(plan.total_duration_s))}</dd>`,
    `<dt>Breakage</dt><dd>${esc(fmtSeconds(plan.breakage_s))}</dd>`,
    `<dt>Longest gap</dt><dd>${esc(fmtSeconds(plan.max_breakage_run_s))}</dd>`,
    `<dt>Cost</dt><dd>${esc(fmtCost(plan.cost))}</dd>`,
    `<dt>Alpha</dt><dd>${esc(fmtAlpha(plan.alpha))}</dd>`,
    `<dt>Gap budget used</dt><dd>${esc(fmtBudget(plan.effective_d1_s))}</dd>`,
  ];
  return `<dl class="plan">${rows.join("")}</dl>`;
}

export function renderStatusBar(state: SimStateDoc | null): string {
  if (state === null) {
    return `<span class="clock">--:--</span><span class="phase">idle</span>`;
  }
  const pos =
    state.position.node !== undefined
      ? `at ${esc(state.position.node)}`
      : `on ${esc(state.position.edge![0])} - ${esc(state.position.edge![1])} (${(
          state.position.offset! * 100
        ).toFixed(1)}%)`;
  const pending =
    state.pending_reasons.length > 0
      ? `<span class="pending">pending: ${esc(state.pending_reasons.join(", "))}</span>`
      : "";
  return (
    `<span class="clock">${esc(fmtClock(state.clock_s))}</span>` +
    `<span class="phase phase-${esc(state.status)}">${esc(state.status)}</span>` +
    `<span class="pos">${pos}</span>` +
    `<span class="endured">endured ${esc(fmtSeconds(state.endured_breakage_s))}</span>` +
    pending
  );
}

export function renderEventLog(log: readonly LogEntry[]): string {
  if (log.length === 0) {
    return `<p class="hint">Nothing logged yet.</p>`;
  }
  const items = log.map(
    (e) => `<li><span class="t">${esc(fmtClock(e.atTimeS))}</span> ${esc(e.label)}</li>`,
  );
  return `<ol class="log">${items.join("")}</ol>`;
}
