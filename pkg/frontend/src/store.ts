/** Console state. The server is the single source of truth: views
 * render only from snapshots stored here, and the event log appends
 * strictly in the order the server confirmed things. */

import { fmtCost } from "./format.js";
import type { GraphDoc, SimStateDoc } from "./types.js";

export interface LogEntry {
  atTimeS: number;
  label: string;
}

const routeText = (path: readonly string[] | null): string =>
  path === null ? "(none)" : path.join(" - ");

export class ConsoleStore {
  graph: GraphDoc | null = null;
  state: SimStateDoc | null = null;
  log: LogEntry[] = [];
  private seenReplans = 0;

  setGraph(graph: GraphDoc): void {
    this.graph = graph;
  }

  /** Absorb a server snapshot. Newly reported replans join the log in
   * the server's own array order, followed by an old-route/new-route
   * diff line whenever the displayed route just changed. */
  applyState(doc: SimStateDoc): void {
    const previous = this.state;
    if (previous !== null && doc.replans.length < this.seenReplans) {
      // a fresh session restarted the replan history
      this.seenReplans = 0;
    }
    this.state = doc;
    const firstNew = this.seenReplans;
    for (; this.seenReplans < doc.replans.length; this.seenReplans += 1) {
      const r = doc.replans[this.seenReplans]!;
      this.log.push({
        atTimeS: r.at_time_s,
        label: `replan at ${r.node} (${r.reasons.join("+")}) -> ${r.status}, cost ${fmtCost(
          r.cost,
        )}`,
      });
    }
    if (previous !== null && this.seenReplans > firstNew) {
      const before = previous.active_plan.chosen_path;
      const after = doc.active_plan.chosen_path;
      if (routeText(before) !== routeText(after)) {
        this.log.push({
          atTimeS: doc.replans[this.seenReplans - 1]!.at_time_s,
          label: `route ${routeText(before)} -> ${routeText(after)}`,
        });
      }
    }
  }

  /** Record a server-confirmed event (the response snapshot carries the
   * clock the server stamped it with), then absorb the snapshot. */
  noteEvent(kind: string, confirmed: SimStateDoc): void {
    this.log.push({ atTimeS: confirmed.clock_s, label: `event ${kind}` });
    this.applyState(confirmed);
  }

  startSession(first: SimStateDoc): void {
    this.log = [];
    this.seenReplans = 0;
    this.state = null;
    this.noteEvent("transport started", first);
  }
}
