/** Display formatting only — every number shown is a service value
 * passed through one of these; the console performs no arithmetic on
 * route metrics beyond unit display. */

export function fmtSeconds(v: number): string {
  return `${v.toFixed(1)} s (${(v / 60).toFixed(1)} min)`;
}

export function fmtCost(v: number): string {
  return v.toFixed(1);
}

export function fmtAlpha(v: number): string {
  return v.toFixed(2);
}

export function fmtClock(v: number): string {
  const m = Math.floor(v / 60);
  const s = v - m * 60;
  return `${String(m).padStart(2, "0")}:${s.toFixed(1).padStart(4, "0")}`;
}

export function fmtBudget(v: number | null): string {
  return v === null ? "unbounded" : fmtSeconds(v);
}
