import { ApiError } from "./api.js";

/** Probabilities display at two decimals, matching the service's tables. */
export function formatProbability(p: number): string {
  return p.toFixed(2);
}

/** Signed integer percent; changes under half a percent display as 0%. */
export function formatDelta(delta: number): string {
  if (Math.abs(delta) < 0.005) return "0%";
  const pct = Math.round(delta * 100);
  return `${pct > 0 ? "+" : ""}${pct}%`;
}

export function supportBadge(total: number): string {
  return total === 1 ? "1 case" : `${total} cases`;
}

/** "<name> present" / "<name> absent" for a target value. */
export function targetClause(name: string, value: 0 | 1): string {
  return `${name} ${value === 1 ? "present" : "absent"}`;
}

/** A certainty claim needs an exact 1.00 and at least one prior case. */
export function isSufficient(p: number, supportTotal: number): boolean {
  return p === 1.0 && supportTotal >= 1;
}

export function evidenceLabel(name: string, value: number): string {
  return value === 1 ? `${name}: reported` : `${name}: not reported`;
}

/** User-facing text for a failed request; server wording is authoritative. */
export function errorText(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  if (error instanceof Error) return `network failure: ${error.message}`;
  return "network failure";
}

/** True when an error is the service refusing a cycle-creating flip. */
export function isCycleRejection(error: unknown): boolean {
  return error instanceof ApiError && error.status === 409 && error.code === "cycle";
}

export function isNoSupport(error: unknown): boolean {
  return error instanceof ApiError && error.code === "no_supporting_cases";
}
