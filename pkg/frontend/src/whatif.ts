import {
  formatDelta,
  formatProbability,
  isSufficient,
  supportBadge,
  targetClause,
} from "./format.js";
import type { QueryResponse } from "./types.js";

/** Evidence toggles are tri-state: unset, absent (0) or reported (1). */
export type Toggle = null | 0 | 1;

export interface WhatIfState {
  evidence: Record<string, Toggle>;
  target: string | null;
  targetValue: 0 | 1;
}

export function initialState(): WhatIfState {
  return { evidence: {}, target: null, targetValue: 1 };
}

/** Cycle one concept's toggle: unset -> reported -> not reported -> unset. */
export function cycleToggle(state: WhatIfState, node: string): WhatIfState {
  const current = state.evidence[node] ?? null;
  const next: Toggle = current === null ? 1 : current === 1 ? 0 : null;
  const evidence = { ...state.evidence, [node]: next };
  if (next === null) delete evidence[node];
  return { ...state, evidence };
}

export function setTarget(
  state: WhatIfState,
  target: string | null,
  targetValue: 0 | 1,
): WhatIfState {
  return { ...state, target, targetValue };
}

/** Evidence actually sent to the service (target excluded, unset dropped). */
export function queryEvidence(state: WhatIfState): Record<string, number> {
  const out: Record<string, number> = {};
  for (const [node, value] of Object.entries(state.evidence)) {
    if (value !== null && node !== state.target) out[node] = value;
  }
  return out;
}

export interface WhatIfDisplay {
  headline: string;
  probabilityText: string;
  badge: string;
  sufficient: boolean;
  deltaText: string;
}

/**
 * Display model for one answered query. Both the posterior and the
 * empty-evidence baseline come from the service; nothing is computed here
 * beyond subtraction for the readout.
 */
export function buildDisplay(
  targetName: string,
  targetValue: 0 | 1,
  response: QueryResponse,
  baseline: QueryResponse,
): WhatIfDisplay {
  const p = response.p[targetValue === 1 ? "1" : "0"];
  const base = baseline.p[targetValue === 1 ? "1" : "0"];
  const support = response.support.total;
  const sufficient = isSufficient(p, support);
  const clause = targetClause(targetName, targetValue);
  const headline = `P(${clause}) = ${formatProbability(p)}`;
  return {
    headline: sufficient ? `${headline} (sufficient)` : headline,
    probabilityText: formatProbability(p),
    badge: supportBadge(support),
    sufficient,
    deltaText: `${formatDelta(p - base)} vs baseline ${formatProbability(base)}`,
  };
}
