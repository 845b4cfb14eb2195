import { formatProbability } from "./format.js";
import type { CptDoc } from "./types.js";

export interface CptCell {
  text: string;
}

export interface CptTableRow {
  comboText: string;
  cells: [CptCell, CptCell];
  totalText: string;
  fallback: boolean;
}

export interface CptTable {
  node: string;
  header: string[];
  rows: CptTableRow[];
}

/**
 * Table model mirroring the service's CPT layout: one row per parent value
 * combination, probability columns for the node's two states, observed case
 * counts in parentheses, and rows backed by zero cases marked as fallback.
 */
export function cptTable(doc: CptDoc, nameOf: (id: string) => string): CptTable {
  const parentNames = doc.parents.map(nameOf).join(", ");
  const header = [
    doc.parents.length ? `causes (${parentNames})` : "no causes",
    `${nameOf(doc.node)} = 0`,
    `${nameOf(doc.node)} = 1`,
    "cases",
  ];
  const rows = doc.rows.map((row) => ({
    comboText: row.combo.length ? row.combo.join(", ") : "-",
    cells: [
      { text: `${formatProbability(row.p[0])} (${row.n[0]})` },
      { text: `${formatProbability(row.p[1])} (${row.n[1]})` },
    ] as [CptCell, CptCell],
    totalText: `(${row.total})`,
    fallback: row.fallback,
  }));
  return { node: doc.node, header, rows };
}
