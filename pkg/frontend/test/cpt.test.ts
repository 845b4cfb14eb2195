import { describe, expect, it } from "vitest";

import { cptTable } from "../src/cpt.js";
import type { CptDoc } from "../src/types.js";

const NAMES: Record<string, string> = {
  N2: "prosecutorial delay or inability",
  N4: "riot",
  N8: "evidence inconsistency",
  N10: "political rivalry",
};

const nameOf = (id: string) => NAMES[id] ?? id;

// The three-predictor table for political rivalry, as served.
const DOC: CptDoc = {
  node: "N10",
  parents: ["N2", "N4", "N8"],
  rows: [
    { combo: [0, 0, 0], p: [1.0, 0.0], n: [125, 0], total: 125, fallback: false },
    { combo: [0, 0, 1], p: [1.0, 0.0], n: [12, 0], total: 12, fallback: false },
    { combo: [0, 1, 0], p: [1.0, 0.0], n: [9, 0], total: 9, fallback: false },
    { combo: [0, 1, 1], p: [0.0, 1.0], n: [0, 1], total: 1, fallback: false },
    { combo: [1, 0, 0], p: [1.0, 0.0], n: [1, 0], total: 1, fallback: false },
    { combo: [1, 0, 1], p: [0.5, 0.5], n: [0, 0], total: 0, fallback: true },
    { combo: [1, 1, 0], p: [1.0, 0.0], n: [1, 0], total: 1, fallback: false },
    { combo: [1, 1, 1], p: [0.0, 1.0], n: [0, 1], total: 1, fallback: false },
  ],
};

describe("cptTable", () => {
  it("lays out parent combinations as rows with counts in parentheses", () => {
    const table = cptTable(DOC, nameOf);
    expect(table.header[0]).toContain("prosecutorial delay or inability");
    expect(table.header[1]).toBe("political rivalry = 0");
    expect(table.rows).toHaveLength(8);
    expect(table.rows[0]!.comboText).toBe("0, 0, 0");
    expect(table.rows[0]!.cells[0].text).toBe("1.00 (125)");
    expect(table.rows[0]!.cells[1].text).toBe("0.00 (0)");
    expect(table.rows[0]!.totalText).toBe("(125)");
  });

  it("marks the zero-count uniform row as fallback", () => {
    const table = cptTable(DOC, nameOf);
    const fallbackRows = table.rows.filter((r) => r.fallback);
    expect(fallbackRows).toHaveLength(1);
    expect(fallbackRows[0]!.cells[0].text).toBe("0.50 (0)");
    expect(fallbackRows[0]!.cells[1].text).toBe("0.50 (0)");
    expect(fallbackRows[0]!.totalText).toBe("(0)");
  });

  it("renders a parentless node as a single-row prior", () => {
    const doc: CptDoc = {
      node: "N4",
      parents: [],
      rows: [{ combo: [], p: [0.92, 0.08], n: [138, 12], total: 150, fallback: false }],
    };
    const table = cptTable(doc, nameOf);
    expect(table.header[0]).toBe("no causes");
    expect(table.rows).toHaveLength(1);
    expect(table.rows[0]!.comboText).toBe("-");
    expect(table.rows[0]!.cells[1].text).toBe("0.08 (12)");
  });
});
