import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import {
  errorText,
  evidenceLabel,
  formatDelta,
  formatProbability,
  isCycleRejection,
  isNoSupport,
  isSufficient,
  supportBadge,
  targetClause,
} from "../src/format.js";

describe("formatProbability", () => {
  it("renders two decimals like the service tables", () => {
    expect(formatProbability(1)).toBe("1.00");
    expect(formatProbability(5 / 70)).toBe("0.07");
    expect(formatProbability(65 / 70)).toBe("0.93");
    expect(formatProbability(0)).toBe("0.00");
  });
});

describe("formatDelta", () => {
  it("renders signed integer percents", () => {
    expect(formatDelta(5 / 70)).toBe("+7%");
    expect(formatDelta(-0.59)).toBe("-59%");
  });

  it("collapses sub-half-percent changes to 0%", () => {
    expect(formatDelta(0.004)).toBe("0%");
    expect(formatDelta(-0.0049)).toBe("0%");
  });
});

describe("supportBadge", () => {
  it("pluralizes case counts", () => {
    expect(supportBadge(80)).toBe("80 cases");
    expect(supportBadge(1)).toBe("1 case");
    expect(supportBadge(0)).toBe("0 cases");
  });
});

describe("targetClause", () => {
  it("speaks presence and absence", () => {
    expect(targetClause("property dispute", 0)).toBe("property dispute absent");
    expect(targetClause("riot", 1)).toBe("riot present");
  });
});

describe("isSufficient", () => {
  it("requires an exact 1.00 with at least one prior case", () => {
    expect(isSufficient(1.0, 80)).toBe(true);
    expect(isSufficient(1.0, 0)).toBe(false);
    expect(isSufficient(0.999999, 80)).toBe(false);
  });
});

describe("evidenceLabel", () => {
  it("states polarity in words", () => {
    expect(evidenceLabel("physical assault", 0)).toBe(
      "physical assault: not reported",
    );
    expect(evidenceLabel("riot", 1)).toBe("riot: reported");
  });
});

describe("error helpers", () => {
  it("recognizes cycle rejections by status and code", () => {
    const cycle = new ApiError(409, "cycle", "flipping A->B would create a directed cycle");
    expect(isCycleRejection(cycle)).toBe(true);
    expect(isCycleRejection(new ApiError(404, "unknown_edge", "nope"))).toBe(false);
    expect(isCycleRejection(new Error("boom"))).toBe(false);
  });

  it("recognizes empty-support refusals", () => {
    expect(isNoSupport(new ApiError(400, "no_supporting_cases", "..."))).toBe(true);
    expect(isNoSupport(new ApiError(400, "bad_value", "..."))).toBe(false);
  });

  it("prefers the server's wording", () => {
    const err = new ApiError(409, "cycle", "flipping N8->N9 would create a directed cycle");
    expect(errorText(err)).toContain("would create a directed cycle");
    expect(errorText(new Error("offline"))).toContain("network failure");
    expect(errorText("?")).toBe("network failure");
  });
});
