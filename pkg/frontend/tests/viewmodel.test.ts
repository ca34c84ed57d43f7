import { describe, expect, it } from "vitest";

import { buildFindingsDelta, buildViewModel } from "../src/viewmodel.js";
import { parseSessionState, parseStats } from "../src/validate.js";
import type { SessionState, StatsResponse } from "../src/types.js";
import * as fixtures from "./fixtures.js";

const catalog = parseStats(structuredClone(fixtures.stats)) as StatsResponse;

function state(fixture: unknown): SessionState {
  return parseSessionState(structuredClone(fixture));
}

describe("buildViewModel", () => {
  it("shows priors as point bars on a fresh session", () => {
    const vm = buildViewModel(catalog, state(fixtures.fresh));
    expect(vm.posteriors.every((row) => row.kind === "point")).toBe(true);
    const byId = Object.fromEntries(vm.posteriors.map((r) => [r.id, r]));
    expect(byId.d_a.upper).toBeCloseTo(0.02, 12);
    expect(byId.d_b.upper).toBeCloseTo(0.03, 12);
    // All treatments pruned at prior probabilities: no components.
    expect(vm.treatments.every((t) => t.status === "PRUNED")).toBe(true);
    expect(vm.components).toHaveLength(0);
  });

  it("sorts posteriors by upper bound descending", () => {
    const vm = buildViewModel(catalog, state(fixtures.split));
    const uppers = vm.posteriors.map((r) => r.upper);
    const sorted = [...uppers].sort((a, b) => b - a);
    expect(uppers).toEqual(sorted);
  });

  it("renders interval reports as ranges, not points", () => {
    const vm = buildViewModel(catalog, state(fixtures.interval));
    expect(vm.method).toBe("bounds");
    const intervalRows = vm.posteriors.filter((r) => r.kind === "interval");
    expect(intervalRows.length).toBeGreaterThan(0);
    for (const row of intervalRows) {
      expect(row.lower).toBeLessThanOrEqual(row.upper);
      expect(row.label).toMatch(/^\[\d\.\d{4}, \d\.\d{4}\]$/);
    }
  });

  it("shows each treatment with its upper-vs-threshold justification", () => {
    const vm = buildViewModel(catalog, state(fixtures.split));
    const byId = Object.fromEntries(vm.treatments.map((t) => [t.id, t]));
    expect(byId.t_a.status).toBe("ACTIVE");
    expect(byId.t_p.status).toBe("PRUNED");
    expect(byId.t_r.status).toBe("ACTIVE");
    expect(byId.t_p.decision).toBe(false);
    expect(byId.t_p.source).toBe("PRUNED");
    const just = byId.t_p.justifications[0];
    expect(just.diseaseId).toBe("d_a");
    expect(just.threshold).not.toBeNull();
    expect(just.upper).toBeLessThan(just.threshold!);
    expect(just.belowThreshold).toBe(true);
    expect(just.label).toContain("vs threshold");
    // An active treatment's justification shows upper at or above threshold.
    const active = byId.t_a.justifications[0];
    expect(active.upper).toBeGreaterThanOrEqual(active.threshold!);
  });

  it("draws the two decoupled treatments as separate components", () => {
    const vm = buildViewModel(catalog, state(fixtures.split));
    expect(vm.components).toHaveLength(2);
    const groups = vm.components.map((c) => c.treatments).sort();
    expect(groups).toEqual([["t_a"], ["t_r"]]);
    const subvalueSets = vm.components.map((c) => new Set(c.subvalues));
    for (const [i, a] of subvalueSets.entries()) {
      for (const b of subvalueSets.slice(i + 1)) {
        for (const id of a) expect(b.has(id)).toBe(false);
      }
    }
  });

  it("marks findings panel rows from the server state only", () => {
    const vm = buildViewModel(catalog, state(fixtures.split));
    const marks = Object.fromEntries(vm.findings.map((f) => [f.id, f.mark]));
    expect(marks).toEqual({ m_a: "present", m_b: "present", m_shared: "absent" });
  });

  it("restores an identical view model after mark then unmark", () => {
    const before = buildViewModel(catalog, state(fixtures.interval));
    const during = buildViewModel(catalog, state(fixtures.marked));
    const after = buildViewModel(catalog, state(fixtures.unmarked));
    expect(during).not.toEqual(before);
    expect(after).toEqual(before);
    expect(after.stateHash).toBe(before.stateHash);
  });

  it("carries provenance and state hash through unchanged", () => {
    const raw = state(fixtures.split);
    const vm = buildViewModel(catalog, raw);
    expect(vm.stateHash).toBe(raw.state_hash);
    expect(vm.provenance.kbHash).toBe(raw.provenance.kb_hash);
  });
});

describe("parseSessionState", () => {
  it("rejects malformed payloads wholesale", () => {
    const broken = structuredClone(fixtures.split) as Record<string, unknown>;
    delete broken.recommendation;
    expect(() => parseSessionState(broken)).toThrow(/malformed response/);
    const badPosterior = structuredClone(fixtures.split) as any;
    badPosterior.posteriors.posteriors.d_a = "high";
    expect(() => parseSessionState(badPosterior)).toThrow(/malformed response/);
  });
});

describe("buildFindingsDelta", () => {
  it("builds one-sided deltas only", () => {
    expect(buildFindingsDelta("unobserved", "present", "m_a")).toEqual({
      set_present: ["m_a"],
    });
    expect(buildFindingsDelta("present", "absent", "m_a")).toEqual({
      set_absent: ["m_a"],
    });
    expect(buildFindingsDelta("absent", "unobserved", "m_a")).toEqual({ clear: ["m_a"] });
  });

  it("returns null for a no-op so no request is sent", () => {
    expect(buildFindingsDelta("present", "present", "m_a")).toBeNull();
    expect(buildFindingsDelta("unobserved", "unobserved", "m_a")).toBeNull();
  });

  it("can never mark the same id present and absent at once", () => {
    for (const current of ["present", "absent", "unobserved"] as const) {
      for (const target of ["present", "absent", "unobserved"] as const) {
        const delta = buildFindingsDelta(current, target, "m_a");
        if (delta === null) continue;
        const present = new Set(delta.set_present ?? []);
        const absent = new Set(delta.set_absent ?? []);
        for (const id of present) expect(absent.has(id)).toBe(false);
      }
    }
  });
});
