/** Structural validation of service responses.
 *
 * A malformed payload must surface as one error banner, never a partial
 * render, so every field the view depends on is checked here before the
 * view model is built.
 */

import type { SessionState, StatsResponse, WhatIfResponse } from "./types.js";

class Malformed extends Error {
  constructor(path: string, expected: string) {
    super(`malformed response: ${path} should be ${expected}`);
  }
}

function isRecord(v: unknown): v is Record<string, unknown> {
  return typeof v === "object" && v !== null && !Array.isArray(v);
}

function need(cond: boolean, path: string, expected: string): asserts cond {
  if (!cond) throw new Malformed(path, expected);
}

function needStringArray(v: unknown, path: string): string[] {
  need(Array.isArray(v) && v.every((x) => typeof x === "string"), path, "string[]");
  return v as string[];
}

function needNumber(v: unknown, path: string): number {
  need(typeof v === "number" && Number.isFinite(v), path, "finite number");
  return v;
}

export function parseSessionState(data: unknown): SessionState {
  need(isRecord(data), "$", "object");
  need(typeof data.id === "string", "$.id", "string");
  need(typeof data.state_hash === "string", "$.state_hash", "string");

  need(isRecord(data.findings), "$.findings", "object");
  needStringArray(data.findings.present, "$.findings.present");
  needStringArray(data.findings.absent, "$.findings.absent");

  need(isRecord(data.posteriors), "$.posteriors", "object");
  need(isRecord(data.posteriors.posteriors), "$.posteriors.posteriors", "object");
  for (const [id, entry] of Object.entries(data.posteriors.posteriors)) {
    if (Array.isArray(entry)) {
      need(entry.length === 2, `$.posteriors.posteriors.${id}`, "[lower, upper]");
      needNumber(entry[0], `$.posteriors.posteriors.${id}[0]`);
      needNumber(entry[1], `$.posteriors.posteriors.${id}[1]`);
    } else {
      needNumber(entry, `$.posteriors.posteriors.${id}`);
    }
  }

  need(Array.isArray(data.prune), "$.prune", "array");
  for (const [i, d] of data.prune.entries()) {
    need(isRecord(d), `$.prune[${i}]`, "object");
    need(typeof d.treatment === "string", `$.prune[${i}].treatment`, "string");
    need(
      d.status === "ACTIVE" || d.status === "CLAMPED_FALSE",
      `$.prune[${i}].status`,
      "ACTIVE | CLAMPED_FALSE",
    );
    need(Array.isArray(d.justification), `$.prune[${i}].justification`, "array");
    for (const [j, just] of d.justification.entries()) {
      need(isRecord(just), `$.prune[${i}].justification[${j}]`, "object");
      need(typeof just.disease === "string", `$.prune[${i}].justification[${j}].disease`, "string");
      needNumber(just.upper, `$.prune[${i}].justification[${j}].upper`);
      need(
        just.threshold === null || typeof just.threshold === "number",
        `$.prune[${i}].justification[${j}].threshold`,
        "number | null",
      );
    }
  }

  need(isRecord(data.reduced), "$.reduced", "object");
  needStringArray(data.reduced.active_treatments, "$.reduced.active_treatments");
  need(Array.isArray(data.reduced.components), "$.reduced.components", "array");
  for (const [i, comp] of data.reduced.components.entries()) {
    need(isRecord(comp), `$.reduced.components[${i}]`, "object");
    needStringArray(comp.treatments, `$.reduced.components[${i}].treatments`);
    needStringArray(comp.diseases, `$.reduced.components[${i}].diseases`);
    needStringArray(comp.subvalues, `$.reduced.components[${i}].subvalues`);
  }

  need(isRecord(data.recommendation), "$.recommendation", "object");
  need(isRecord(data.recommendation.decisions), "$.recommendation.decisions", "object");
  for (const [tid, dec] of Object.entries(data.recommendation.decisions)) {
    need(isRecord(dec), `$.recommendation.decisions.${tid}`, "object");
    need(typeof dec.decision === "boolean", `$.recommendation.decisions.${tid}.decision`, "boolean");
    need(
      dec.source === "PRUNED" || dec.source === "SOLVED",
      `$.recommendation.decisions.${tid}.source`,
      "PRUNED | SOLVED",
    );
  }

  need(isRecord(data.provenance), "$.provenance", "object");
  return data as unknown as SessionState;
}

export function parseStats(data: unknown): StatsResponse {
  need(isRecord(data), "$", "object");
  need(typeof data.kb_hash === "string", "$.kb_hash", "string");
  need(isRecord(data.catalog), "$.catalog", "object");
  for (const kind of ["diseases", "manifestations", "treatments"] as const) {
    const items = data.catalog[kind];
    need(Array.isArray(items), `$.catalog.${kind}`, "array");
    for (const [i, item] of items.entries()) {
      need(isRecord(item), `$.catalog.${kind}[${i}]`, "object");
      need(typeof item.id === "string", `$.catalog.${kind}[${i}].id`, "string");
      need(typeof item.name === "string", `$.catalog.${kind}[${i}].name`, "string");
    }
  }
  return data as unknown as StatsResponse;
}

export function parseWhatIf(data: unknown): WhatIfResponse {
  need(isRecord(data), "$", "object");
  needNumber(data.eu, "$.eu");
  needNumber(data.delta_vs_recommended, "$.delta_vs_recommended");
  need(typeof data.state_hash === "string", "$.state_hash", "string");
  need(isRecord(data.assignment), "$.assignment", "object");
  return data as unknown as WhatIfResponse;
}
