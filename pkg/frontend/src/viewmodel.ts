/** Pure view-model construction from the latest server state.
 *
 * Every number shown in the UI is taken verbatim from the response; the
 * only transformations here are sorting, labeling, and formatting.
 */

import type {
  FindingMark,
  FindingsDelta,
  SessionState,
  StatsResponse,
} from "./types.js";

export interface FindingRow {
  id: string;
  name: string;
  mark: FindingMark;
}

export interface PosteriorRow {
  id: string;
  name: string;
  kind: "point" | "interval";
  lower: number;
  upper: number;
  label: string;
}

export interface JustificationRow {
  diseaseId: string;
  diseaseName: string;
  upper: number;
  /** null renders as "never warranted". */
  threshold: number | null;
  belowThreshold: boolean;
  label: string;
}

export interface TreatmentRow {
  id: string;
  name: string;
  status: "ACTIVE" | "PRUNED";
  decision: boolean;
  source: "PRUNED" | "SOLVED";
  componentIndex: number | null;
  justifications: JustificationRow[];
}

export interface ComponentCluster {
  index: number;
  treatments: string[];
  diseases: string[];
  subvalues: string[];
}

export interface ViewModel {
  sessionId: string;
  stateHash: string;
  method: string;
  provenance: { kbHash: string; thresholdsHash: string; budget: number | null };
  findings: FindingRow[];
  posteriors: PosteriorRow[];
  treatments: TreatmentRow[];
  components: ComponentCluster[];
}

export function formatProbability(p: number): string {
  return p.toFixed(4);
}

function posteriorBounds(entry: number | [number, number]): [number, number, "point" | "interval"] {
  if (Array.isArray(entry)) return [entry[0], entry[1], "interval"];
  return [entry, entry, "point"];
}

export function buildViewModel(catalog: StatsResponse, state: SessionState): ViewModel {
  const diseaseNames = new Map(catalog.catalog.diseases.map((d) => [d.id, d.name]));
  const treatmentNames = new Map(catalog.catalog.treatments.map((t) => [t.id, t.name]));

  const present = new Set(state.findings.present);
  const absent = new Set(state.findings.absent);
  const findings: FindingRow[] = catalog.catalog.manifestations.map((m) => ({
    id: m.id,
    name: m.name,
    mark: present.has(m.id) ? "present" : absent.has(m.id) ? "absent" : "unobserved",
  }));

  const posteriors: PosteriorRow[] = Object.entries(state.posteriors.posteriors).map(
    ([id, entry]) => {
      const [lower, upper, kind] = posteriorBounds(entry);
      return {
        id,
        name: diseaseNames.get(id) ?? id,
        kind,
        lower,
        upper,
        label:
          kind === "point"
            ? formatProbability(upper)
            : `[${formatProbability(lower)}, ${formatProbability(upper)}]`,
      };
    },
  );
  // Triage order: posterior upper bound, descending; id breaks ties.
  posteriors.sort((a, b) => b.upper - a.upper || (a.id < b.id ? -1 : 1));

  const treatments: TreatmentRow[] = state.prune.map((decision) => {
    const rec = state.recommendation.decisions[decision.treatment];
    if (!rec) {
      throw new Error(`malformed response: no recommendation for ${decision.treatment}`);
    }
    return {
      id: decision.treatment,
      name: treatmentNames.get(decision.treatment) ?? decision.treatment,
      status: decision.status === "ACTIVE" ? "ACTIVE" : "PRUNED",
      decision: rec.decision,
      source: rec.source,
      componentIndex: rec.component,
      justifications: decision.justification.map((j) => ({
        diseaseId: j.disease,
        diseaseName: diseaseNames.get(j.disease) ?? j.disease,
        upper: j.upper,
        threshold: j.threshold,
        belowThreshold: j.threshold === null || j.upper < j.threshold,
        label:
          j.threshold === null
            ? `upper ${formatProbability(j.upper)} / never warranted`
            : `upper ${formatProbability(j.upper)} vs threshold ${formatProbability(j.threshold)}`,
      })),
    };
  });
  treatments.sort((a, b) => (a.id < b.id ? -1 : 1));

  const components: ComponentCluster[] = state.reduced.components.map((c, index) => ({
    index,
    treatments: [...c.treatments],
    diseases: [...c.diseases],
    subvalues: [...c.subvalues],
  }));

  return {
    sessionId: state.id,
    stateHash: state.state_hash,
    method: state.posteriors.method,
    provenance: {
      kbHash: state.provenance.kb_hash,
      thresholdsHash: state.provenance.thresholds_hash ?? "",
      budget: state.provenance.budget,
    },
    findings,
    posteriors,
    treatments,
    components,
  };
}

/** The delta a mark change should send, or null when it is a no-op.
 *
 * Built so a single request can never mark the same id present and absent
 * at once; re-selecting the current mark sends nothing.
 */
export function buildFindingsDelta(
  current: FindingMark,
  target: FindingMark,
  id: string,
): FindingsDelta | null {
  if (current === target) return null;
  if (target === "present") return { set_present: [id] };
  if (target === "absent") return { set_absent: [id] };
  return { clear: [id] };
}
