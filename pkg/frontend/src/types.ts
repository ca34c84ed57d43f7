/** Wire types for the consult service API. */

export type PosteriorEntry = number | [number, number];

export interface PosteriorReportWire {
  method: string;
  budget_used: number;
  op_count: number;
  posteriors: Record<string, PosteriorEntry>;
  evidence_likelihood?: number;
  outer_terms?: number;
  all_weights_zero?: boolean;
}

export interface PairJustificationWire {
  disease: string;
  upper: number;
  /** null means the pair can never warrant the treatment. */
  threshold: number | null;
}

export interface PruneDecisionWire {
  treatment: string;
  status: "ACTIVE" | "CLAMPED_FALSE";
  justification: PairJustificationWire[];
}

export interface ComponentWire {
  treatments: string[];
  subvalues: string[];
  diseases: string[];
}

export interface ReducedModelWire {
  active_treatments: string[];
  active_subvalues: string[];
  retained_diseases: string[];
  components: ComponentWire[];
  provenance: ProvenanceWire;
}

export interface ProvenanceWire {
  kb_hash: string;
  findings_hash?: string | null;
  thresholds_hash?: string;
  method: string | null;
  budget: number | null;
}

export interface TreatmentDecisionWire {
  decision: boolean;
  source: "PRUNED" | "SOLVED";
  component: number | null;
}

export interface RecommendationWire {
  decisions: Record<string, TreatmentDecisionWire>;
  eu_by_component: number[];
  op_count: number;
}

export interface FindingsWire {
  present: string[];
  absent: string[];
}

export interface SessionState {
  id: string;
  policy: Record<string, unknown>;
  findings: FindingsWire;
  posteriors: PosteriorReportWire;
  prune: PruneDecisionWire[];
  reduced: ReducedModelWire;
  recommendation: RecommendationWire;
  provenance: ProvenanceWire;
  state_hash: string;
}

export interface NamedEntry {
  id: string;
  name: string;
}

export interface TreatmentCatalogEntry extends NamedEntry {
  treats: string[];
}

export interface StatsResponse {
  stats: Record<string, number>;
  kb_hash: string;
  catalog: {
    diseases: NamedEntry[];
    manifestations: NamedEntry[];
    treatments: TreatmentCatalogEntry[];
  };
}

export interface WhatIfResponse {
  assignment: Record<string, boolean>;
  eu: number;
  delta_vs_recommended: number;
  state_hash: string;
}

export interface FindingsDelta {
  set_present?: string[];
  set_absent?: string[];
  clear?: string[];
}

export type FindingMark = "present" | "absent" | "unobserved";
