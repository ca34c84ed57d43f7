/** Dashboard wiring: session lifecycle, input handling, error rollback.
 *
 * Mutations are serialized client-side (one in flight); the rendered view
 * always reflects the last state the server confirmed, so errors roll back
 * by re-rendering that state. What-if queries are read-only and may fire
 * while idle without touching session state.
 */

import { ApiError, ConsultApi } from "./api.js";
import { renderConsult, renderError, clearError } from "./render.js";
import type { WhatIfOverlay } from "./render.js";
import type { FindingMark, SessionState, StatsResponse } from "./types.js";
import { buildFindingsDelta, buildViewModel } from "./viewmodel.js";
import type { TreatmentRow } from "./viewmodel.js";

const BASE_URL =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";

class Dashboard {
  private state: SessionState | null = null;
  private overlay: WhatIfOverlay | null = null;
  private mutationInFlight = false;

  constructor(
    private readonly api: ConsultApi,
    private readonly catalog: StatsResponse,
    private readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    this.state = await this.api.createSession();
    this.redraw();
  }

  private redraw(): void {
    if (!this.state) return;
    const vm = buildViewModel(this.catalog, this.state);
    renderConsult(this.root, vm, this.overlay, {
      onMark: (id, mark) => void this.mark(id, mark),
      onWhatIf: (row) => void this.whatIf(row),
    });
  }

  private currentMark(id: string): FindingMark {
    if (!this.state) return "unobserved";
    if (this.state.findings.present.includes(id)) return "present";
    if (this.state.findings.absent.includes(id)) return "absent";
    return "unobserved";
  }

  private async mark(id: string, mark: FindingMark): Promise<void> {
    if (!this.state || this.mutationInFlight) return;
    const delta = buildFindingsDelta(this.currentMark(id), mark, id);
    if (delta === null) return; // no-op or conflicting double-mark: no request
    this.mutationInFlight = true;
    try {
      const next = await this.api.postFindings(this.state.id, delta);
      this.state = next;
      this.overlay = null;
      clearError(this.root);
      this.redraw();
    } catch (err) {
      this.showError(err);
      this.redraw(); // roll back to the last confirmed state
    } finally {
      this.mutationInFlight = false;
    }
  }

  private async whatIf(row: TreatmentRow): Promise<void> {
    if (!this.state) return;
    try {
      const flipped = !row.decision;
      const result = await this.api.whatIf(this.state.id, { [row.id]: flipped });
      this.overlay = {
        treatmentId: row.id,
        flippedTo: flipped,
        eu: result.eu,
        delta: result.delta_vs_recommended,
        stateHash: result.state_hash,
      };
      this.redraw();
    } catch (err) {
      this.showError(err);
    }
  }

  private showError(err: unknown): void {
    const message =
      err instanceof ApiError
        ? `${err.code}: ${err.message}`
        : err instanceof Error
          ? err.message
          : String(err);
    renderError(this.root, message);
  }
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const api = new ConsultApi(BASE_URL);
  try {
    const catalog = await api.stats();
    const dashboard = new Dashboard(api, catalog, root);
    await dashboard.start();
  } catch (err) {
    renderError(root, err instanceof Error ? err.message : String(err));
  }
}

void boot();
