/** DOM rendering. The view is a pure function of the view model plus the
 * transient what-if overlay; handlers are injected so this file stays free
 * of session logic.
 */

import type { FindingMark } from "./types.js";
import type { TreatmentRow, ViewModel } from "./viewmodel.js";
import { formatProbability } from "./viewmodel.js";

export interface WhatIfOverlay {
  treatmentId: string;
  flippedTo: boolean;
  eu: number;
  delta: number;
  stateHash: string;
}

export interface Handlers {
  onMark(id: string, mark: FindingMark): void;
  onWhatIf(row: TreatmentRow): void;
}

const MARKS: FindingMark[] = ["present", "absent", "unobserved"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderError(root: HTMLElement, message: string): void {
  const banner = el("div", "banner error", message);
  const existing = root.querySelector(".banner.error");
  if (existing) existing.remove();
  root.prepend(banner);
}

export function clearError(root: HTMLElement): void {
  root.querySelectorAll(".banner.error").forEach((n) => n.remove());
}

function renderFindings(vm: ViewModel, handlers: Handlers): HTMLElement {
  const panel = el("section", "panel findings");
  panel.append(el("h2", undefined, "Findings"));
  for (const row of vm.findings) {
    const line = el("div", `finding mark-${row.mark}`);
    line.dataset.id = row.id;
    line.append(el("span", "name", `${row.name} (${row.id})`));
    for (const mark of MARKS) {
      const button = el("button", mark === row.mark ? "mark selected" : "mark", mark);
      button.disabled = mark === row.mark;
      button.addEventListener("click", () => handlers.onMark(row.id, mark));
      line.append(button);
    }
    panel.append(line);
  }
  return panel;
}

function renderPosteriors(vm: ViewModel): HTMLElement {
  const panel = el("section", "panel posteriors");
  panel.append(el("h2", undefined, `Disease posteriors (${vm.method})`));
  for (const row of vm.posteriors) {
    const line = el("div", `posterior ${row.kind}`);
    line.dataset.id = row.id;
    line.append(el("span", "name", `${row.name} (${row.id})`));
    const bar = el("div", "bar");
    const fill = el("div", "fill");
    // Presentation only: percentage positions of server-sent numbers.
    fill.style.left = `${row.lower * 100}%`;
    fill.style.width = `${Math.max(0.5, (row.upper - row.lower) * 100)}%`;
    bar.append(fill);
    line.append(bar);
    line.append(el("span", "value", row.label));
    panel.append(line);
  }
  return panel;
}

function renderTreatments(vm: ViewModel, overlay: WhatIfOverlay | null, handlers: Handlers): HTMLElement {
  const panel = el("section", "panel treatments");
  panel.append(el("h2", undefined, "Treatments"));
  for (const row of vm.treatments) {
    const line = el("div", `treatment status-${row.status.toLowerCase()}`);
    line.dataset.id = row.id;
    const head = el("div", "head");
    head.append(el("span", "name", `${row.name} (${row.id})`));
    head.append(el("span", `badge ${row.status.toLowerCase()}`, row.status));
    head.append(
      el(
        "span",
        "decision",
        `${row.decision ? "give" : "withhold"} · ${row.source}` +
          (row.componentIndex === null ? "" : ` · component ${row.componentIndex}`),
      ),
    );
    const whatIfButton = el("button", "whatif", `what if ${row.decision ? "withheld" : "given"}?`);
    whatIfButton.addEventListener("click", () => handlers.onWhatIf(row));
    head.append(whatIfButton);
    line.append(head);
    for (const j of row.justifications) {
      const gauge = el("div", "gauge");
      gauge.append(el("span", "gauge-label", `${j.diseaseName}: ${j.label}`));
      const bar = el("div", "bar");
      const upper = el("div", "upper-mark");
      upper.style.left = `${j.upper * 100}%`;
      bar.append(upper);
      if (j.threshold !== null) {
        const threshold = el("div", "threshold-mark");
        threshold.style.left = `${j.threshold * 100}%`;
        bar.append(threshold);
      }
      gauge.append(bar);
      line.append(gauge);
    }
    if (overlay && overlay.treatmentId === row.id) {
      line.append(
        el(
          "div",
          "whatif-overlay",
          `if ${overlay.flippedTo ? "given" : "withheld"}: EU ${overlay.eu.toFixed(6)}, ` +
            `delta ${overlay.delta.toExponential(3)} (state hash unchanged: ` +
            `${overlay.stateHash === vm.stateHash})`,
        ),
      );
    }
    panel.append(line);
  }
  return panel;
}

function renderComponents(vm: ViewModel): HTMLElement {
  const panel = el("section", "panel components");
  panel.append(el("h2", undefined, "Case-specific model"));
  if (vm.components.length === 0) {
    panel.append(el("p", "empty", "Everything pruned: no decisions left to solve."));
    return panel;
  }
  const grid = el("div", "component-grid");
  for (const comp of vm.components) {
    const cluster = el("div", "component-cluster");
    cluster.dataset.index = String(comp.index);
    cluster.append(el("h3", undefined, `Component ${comp.index}`));
    cluster.append(el("div", "members", `treatments: ${comp.treatments.join(", ")}`));
    cluster.append(el("div", "members", `diseases: ${comp.diseases.join(", ")}`));
    cluster.append(el("div", "members", `utility factors: ${comp.subvalues.join(", ")}`));
    grid.append(cluster);
  }
  panel.append(grid);
  return panel;
}

export function renderConsult(
  root: HTMLElement,
  vm: ViewModel,
  overlay: WhatIfOverlay | null,
  handlers: Handlers,
): void {
  // Build the whole view before touching the document: a throwing view
  // model must leave the previous render intact.
  const container = el("div", "consult");
  const header = el("header");
  header.append(el("h1", undefined, "Consult"));
  header.append(
    el(
      "div",
      "meta",
      `session ${vm.sessionId} · method ${vm.method} · state ${vm.stateHash.slice(0, 12)}…`,
    ),
  );
  container.append(header);
  const columns = el("div", "columns");
  columns.append(renderFindings(vm, handlers));
  columns.append(renderPosteriors(vm));
  columns.append(renderTreatments(vm, overlay, handlers));
  container.append(columns);
  container.append(renderComponents(vm));

  root.querySelector(".consult")?.remove();
  root.append(container);
}
