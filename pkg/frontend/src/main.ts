// DOM wiring for the workbench page. All content comes from service
// responses; this file only moves it into the document.

import { ApiClient } from "./api.js";
import { diffRows, diffSummary } from "./diff.js";
import { layoutModel, renderSvg } from "./graph.js";
import { Workbench, WorkbenchState } from "./workbench.js";
import type { Candidate, ModelGraph } from "./types.js";

const SAMPLE = `theory coffee
atoms token, coffee, hot
actions buy

static coffee -> hot
effect ~coffee => [buy] coffee
effect token => [buy] ~token
effect ~token => [buy] false
effect coffee => [buy] coffee
effect hot => [buy] hot
exec token => <buy>
`;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function graphHtml(graph: ModelGraph | null): string {
  if (!graph) return "";
  const svg = renderSvg(layoutModel(graph.model));
  return `<figure><figcaption>${graph.kind} model</figcaption>${svg}</figure>`;
}

function candidateCard(
  cand: Candidate,
  base: ModelGraph | null,
  onSelect: (id: string) => void,
): HTMLElement {
  const card = document.createElement("article");
  card.className = "candidate";
  const rows = diffRows(cand.diff)
    .map((row) => {
      const before = row.before
        ? `<div class="law before">${row.before}</div>`
        : "";
      return `${before}<div class="law ${row.status}">${row.text}</div>`;
    })
    .join("");
  const provenance: string[] = [];
  if (cand.provenance.context)
    provenance.push(`excluded context: <code>${cand.provenance.context}</code>`);
  if (cand.provenance.piPrime)
    provenance.push(`escape implicant: <code>${cand.provenance.piPrime}</code>`);
  if (cand.provenance.kernels)
    provenance.push(
      `kernels: ${cand.provenance.kernels
        .map((k) => `<code>{${k.join("; ")}}</code>`)
        .join(" ")}`,
    );
  if (cand.provenance.note) provenance.push(cand.provenance.note);
  card.innerHTML = `
    <header><h3>${cand.id}</h3><span>${diffSummary(cand.diff)}</span></header>
    <div class="diff">${rows}</div>
    <div class="provenance">${provenance.join("<br>")}</div>
    <div class="graphs side-by-side">
      ${graphHtml(base)}
      ${graphHtml(cand.modelGraph)}
    </div>
  `;
  const button = document.createElement("button");
  button.textContent = `adopt ${cand.id}`;
  button.addEventListener("click", () => onSelect(cand.id));
  card.appendChild(button);
  return card;
}

function render(state: WorkbenchState, bench: Workbench): void {
  const error = el<HTMLDivElement>("error");
  error.textContent = state.error ?? "";
  error.hidden = !state.error;

  const timeline = el<HTMLOListElement>("timeline");
  timeline.innerHTML = "";
  for (const entry of state.timeline) {
    const item = document.createElement("li");
    item.textContent = `${entry.kind} ${entry.law} -> ${entry.selected}`;
    timeline.appendChild(item);
  }
  el<HTMLButtonElement>("undo").disabled = !bench.canUndo();

  el<HTMLDivElement>("model").innerHTML = graphHtml(state.model);

  const cards = el<HTMLDivElement>("candidates");
  cards.innerHTML = "";
  if (state.staleCandidates) {
    const note = document.createElement("p");
    note.className = "stale";
    note.textContent = "candidates are stale; request the change again";
    cards.appendChild(note);
  }
  for (const cand of state.pendingCandidates) {
    cards.appendChild(
      candidateCard(cand, state.baseModel, (id) => bench.selectCandidate(id)),
    );
  }
}

export function boot(): void {
  const api = new ApiClient("");
  const bench: Workbench = new Workbench(api, (state) => render(state, bench));

  const editor = el<HTMLTextAreaElement>("editor");
  editor.value = SAMPLE;
  el<HTMLButtonElement>("load").addEventListener("click", () => {
    void bench.loadTheory(editor.value);
  });
  const lawInput = el<HTMLInputElement>("law");
  el<HTMLButtonElement>("contract").addEventListener("click", () => {
    void bench.requestChange("contract", lawInput.value);
  });
  el<HTMLButtonElement>("revise").addEventListener("click", () => {
    void bench.requestChange("revise", lawInput.value);
  });
  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    void bench.undo();
  });
}

if (typeof document !== "undefined" && document.getElementById("editor")) {
  boot();
}
