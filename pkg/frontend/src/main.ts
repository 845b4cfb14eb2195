import { ApiClient } from "./api.js";
import { cptTable } from "./cpt.js";
import {
  errorText,
  evidenceLabel,
  isCycleRejection,
  isNoSupport,
  supportBadge,
} from "./format.js";
import { layeredLayout } from "./layout.js";
import type { EdgeAction, GraphDoc } from "./types.js";
import {
  buildDisplay,
  cycleToggle,
  initialState,
  queryEvidence,
  setTarget,
  type WhatIfState,
} from "./whatif.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const api = new ApiClient();

interface AppState {
  sessionId: string | null;
  graph: GraphDoc | null;
  whatIf: WhatIfState;
  cptNode: string | null;
  selectedEdge: [string, string] | null;
}

const app: AppState = {
  sessionId: null,
  graph: null,
  whatIf: initialState(),
  cptNode: null,
  selectedEdge: null,
};

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

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function nameOf(id: string): string {
  const node = app.graph?.nodes.find((n) => n.id === id);
  return node?.name || id;
}

function setBanner(message: string | null, retry?: () => void) {
  const banner = byId("banner");
  banner.replaceChildren();
  if (!message) {
    banner.hidden = true;
    return;
  }
  banner.hidden = false;
  banner.append(el("span", "", message));
  if (retry) {
    const button = el("button", "", "retry");
    button.addEventListener("click", () => retry());
    banner.append(button);
  }
}

function renderGraph() {
  const pane = byId("graph");
  pane.replaceChildren();
  const graph = app.graph;
  if (!graph) return;
  const layout = layeredLayout(
    graph.nodes.map((n) => n.id),
    graph.edges.map((e) => [e.from, e.to]),
  );
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${layout.width + 120} ${layout.height + 30}`);

  const defs = document.createElementNS(SVG_NS, "defs");
  const marker = document.createElementNS(SVG_NS, "marker");
  marker.setAttribute("id", "arrow");
  marker.setAttribute("viewBox", "0 0 10 10");
  marker.setAttribute("refX", "22");
  marker.setAttribute("refY", "5");
  marker.setAttribute("markerWidth", "7");
  marker.setAttribute("markerHeight", "7");
  marker.setAttribute("orient", "auto-start-reverse");
  const tip = document.createElementNS(SVG_NS, "path");
  tip.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
  marker.append(tip);
  defs.append(marker);
  svg.append(defs);

  for (const edge of graph.edges) {
    const from = layout.positions.get(edge.from);
    const to = layout.positions.get(edge.to);
    if (!from || !to) continue;
    const group = document.createElementNS(SVG_NS, "g");
    group.classList.add("edge");
    const selected =
      app.selectedEdge?.[0] === edge.from && app.selectedEdge?.[1] === edge.to;
    if (selected) group.classList.add("selected");
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(from.x));
    line.setAttribute("y1", String(from.y));
    line.setAttribute("x2", String(to.x));
    line.setAttribute("y2", String(to.y));
    line.setAttribute("marker-end", "url(#arrow)");
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String((from.x + to.x) / 2));
    label.setAttribute("y", String((from.y + to.y) / 2 - 6));
    label.textContent = String(edge.weight);
    group.append(line, label);
    group.addEventListener("click", () => {
      app.selectedEdge = [edge.from, edge.to];
      renderGraph();
      renderEdgeControls();
    });
    svg.append(group);
  }

  for (const node of graph.nodes) {
    const point = layout.positions.get(node.id);
    if (!point) continue;
    const group = document.createElementNS(SVG_NS, "g");
    group.classList.add("node");
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(point.x));
    circle.setAttribute("cy", String(point.y));
    circle.setAttribute("r", "16");
    const idText = document.createElementNS(SVG_NS, "text");
    idText.setAttribute("x", String(point.x));
    idText.setAttribute("y", String(point.y + 4));
    idText.classList.add("node-id");
    idText.textContent = node.id;
    const nameText = document.createElementNS(SVG_NS, "text");
    nameText.setAttribute("x", String(point.x));
    nameText.setAttribute("y", String(point.y + 32));
    nameText.classList.add("node-name");
    nameText.textContent = node.name;
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.id}: ${node.name}`;
    group.append(circle, idText, nameText, title);
    svg.append(group);
  }
  pane.append(svg);
}

function renderEdgeControls(message?: string, isError = false) {
  const box = byId("edge-controls");
  box.replaceChildren();
  const edge = app.selectedEdge;
  if (!edge) {
    box.append(el("p", "hint", "Click an edge to review it."));
    return;
  }
  const [from, to] = edge;
  box.append(
    el("p", "", `${nameOf(from)} (${from}) → ${nameOf(to)} (${to})`),
  );
  const actions: EdgeAction[] = ["accept", "reject", "flip"];
  const row = el("div", "actions");
  for (const action of actions) {
    const button = el("button", "", action);
    button.addEventListener("click", () => void applyEdit(action, from, to));
    row.append(button);
  }
  box.append(row);
  if (message) box.append(el("p", isError ? "error" : "ok", message));
}

async function applyEdit(action: EdgeAction, from: string, to: string) {
  if (!app.sessionId) return;
  try {
    const response = await api.editEdge(app.sessionId, action, from, to);
    if (app.graph) app.graph = { ...app.graph, edges: response.graph.edges };
    if (action === "flip") app.selectedEdge = [to, from];
    if (action === "reject") app.selectedEdge = null;
    renderGraph();
    const changed = response.changed.map((c) => c.node).join(", ");
    renderEdgeControls(
      changed ? `applied ${action}; refit: ${changed}` : `recorded ${action}`,
    );
    await Promise.all([refreshWhatIf(), refreshCpt()]);
  } catch (error) {
    if (isCycleRejection(error)) {
      renderEdgeControls(`rejected: ${errorText(error)}`, true);
    } else {
      renderEdgeControls(errorText(error), true);
    }
  }
}

function renderWhatIfControls() {
  const graph = app.graph;
  if (!graph) return;
  const targetSelect = byId("target-select") as HTMLSelectElement;
  targetSelect.replaceChildren();
  targetSelect.append(el("option", "", "choose a target"));
  for (const node of graph.nodes) {
    const option = el("option", "", `${node.id}: ${node.name}`);
    option.setAttribute("value", node.id);
    targetSelect.append(option);
  }
  targetSelect.addEventListener("change", () => {
    const value = targetSelect.value || null;
    const radio = document.querySelector<HTMLInputElement>(
      'input[name="target-value"]:checked',
    );
    app.whatIf = setTarget(
      app.whatIf,
      value,
      radio && radio.value === "0" ? 0 : 1,
    );
    void refreshWhatIf();
    renderToggles();
  });
  for (const radio of document.querySelectorAll<HTMLInputElement>(
    'input[name="target-value"]',
  )) {
    radio.addEventListener("change", () => {
      app.whatIf = setTarget(
        app.whatIf,
        app.whatIf.target,
        radio.value === "0" ? 0 : 1,
      );
      void refreshWhatIf();
    });
  }
  renderToggles();
}

function renderToggles() {
  const graph = app.graph;
  if (!graph) return;
  const list = byId("toggles");
  list.replaceChildren();
  for (const node of graph.nodes) {
    if (node.id === app.whatIf.target) continue;
    const state = app.whatIf.evidence[node.id] ?? null;
    const item = el("li");
    const button = el(
      "button",
      state === null ? "toggle" : "toggle set",
      state === null ? `${node.name}: unset` : evidenceLabel(node.name, state),
    );
    button.addEventListener("click", () => {
      app.whatIf = cycleToggle(app.whatIf, node.id);
      renderToggles();
      void refreshWhatIf();
    });
    item.append(button);
    list.append(item);
  }
}

async function refreshWhatIf() {
  const readout = byId("whatif-readout");
  const target = app.whatIf.target;
  if (!target) {
    readout.replaceChildren(el("p", "hint", "Pick a target concept."));
    return;
  }
  const evidence = queryEvidence(app.whatIf);
  try {
    const [response, baseline] = await Promise.all([
      api.query(evidence, target, app.sessionId ?? undefined),
      api.query({}, target, app.sessionId ?? undefined),
    ]);
    const display = buildDisplay(
      nameOf(target),
      app.whatIf.targetValue,
      response,
      baseline,
    );
    readout.replaceChildren();
    const headline = el("p", "headline", display.headline);
    readout.append(headline);
    const badge = el(
      "span",
      display.sufficient ? "badge sufficient" : "badge",
      display.sufficient ? `sufficient (${display.badge})` : display.badge,
    );
    readout.append(badge);
    readout.append(el("p", "delta", display.deltaText));
    await refreshArguments(target);
  } catch (error) {
    if (isNoSupport(error)) {
      readout.replaceChildren(el("p", "error", "no prior case matches"));
    } else {
      readout.replaceChildren(el("p", "error", errorText(error)));
    }
  }
}

async function refreshArguments(target: string) {
  const list = byId("arguments");
  try {
    const response = await api.arguments(
      `${target}=${app.whatIf.targetValue}`,
      2,
      app.sessionId ?? undefined,
    );
    list.replaceChildren();
    for (const report of response.reports.slice(0, 5)) {
      const item = el("li", report.sufficient ? "sufficient" : "");
      item.append(el("span", "", report.narrative));
      item.append(el("span", "badge", supportBadge(report.supporting_total)));
      list.append(item);
    }
  } catch {
    list.replaceChildren();
  }
}

function renderCptControls() {
  const graph = app.graph;
  if (!graph) return;
  const select = byId("cpt-select") as HTMLSelectElement;
  select.replaceChildren();
  select.append(el("option", "", "choose a concept"));
  for (const node of graph.nodes) {
    const option = el("option", "", `${node.id}: ${node.name}`);
    option.setAttribute("value", node.id);
    select.append(option);
  }
  select.addEventListener("change", () => {
    app.cptNode = select.value || null;
    void refreshCpt();
  });
}

async function refreshCpt() {
  const pane = byId("cpt-table");
  if (!app.cptNode) {
    pane.replaceChildren(el("p", "hint", "Pick a concept to inspect its table."));
    return;
  }
  try {
    const doc = await api.cpt(app.cptNode, app.sessionId ?? undefined);
    const model = cptTable(doc, nameOf);
    const table = el("table");
    const head = el("tr");
    for (const column of model.header) head.append(el("th", "", column));
    table.append(head);
    for (const row of model.rows) {
      const tr = el("tr", row.fallback ? "fallback" : "");
      tr.append(el("td", "combo", row.comboText));
      tr.append(el("td", "", row.cells[0].text));
      tr.append(el("td", "", row.cells[1].text));
      tr.append(el("td", "total", row.totalText));
      if (row.fallback) tr.title = "no prior cases: uniform fallback";
      table.append(tr);
    }
    pane.replaceChildren(table);
  } catch (error) {
    pane.replaceChildren(el("p", "error", errorText(error)));
  }
}

async function boot() {
  try {
    app.graph = await api.graph();
    const session = await api.createSession();
    app.sessionId = session.session_id;
    setBanner(null);
    renderGraph();
    renderEdgeControls();
    renderWhatIfControls();
    renderCptControls();
    await refreshWhatIf();
    await refreshCpt();
  } catch (error) {
    setBanner(errorText(error), () => void boot());
  }
}

void boot();
