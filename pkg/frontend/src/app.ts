import { ApiClient, ApiError } from "./api.js";
import { renderSpecToSvg } from "./chart.js";
import { semanticMapSvg } from "./map.js";
import { buildMenu, totalOperations, type MenuSection } from "./menu.js";
import {
  applyMutation,
  initialState,
  selectView,
  setBusy,
  type AppState,
} from "./state.js";
import type { MutationResponse, OperationsPayload } from "./types.js";

const api = new ApiClient();
let state: AppState | null = null;
let menuPayload: OperationsPayload | null = null;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function toast(message: string): void {
  const node = el("div", "toast", message);
  document.body.appendChild(node);
  setTimeout(() => node.remove(), 4000);
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    if (error.status === 409) return "operation outdated — refresh";
    return error.detail;
  }
  return String(error);
}

async function refresh(): Promise<void> {
  const canvas = await api.canvas();
  const viewIds = canvas.views.map((v) => v.id);
  state = initialState(await api.snapshot(viewIds));
  menuPayload = null;
  draw();
}

async function mutate(action: () => Promise<MutationResponse>):
    Promise<void> {
  if (!state || state.busy) return;
  state = setBusy(state, true);
  draw();
  try {
    const response = await action();
    const [render, position] = await Promise.all([
      api.render(), api.position(),
    ]);
    state = applyMutation(state, response, render, position);
    menuPayload = null;
  } catch (error) {
    state = setBusy(state, false);
    toast(describeError(error));
  }
  draw();
}

async function onSelectView(viewId: string): Promise<void> {
  if (!state) return;
  state = selectView(state, viewId);
  try {
    menuPayload = await api.operations(viewId);
  } catch (error) {
    menuPayload = null;
    toast(describeError(error));
  }
  draw();
}

function onTileClick(planId: string, question: string | null): void {
  if (!menuPayload) return;
  const plan = menuPayload.plans.find((p) => p.id === planId);
  if (!plan) return;
  const confirmations: Record<string, "same" | "different"> = {};
  if (question && plan.requiredConfirmations.length > 0) {
    const yes = window.confirm(question);
    for (const [a, b] of plan.requiredConfirmations) {
      confirmations[`${a}=${b}`] = yes ? "same" : "different";
    }
  }
  void mutate(() => api.apply(planId, confirmations));
}

function drawGrid(root: HTMLElement): void {
  if (!state) return;
  const grid = el("div", "canvas-grid");
  const relationViews = new Set(
    state.relations.entries.flatMap((entry) => entry.viewIds));
  for (const { spec, cell } of state.render.views) {
    const tile = el("div", "view-tile");
    tile.style.gridRow = `${cell.row + 1} / span ${cell.rowSpan}`;
    tile.style.gridColumn = `${cell.col + 1} / span ${cell.colSpan}`;
    if (state.selectedViewId === spec.viewId) tile.classList.add("selected");
    tile.innerHTML = renderSpecToSvg(spec);
    const caption = el("div", "view-caption", spec.viewId);
    if (relationViews.has(spec.viewId)) {
      caption.appendChild(el("span", "badge", "!"));
    }
    tile.appendChild(caption);
    tile.addEventListener("click", () => void onSelectView(spec.viewId));
    grid.appendChild(tile);
  }
  root.appendChild(grid);
}

function drawMenu(root: HTMLElement): void {
  if (!state || !state.selectedViewId) return;
  const panel = el("div", "menu-panel");
  panel.appendChild(el("h2", "", `Operations: ${state.selectedViewId}`));
  if (!menuPayload || menuPayload.plans.length === 0) {
    panel.appendChild(el("p", "menu-empty",
      "No operations available for this view."));
    root.appendChild(panel);
    return;
  }
  for (const section of buildMenu(menuPayload)) {
    panel.appendChild(drawSection(section));
  }
  root.appendChild(panel);
}

function drawSection(section: MenuSection): HTMLElement {
  const block = el("div", "menu-section");
  block.appendChild(el("h3", "menu-header",
    `${section.label} (${section.count})`));
  for (const tile of section.tiles) {
    const button = el("button", "operation-tile", tile.description);
    button.disabled = state?.busy ?? false;
    button.addEventListener("click",
      () => onTileClick(tile.planId, tile.question));
    block.appendChild(button);
  }
  return block;
}

function drawBar(root: HTMLElement): void {
  if (!state) return;
  const bar = el("div", "control-bar");
  if (state.pending) {
    const keepButton = el("button", "keep", "Keep");
    keepButton.disabled = state.busy;
    keepButton.addEventListener("click", () => void mutate(() => api.keep()));
    const undoButton = el("button", "undo", "Undo");
    undoButton.disabled = state.busy;
    undoButton.addEventListener("click", () => void mutate(() => api.undo()));
    bar.append(el("span", "pending-note", "Preview — keep or undo:"),
      keepButton, undoButton);
  }
  const relations = el("div", "relation-list");
  for (const entry of state.relations.entries) {
    const line = el("div", `relation ${entry.conditional ? "conditional" : ""}`,
      `${entry.code} [${entry.viewIds.join(", ")}] ${entry.message}`);
    relations.appendChild(line);
  }
  bar.appendChild(relations);
  root.appendChild(bar);
}

function drawMap(root: HTMLElement): void {
  if (!state) return;
  const box = el("div", "map-box");
  box.innerHTML = semanticMapSvg(state.position);
  root.appendChild(box);
}

function draw(): void {
  const root = document.getElementById("app");
  if (!root || !state) return;
  root.textContent = "";
  const main = el("div", "layout");
  const left = el("div", "left");
  drawGrid(left);
  drawBar(left);
  const right = el("div", "right");
  drawMap(right);
  drawMenu(right);
  main.append(left, right);
  root.appendChild(main);
}

void refresh().catch((error) => toast(describeError(error)));

export { onSelectView, totalOperations };
