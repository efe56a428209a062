// Browser wiring: one session against the assessment service, three panes
// (pairwise matrix, practice scoring, maturity report). All domain numbers
// on screen are copied from API responses.

import { ApiError, MmkClient } from "./api.js";
import { buildGrid, cellToJudgment, crBadge, parseCellInput, weightRows } from "./matrix.js";
import { DIMENSION_VALUES, buildScoreboard, dimsComplete, scoresPayload } from "./scoring.js";
import { achievedSummary, buildLadder, planSections, weakRows } from "./report.js";
import type { ConsistencyDoc, Dims, ModelDoc, PlanDoc, ReportDoc, SessionDoc } from "./types.js";

interface AppState {
  client: MmkClient;
  model: ModelDoc | null;
  session: SessionDoc | null;
  activeMatrix: string | null;
  consistency: ConsistencyDoc | null;
  report: ReportDoc | null;
  plan: PlanDoc | null;
  pendingDims: Map<string, Partial<Dims>>;
  error: string | null;
}

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

function describeError(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  if (err instanceof Error) return err.message;
  return String(err);
}

async function guard(state: AppState, action: () => Promise<void>): Promise<void> {
  try {
    state.error = null;
    await action();
  } catch (err) {
    state.error = describeError(err);
  }
  render(state);
}

async function refreshReport(state: AppState): Promise<void> {
  if (!state.session) return;
  try {
    state.report = await state.client.getReport(state.session.id);
  } catch {
    state.report = null; // nothing scored yet in a strict session
  }
}

function renderMatrixPane(state: AppState, pane: HTMLElement): void {
  pane.replaceChildren();
  const session = state.session;
  if (!session) return;
  pane.appendChild(el("h2", "pane-title", "Pairwise comparisons"));

  const form = el("div", "matrix-form");
  const idInput = el("input") as HTMLInputElement;
  idInput.placeholder = "matrix id, e.g. coordination";
  const itemsInput = el("input") as HTMLInputElement;
  itemsInput.placeholder = "items, comma separated";
  const createBtn = el("button", "", "Define matrix");
  createBtn.addEventListener("click", () => {
    const matrixId = idInput.value.trim();
    const items = itemsInput.value.split(",").map((s) => s.trim()).filter(Boolean);
    if (!matrixId || items.length < 2) return;
    void guard(state, async () => {
      state.session = await state.client.putMatrix(session.id, matrixId, session.revision, [], items);
      state.activeMatrix = matrixId;
      state.consistency = null;
    });
  });
  form.append(idInput, itemsInput, createBtn);
  pane.appendChild(form);

  const tabs = el("div", "matrix-tabs");
  for (const matrixId of Object.keys(session.matrices)) {
    const tab = el("button", matrixId === state.activeMatrix ? "tab active" : "tab", matrixId);
    tab.addEventListener("click", () => {
      void guard(state, async () => {
        state.activeMatrix = matrixId;
        state.consistency = null;
      });
    });
    tabs.appendChild(tab);
  }
  pane.appendChild(tabs);

  const matrixId = state.activeMatrix;
  if (!matrixId || !(matrixId in session.matrices)) return;
  const doc = session.matrices[matrixId];

  const badge = crBadge(state.consistency, doc.missing_pairs);
  const badgeNode = el("span", `cr-badge cr-${badge.state}`, badge.label);
  pane.appendChild(badgeNode);

  const table = el("table", "matrix-grid");
  const head = el("tr");
  head.appendChild(el("th"));
  for (const item of doc.items) head.appendChild(el("th", "", item));
  table.appendChild(head);

  for (const row of buildGrid(doc, state.consistency)) {
    const tr = el("tr");
    tr.appendChild(el("th", "", row[0].row));
    for (const cell of row) {
      const td = el("td", cell.highlight ? "cell hint" : "cell");
      if (cell.editable) {
        const input = el("input") as HTMLInputElement;
        input.value = cell.text;
        input.addEventListener("change", () => {
          const check = parseCellInput(input.value);
          if (check.kind === "invalid") {
            state.error = check.reason;
            render(state);
            return;
          }
          void guard(state, async () => {
            const entry = cellToJudgment(cell.row, cell.col, input.value);
            state.session = await state.client.putMatrix(
              session.id, matrixId, session.revision, [entry],
            );
            state.consistency = null;
          });
        });
        td.appendChild(input);
      } else {
        td.textContent = cell.text;
      }
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  pane.appendChild(table);

  const checkBtn = el("button", "", "Check consistency");
  checkBtn.disabled = doc.missing_pairs > 0;
  checkBtn.addEventListener("click", () => {
    void guard(state, async () => {
      state.consistency = await state.client.getConsistency(session.id, matrixId);
    });
  });
  pane.appendChild(checkBtn);

  if (state.consistency && state.consistency.matrix_id === matrixId) {
    const list = el("ol", "weights");
    for (const rowEntry of weightRows(state.consistency)) {
      list.appendChild(el("li", "", `${rowEntry.item}: ${rowEntry.weight.toFixed(3)}`));
    }
    pane.appendChild(list);
  }
}

function dimSelect(current: number | undefined, onPick: (v: number) => void): HTMLSelectElement {
  const select = el("select") as HTMLSelectElement;
  const blank = el("option", "", "-") as HTMLOptionElement;
  blank.value = "";
  select.appendChild(blank);
  for (const v of DIMENSION_VALUES) {
    const opt = el("option", "", String(v)) as HTMLOptionElement;
    opt.value = String(v);
    if (current === v) opt.selected = true;
    select.appendChild(opt);
  }
  select.addEventListener("change", () => {
    if (select.value !== "") onPick(Number(select.value));
  });
  return select;
}

function renderScoringPane(state: AppState, pane: HTMLElement): void {
  pane.replaceChildren();
  const { session, model, report } = state;
  if (!session || !model) return;
  pane.appendChild(el("h2", "pane-title", "Practice scoring"));
  if (!report) {
    pane.appendChild(el("p", "note", "No report yet; score practices or enable partial mode."));
    return;
  }

  for (const block of buildScoreboard(model, report)) {
    const section = el("section", "factor");
    const headline = `${block.factorId} ${block.name}`;
    const status = block.complete ? block.status : `${block.status} (incomplete)`;
    section.appendChild(el("h3", "", `${headline}: ${block.finalText} ${status}`));
    const table = el("table", "score-rows");
    for (const row of block.practices) {
      const tr = el("tr");
      tr.appendChild(el("td", "pid", row.practiceId));
      tr.appendChild(el("td", "text", row.text));
      const dims = state.pendingDims.get(row.practiceId) ?? {
        approach: row.dims?.approach,
        deployment: row.dims?.deployment,
        results: row.dims?.results,
      };
      for (const key of ["approach", "deployment", "results"] as const) {
        const td = el("td", "dim");
        td.appendChild(
          dimSelect(dims[key], (v) => {
            const next = { ...(state.pendingDims.get(row.practiceId) ?? dims), [key]: v };
            state.pendingDims.set(row.practiceId, next);
            if (dimsComplete(next)) {
              void guard(state, async () => {
                const payload = scoresPayload(new Map([[row.practiceId, next]]));
                state.session = await state.client.putScores(session.id, session.revision, payload);
                state.pendingDims.delete(row.practiceId);
                await refreshReport(state);
              });
            } else {
              render(state);
            }
          }),
        );
        tr.appendChild(td);
      }
      tr.appendChild(el("td", "score", row.scoreText));
      table.appendChild(tr);
    }
    section.appendChild(table);
    pane.appendChild(section);
  }
}

function renderReportPane(state: AppState, pane: HTMLElement): void {
  pane.replaceChildren();
  const { session, report } = state;
  if (!session) return;
  pane.appendChild(el("h2", "pane-title", "Maturity"));
  if (!report) return;

  pane.appendChild(el("p", "achieved", `Achieved: ${achievedSummary(report)}`));
  const ladder = el("ul", "ladder");
  for (const rung of buildLadder(report).slice().reverse()) {
    ladder.appendChild(
      el("li", `rung ${rung.state}`, `Level ${rung.level} ${rung.name}`),
    );
  }
  pane.appendChild(ladder);

  const weak = weakRows(report);
  if (weak.length > 0) {
    const list = el("ul", "weak");
    for (const row of weak) {
      list.appendChild(el("li", "", `${row.factorId} at level ${row.level}: ${row.finalText}`));
    }
    pane.appendChild(list);
  }

  const controls = el("div", "whatif");
  const target = el("input") as HTMLInputElement;
  target.type = "number";
  target.min = "2";
  target.max = String(report.levels.length);
  target.value = String(Math.min(report.achieved_level + 1, report.levels.length));
  const btn = el("button", "", "Plan upgrade");
  btn.addEventListener("click", () => {
    void guard(state, async () => {
      state.plan = await state.client.whatIf(session.id, Number(target.value));
    });
  });
  controls.append(target, btn);
  pane.appendChild(controls);

  if (state.plan) {
    for (const section of planSections(state.plan)) {
      const box = el("section", "plan-factor");
      box.appendChild(
        el("h3", "", `${section.factorId}: ${section.finalText}, needs ${section.deficit} more`),
      );
      const list = el("ul");
      for (const r of section.raises) {
        list.appendChild(
          el("li", "", `${r.practiceId}: ${r.fromScore} to ${r.toScore} (${r.transition})`),
        );
      }
      box.appendChild(list);
      pane.appendChild(box);
    }
  }
}

function render(state: AppState): void {
  const banner = document.getElementById("error-banner");
  if (banner) {
    banner.textContent = state.error ?? "";
    banner.style.display = state.error ? "block" : "none";
  }
  const matrixPane = document.getElementById("matrix-pane");
  const scoringPane = document.getElementById("scoring-pane");
  const reportPane = document.getElementById("report-pane");
  if (matrixPane) renderMatrixPane(state, matrixPane);
  if (scoringPane) renderScoringPane(state, scoringPane);
  if (reportPane) renderReportPane(state, reportPane);
}

export async function startApp(client: MmkClient = new MmkClient()): Promise<void> {
  const state: AppState = {
    client,
    model: null,
    session: null,
    activeMatrix: null,
    consistency: null,
    report: null,
    plan: null,
    pendingDims: new Map(),
    error: null,
  };
  await guard(state, async () => {
    const models = await client.listModels();
    if (models.length === 0) throw new Error("service has no models");
    state.model = await client.getModel(models[0].ref);
    state.session = await client.createSession(models[0].ref);
    await refreshReport(state);
  });
}

if (typeof document !== "undefined" && document.getElementById("matrix-pane")) {
  void startApp();
}
