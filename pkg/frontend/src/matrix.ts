// Pairwise matrix view helpers. The grid mirrors what the server sends:
// editable upper triangle, fixed diagonal, derived lower triangle. Cell
// input is checked for shape only; the raw text is sent to the API, which
// owns parsing, range checks, and all arithmetic.

import type { ConsistencyDoc, JudgmentEntry, MatrixDoc } from "./types.js";

export type CellKind = "diagonal" | "judgment" | "reciprocal";

export interface MatrixCell {
  row: string;
  col: string;
  kind: CellKind;
  editable: boolean;
  text: string;
  highlight: boolean;
}

export type CellInput =
  | { kind: "empty" }
  | { kind: "value"; raw: string }
  | { kind: "invalid"; reason: string };

const INTEGER_OR_DECIMAL = /^\d+(\.\d+)?$/;
const FRACTION = /^\d+\s*\/\s*\d+$/;

/** Shape-check one cell. Accepts "", "3", "0.25", or "1/7"; no evaluation. */
export function parseCellInput(text: string): CellInput {
  const raw = text.trim();
  if (raw === "") {
    return { kind: "empty" };
  }
  if (INTEGER_OR_DECIMAL.test(raw) || FRACTION.test(raw)) {
    return { kind: "value", raw };
  }
  return { kind: "invalid", reason: "enter a number like 3, 0.25, or 1/7" };
}

/** Judgment entry for a PUT body. Empty input clears the pair. */
export function cellToJudgment(row: string, col: string, text: string): JudgmentEntry {
  const parsed = parseCellInput(text);
  if (parsed.kind === "invalid") {
    throw new Error(parsed.reason);
  }
  return { row, col, value: parsed.kind === "empty" ? null : parsed.raw };
}

/** Pair the consistency hint points at, or null when there is no hint. */
export function highlightPair(doc: ConsistencyDoc | null): [string, string] | null {
  if (!doc || !doc.hint) return null;
  return [doc.hint.row_item, doc.hint.col_item];
}

/** Renderable grid built from the server matrix doc, highlight applied. */
export function buildGrid(doc: MatrixDoc, consistency: ConsistencyDoc | null = null): MatrixCell[][] {
  const pair = highlightPair(consistency);
  const cells: MatrixCell[][] = [];
  for (let i = 0; i < doc.items.length; i++) {
    const rowCells: MatrixCell[] = [];
    for (let j = 0; j < doc.items.length; j++) {
      const row = doc.items[i];
      const col = doc.items[j];
      const kind: CellKind = i === j ? "diagonal" : i < j ? "judgment" : "reciprocal";
      const hit =
        pair !== null &&
        ((pair[0] === row && pair[1] === col) || (pair[0] === col && pair[1] === row));
      rowCells.push({
        row,
        col,
        kind,
        editable: kind === "judgment",
        text: doc.grid[i][j],
        highlight: hit && kind !== "diagonal",
      });
    }
    cells.push(rowCells);
  }
  return cells;
}

export type BadgeState = "empty" | "pending" | "ok" | "inconsistent";

export interface CrBadge {
  state: BadgeState;
  /** Raw ratio from the API, untouched. */
  cr: number | null;
  /** Two-decimal display text, e.g. "0.07". */
  crText: string;
  label: string;
}

/**
 * Badge contents for a matrix. `missingPairs` comes from the matrix doc;
 * the ratio only renders once every pair is filled in and checked.
 */
export function crBadge(doc: ConsistencyDoc | null, missingPairs: number): CrBadge {
  if (missingPairs > 0) {
    return {
      state: "pending",
      cr: null,
      crText: "",
      label: `${missingPairs} pair${missingPairs === 1 ? "" : "s"} left`,
    };
  }
  if (!doc) {
    return { state: "empty", cr: null, crText: "", label: "not checked" };
  }
  const crText = doc.cr.toFixed(2);
  if (doc.consistent) {
    return { state: "ok", cr: doc.cr, crText, label: `CR ${crText} consistent` };
  }
  return { state: "inconsistent", cr: doc.cr, crText, label: `CR ${crText} inconsistent` };
}

/** Weights table rows in rank order, display values sent by the server. */
export function weightRows(doc: ConsistencyDoc): { item: string; weight: number; rank: number }[] {
  const rows = doc.weights.items.map((item, i) => ({
    item,
    weight: doc.weights.weights[i],
    rank: doc.weights.ranks[i],
  }));
  rows.sort((a, b) => a.rank - b.rank || a.item.localeCompare(b.item));
  return rows;
}
