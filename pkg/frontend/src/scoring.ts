// Scoring view helpers. Each practice gets three selectors stepping through
// the legal dimension values; practice scores and factor finals are read
// back from the server report, never computed here.

import type { Dims, FactorReportDoc, ModelDoc, ReportDoc, ScoreEntry } from "./types.js";

export const DIMENSION_VALUES = [0, 2, 4, 6, 8, 10] as const;

export function isDimensionValue(value: number): boolean {
  return (DIMENSION_VALUES as readonly number[]).includes(value);
}

export function dimsComplete(dims: Partial<Dims>): dims is Dims {
  return (
    typeof dims.approach === "number" &&
    typeof dims.deployment === "number" &&
    typeof dims.results === "number"
  );
}

/** "5.0" for whole finals, otherwise up to two decimals ("7.25", "6.67"). */
export function formatFinalScore(value: number): string {
  const two = value.toFixed(2);
  return two.endsWith("0") ? value.toFixed(1) : two;
}

export interface PracticeRow {
  practiceId: string;
  text: string;
  dims: Dims | null;
  scored: boolean;
  scoreText: string;
}

export interface FactorBlock {
  factorId: string;
  name: string;
  kind: "CSF" | "CB";
  level: number;
  finalText: string;
  status: "Strong" | "Weak";
  complete: boolean;
  practices: PracticeRow[];
}

function practiceText(model: ModelDoc, practiceId: string): string {
  for (const level of model.levels) {
    for (const factor of level.factors) {
      for (const practice of factor.practices) {
        if (practice.id === practiceId) return practice.text;
      }
    }
  }
  return practiceId;
}

function factorBlock(model: ModelDoc, levelNumber: number, f: FactorReportDoc): FactorBlock {
  return {
    factorId: f.factor_id,
    name: f.name,
    kind: f.kind,
    level: levelNumber,
    finalText: formatFinalScore(f.final_score),
    status: f.status,
    complete: f.complete,
    practices: f.practices.map((p) => ({
      practiceId: p.practice_id,
      text: practiceText(model, p.practice_id),
      dims: p.dims,
      scored: p.scored,
      scoreText: p.scored ? String(p.score) : "",
    })),
  };
}

/** One block per factor, in server report order, texts joined from the model. */
export function buildScoreboard(model: ModelDoc, report: ReportDoc): FactorBlock[] {
  const blocks: FactorBlock[] = [];
  for (const level of report.levels) {
    for (const factor of level.factors) {
      blocks.push(factorBlock(model, level.number, factor));
    }
  }
  return blocks;
}

/** PUT body entries from the edit buffer; null clears a practice. */
export function scoresPayload(entries: Map<string, Dims | null>): ScoreEntry[] {
  const out: ScoreEntry[] = [];
  for (const [practiceId, dims] of entries) {
    out.push({ practice_id: practiceId, dims });
  }
  out.sort((a, b) => a.practice_id.localeCompare(b.practice_id));
  return out;
}
