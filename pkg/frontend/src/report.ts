// Maturity ladder, weak-factor list, and what-if plan views, all rendered
// straight from server report and plan documents.

import type { PlanDoc, ReportDoc } from "./types.js";
import { formatFinalScore } from "./scoring.js";

export type RungState = "achieved" | "blocked";

export interface LadderRung {
  level: number;
  name: string;
  state: RungState;
  factorCount: number;
  weakCount: number;
}

/** Ladder rungs in ascending level order; render reversed for top-down. */
export function buildLadder(report: ReportDoc): LadderRung[] {
  return report.levels.map((level) => {
    const weakCount = level.factors.filter((f) => f.status === "Weak").length;
    return {
      level: level.number,
      name: level.name,
      state: level.number <= report.achieved_level ? "achieved" : "blocked",
      factorCount: level.factors.length,
      weakCount,
    };
  });
}

export interface WeakRow {
  level: number;
  factorId: string;
  finalText: string;
}

export function weakRows(report: ReportDoc): WeakRow[] {
  return report.weak_factors.map((w) => ({
    level: w.level,
    factorId: w.factor_id,
    finalText: formatFinalScore(w.final_score),
  }));
}

export interface RaiseRow {
  practiceId: string;
  fromScore: number;
  toScore: number;
  transition: string;
}

export interface PlanSection {
  factorId: string;
  level: number;
  finalText: string;
  deficit: number;
  raises: RaiseRow[];
}

function dimsText(d: { approach: number; deployment: number; results: number }): string {
  return `${d.approach}/${d.deployment}/${d.results}`;
}

/** One section per factor the plan touches, raises in server order. */
export function planSections(plan: PlanDoc): PlanSection[] {
  return plan.factors.map((f) => ({
    factorId: f.factor_id,
    level: f.level,
    finalText: formatFinalScore(f.final_score),
    deficit: f.deficit,
    raises: f.raises.map((r) => ({
      practiceId: r.practice_id,
      fromScore: r.from_score,
      toScore: r.to_score,
      transition: `${dimsText(r.from)} to ${dimsText(r.to)}`,
    })),
  }));
}

export function achievedSummary(report: ReportDoc): string {
  return `Level ${report.achieved_level}`;
}
