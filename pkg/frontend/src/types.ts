// Wire types for the assessment service (/api/v1). These mirror the JSON
// the server actually sends; the client never recomputes domain numbers.

export interface Dims {
  approach: number;
  deployment: number;
  results: number;
}

export interface JudgmentEntry {
  row: string;
  col: string;
  value: number | string | null;
}

export interface MatrixDoc {
  items: string[];
  judgments: JudgmentEntry[];
  missing_pairs: number;
  grid: string[][];
}

export interface SessionDoc {
  id: string;
  model_ref: string;
  revision: number;
  created_at: string;
  updated_at: string;
  partial: boolean;
  matrices: Record<string, MatrixDoc>;
  scores: Record<string, Dims>;
}

export interface SessionSummary {
  id: string;
  model_ref: string;
  revision: number;
  created_at: string;
  updated_at: string;
}

export interface ModelSummary {
  name: string;
  version: string;
  ref: string;
  levels: number;
  factors: number;
  practices: number;
}

export interface PracticeDoc {
  id: string;
  text: string;
  source: string;
}

export interface FactorDoc {
  id: string;
  kind: "CSF" | "CB";
  name: string;
  practices: PracticeDoc[];
}

export interface LevelDoc {
  number: number;
  name: string;
  factors: FactorDoc[];
}

export interface ModelDoc {
  ref: string;
  name: string;
  version: string;
  levels: LevelDoc[];
}

export interface WeightsDoc {
  items: string[];
  weights: number[];
  ranks: number[];
}

export interface HintDoc {
  row_item: string;
  col_item: string;
  current: number;
  suggested: number;
  deviation: number;
}

export interface ConsistencyDoc {
  matrix_id: string;
  method: string;
  lambda_max: number;
  ci: number;
  ri: number;
  cr: number;
  consistent: boolean;
  weights: WeightsDoc;
  hint: HintDoc | null;
}

export interface PracticeReportDoc {
  practice_id: string;
  score: number;
  scored: boolean;
  dims: Dims | null;
}

export interface FactorReportDoc {
  factor_id: string;
  name: string;
  kind: "CSF" | "CB";
  final_score: number;
  status: "Strong" | "Weak";
  complete: boolean;
  practices: PracticeReportDoc[];
}

export interface LevelReportDoc {
  number: number;
  name: string;
  factors: FactorReportDoc[];
}

export interface WeakFactorDoc {
  level: number;
  factor_id: string;
  final_score: number;
}

export interface ReportDoc {
  revision: number;
  model: string;
  achieved_level: number;
  levels: LevelReportDoc[];
  weak_factors: WeakFactorDoc[];
}

export interface RaiseDoc {
  practice_id: string;
  from_score: number;
  to_score: number;
  from: Dims;
  to: Dims;
}

export interface FactorPlanDoc {
  factor_id: string;
  level: number;
  final_score: number;
  deficit: number;
  raises: RaiseDoc[];
}

export interface PlanDoc {
  revision: number;
  target_level: number;
  factors: FactorPlanDoc[];
}

export interface ScoreEntry {
  practice_id: string;
  dims: Dims | null;
}
