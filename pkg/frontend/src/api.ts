// Thin typed client for the assessment service. Every number shown in the
// UI comes back from these calls; nothing is derived locally.

import type {
  ConsistencyDoc,
  JudgmentEntry,
  ModelDoc,
  ModelSummary,
  PlanDoc,
  ReportDoc,
  ScoreEntry,
  SessionDoc,
  SessionSummary,
} from "./types.js";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly detail: unknown;

  constructor(code: string, message: string, status: number, detail: unknown) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
    this.detail = detail;
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = "http_error";
  let message = `request failed with status ${response.status}`;
  let detail: unknown = null;
  try {
    const body = await response.json();
    if (body && typeof body === "object" && "error" in body) {
      const err = (body as { error: { code?: string; message?: string; detail?: unknown } }).error;
      if (typeof err.code === "string") code = err.code;
      if (typeof err.message === "string") message = err.message;
      detail = err.detail ?? null;
    }
  } catch {
    // non-JSON body, keep the fallback message
  }
  throw new ApiError(code, message, response.status, detail);
}

export class MmkClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "/api/v1", fetchFn: FetchLike = fetch) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private get<T>(path: string): Promise<T> {
    return this.fetchFn(this.baseUrl + path).then((r) => unwrap<T>(r));
  }

  private send<T>(method: string, path: string, body: unknown): Promise<T> {
    return this.fetchFn(this.baseUrl + path, {
      method,
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => unwrap<T>(r));
  }

  listModels(): Promise<ModelSummary[]> {
    return this.get<{ models: ModelSummary[] }>("/models").then((d) => d.models);
  }

  getModel(ref: string): Promise<ModelDoc> {
    return this.get<ModelDoc>(`/models/${encodeURIComponent(ref)}`);
  }

  createSession(modelRef: string): Promise<SessionDoc> {
    return this.send<SessionDoc>("POST", "/sessions", { model_ref: modelRef });
  }

  listSessions(): Promise<SessionSummary[]> {
    return this.get<{ sessions: SessionSummary[] }>("/sessions").then((d) => d.sessions);
  }

  getSession(sessionId: string): Promise<SessionDoc> {
    return this.get<SessionDoc>(`/sessions/${encodeURIComponent(sessionId)}`);
  }

  putMatrix(
    sessionId: string,
    matrixId: string,
    expectedRevision: number,
    judgments: JudgmentEntry[],
    items?: string[],
  ): Promise<SessionDoc> {
    const body: Record<string, unknown> = {
      expected_revision: expectedRevision,
      judgments,
    };
    if (items !== undefined) body.items = items;
    return this.send<SessionDoc>(
      "PUT",
      `/sessions/${encodeURIComponent(sessionId)}/matrices/${encodeURIComponent(matrixId)}`,
      body,
    );
  }

  getConsistency(sessionId: string, matrixId: string, method?: string): Promise<ConsistencyDoc> {
    const suffix = method ? `?method=${encodeURIComponent(method)}` : "";
    return this.get<ConsistencyDoc>(
      `/sessions/${encodeURIComponent(sessionId)}/matrices/${encodeURIComponent(matrixId)}/consistency${suffix}`,
    );
  }

  putScores(
    sessionId: string,
    expectedRevision: number,
    scores: ScoreEntry[],
    partial?: boolean,
  ): Promise<SessionDoc> {
    const body: Record<string, unknown> = {
      expected_revision: expectedRevision,
      scores,
    };
    if (partial !== undefined) body.partial = partial;
    return this.send<SessionDoc>(
      "PUT",
      `/sessions/${encodeURIComponent(sessionId)}/scores`,
      body,
    );
  }

  getReport(sessionId: string): Promise<ReportDoc> {
    return this.get<ReportDoc>(`/sessions/${encodeURIComponent(sessionId)}/report`);
  }

  whatIf(sessionId: string, targetLevel: number): Promise<PlanDoc> {
    return this.send<PlanDoc>(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/whatif`,
      { target_level: targetLevel },
    );
  }
}
