import { describe, expect, it } from "vitest";

import { ApiError, MmkClient } from "../src/api.js";
import type { ConsistencyDoc } from "../src/types.js";
import { loadFixture } from "./helpers.js";

interface ErrorFixture {
  status: number;
  body: { error: { code: string; message: string; detail: unknown } };
}

interface Call {
  url: string;
  init?: RequestInit;
}

function fakeFetch(status: number, body: unknown, calls: Call[]) {
  return (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    return Promise.resolve(
      new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
      }),
    );
  };
}

function bodyOf(call: Call): unknown {
  return JSON.parse(String(call.init?.body));
}

describe("MmkClient request shapes", () => {
  it("creates sessions with a model_ref body", async () => {
    const calls: Call[] = [];
    const client = new MmkClient("/api/v1", fakeFetch(201, { id: "s1", revision: 0 }, calls));
    await client.createSession("sre-himm@1");
    expect(calls[0].url).toBe("/api/v1/sessions");
    expect(calls[0].init?.method).toBe("POST");
    expect(bodyOf(calls[0])).toEqual({ model_ref: "sre-himm@1" });
  });

  it("puts judgments with the expected revision, items only when given", async () => {
    const calls: Call[] = [];
    const client = new MmkClient("/api/v1", fakeFetch(200, {}, calls));
    await client.putMatrix("s1", "coordination", 3, [{ row: "SF1", col: "SF2", value: "2" }]);
    expect(calls[0].url).toBe("/api/v1/sessions/s1/matrices/coordination");
    expect(bodyOf(calls[0])).toEqual({
      expected_revision: 3,
      judgments: [{ row: "SF1", col: "SF2", value: "2" }],
    });

    await client.putMatrix("s1", "m", 4, [], ["a", "b"]);
    expect(bodyOf(calls[1])).toEqual({ expected_revision: 4, judgments: [], items: ["a", "b"] });
  });

  it("asks for consistency with an optional method parameter", async () => {
    const calls: Call[] = [];
    const client = new MmkClient("/api/v1", fakeFetch(200, {}, calls));
    await client.getConsistency("s1", "coordination");
    await client.getConsistency("s1", "coordination", "eigen");
    expect(calls[0].url).toBe("/api/v1/sessions/s1/matrices/coordination/consistency");
    expect(calls[1].url).toBe("/api/v1/sessions/s1/matrices/coordination/consistency?method=eigen");
  });

  it("puts scores with the partial flag only when set", async () => {
    const calls: Call[] = [];
    const client = new MmkClient("/api/v1", fakeFetch(200, {}, calls));
    const entry = {
      practice_id: "P1-CSF1",
      dims: { approach: 6, deployment: 6, results: 8 },
    };
    await client.putScores("s1", 2, [entry]);
    expect(calls[0].url).toBe("/api/v1/sessions/s1/scores");
    expect(bodyOf(calls[0])).toEqual({ expected_revision: 2, scores: [entry] });

    await client.putScores("s1", 2, [entry], false);
    expect(bodyOf(calls[1])).toEqual({ expected_revision: 2, scores: [entry], partial: false });
  });

  it("posts what-if targets", async () => {
    const calls: Call[] = [];
    const client = new MmkClient("/api/v1", fakeFetch(200, {}, calls));
    await client.whatIf("s1", 4);
    expect(calls[0].url).toBe("/api/v1/sessions/s1/whatif");
    expect(bodyOf(calls[0])).toEqual({ target_level: 4 });
  });

  it("escapes path segments and trims a trailing base slash", async () => {
    const calls: Call[] = [];
    const client = new MmkClient("http://localhost:8000/api/v1/", fakeFetch(200, {}, calls));
    await client.getSession("a b");
    expect(calls[0].url).toBe("http://localhost:8000/api/v1/sessions/a%20b");
  });

  it("unwraps list envelopes", async () => {
    const calls: Call[] = [];
    const client = new MmkClient(
      "/api/v1",
      fakeFetch(200, { models: [{ ref: "sre-himm@1" }] }, calls),
    );
    const models = await client.listModels();
    expect(models).toHaveLength(1);
    expect(calls[0].url).toBe("/api/v1/models");
  });
});

describe("MmkClient error handling", () => {
  it("raises ApiError with the server envelope fields", async () => {
    const fixture = loadFixture<ErrorFixture>("error_matrix_incomplete.json");
    const client = new MmkClient("/api/v1", fakeFetch(fixture.status, fixture.body, []));
    const err = await client.getConsistency("s1", "sparse").catch((e) => e as ApiError);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(422);
    expect(err.code).toBe("matrix_incomplete");
    expect(err.detail).toEqual({ missing_pairs: 2 });
    expect(err.message).toMatch(/missing/);
  });

  it("falls back to a generic error on a non-JSON body", async () => {
    const fetchFn = (): Promise<Response> =>
      Promise.resolve(new Response("<html>boom</html>", { status: 502 }));
    const client = new MmkClient("/api/v1", fetchFn);
    const err = await client.getReport("s1").catch((e) => e as ApiError);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("http_error");
    expect(err.status).toBe(502);
  });

  it("passes a real consistency payload through untouched", async () => {
    const doc = loadFixture<ConsistencyDoc>("consistency_coordination.json");
    const client = new MmkClient("/api/v1", fakeFetch(200, doc, []));
    const got = await client.getConsistency("s1", "coordination");
    expect(got).toEqual(doc);
  });
});
