import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { clientFor, goldenPlanReports, instantSleep, mockServer } from "./helpers.js";

describe("ApiClient", () => {
  it("hits the versioned endpoints", async () => {
    const server = mockServer();
    const api = clientFor(server);
    await api.createSession();
    await api.getSession("s1");
    expect(server.calls.map((c) => c.url)).toEqual(["/api/v1/sessions", "/api/v1/sessions/s1"]);
  });

  it("raises ApiError with the server detail", async () => {
    const server = mockServer();
    const api = clientFor(server);
    await expect(api.addConstraint("s1", "an unknown rule", "hard")).rejects.toThrow(
      "translation failed",
    );
    await expect(api.addConstraint("s1", "an unknown rule", "hard")).rejects.toBeInstanceOf(
      ApiError,
    );
  });

  it("polls a job until done and returns the ranked reports", async () => {
    const server = mockServer(3);
    const api = clientFor(server);
    const { job_id } = await api.requestPlans("s1", "the task");
    const reports = await api.pollJob(job_id, 1, instantSleep);
    expect(server.pollCounts[job_id]).toBe(4);
    expect(reports).toEqual(goldenPlanReports());
  });

  it("rejects when the job errors", async () => {
    const server = mockServer(0, true);
    const api = clientFor(server);
    const { job_id } = await api.requestPlans("s1", "the task");
    await expect(api.pollJob(job_id, 1, instantSleep)).rejects.toThrow("boom");
  });

  it("sends feedback with the plan id", async () => {
    const server = mockServer();
    const api = clientFor(server);
    await api.sendFeedback("s1", "p1", "safer swimming please");
    const call = server.calls.at(-1)!;
    expect(call.url).toBe("/api/v1/sessions/s1/feedback");
    expect(call.body).toEqual({ plan_id: "p1", text: "safer swimming please" });
  });
});
