/** Shared test scaffolding: golden data plus a mock server that replays it. */

import { readFileSync } from "node:fs";
import { ApiClient, type FetchLike } from "../src/api.js";
import type { JobDoc, ReportDoc, SessionDoc } from "../src/types.js";

function golden<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export const goldenSession = (): SessionDoc => golden<SessionDoc>("venice_session.json");
export const goldenPlanReports = (): ReportDoc[] => golden<ReportDoc[]>("venice_plan_reports.json");
export const goldenFeedbackReports = (): ReportDoc[] =>
  golden<ReportDoc[]>("venice_feedback_reports.json");

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export interface MockServer {
  fetch: FetchLike;
  calls: { method: string; url: string; body: unknown }[];
  /** how many times each job id was polled before finishing */
  pollCounts: Record<string, number>;
}

/** Replays the golden session: plan jobs resolve to the golden plan
 * reports, feedback jobs to the golden feedback reports, and each job
 * reports pending for `pendingPolls` polls first. */
export function mockServer(pendingPolls = 1, failJobs = false): MockServer {
  const session = goldenSession();
  const calls: MockServer["calls"] = [];
  const pollCounts: Record<string, number> = {};
  const jobKinds: Record<string, "plan" | "feedback"> = {};
  let jobCounter = 0;

  const fetchImpl: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    calls.push({ method, url: String(url), body });
    const path = String(url).replace(/^.*\/api\/v1/, "");

    if (method === "POST" && path === "/sessions") return jsonResponse({ session_id: "s1" });
    if (method === "GET" && path === "/sessions/s1") return jsonResponse(session);
    if (method === "POST" && path === "/sessions/s1/constraints") {
      const match = session.constraints.find((c) => c.nl_text === body.nl_text);
      if (!match) return jsonResponse({ detail: "translation failed" }, 400);
      return jsonResponse(match);
    }
    if (method === "POST" && /\/constraints\/c\d+\/confirm$/.test(path)) {
      const cid = path.split("/")[4]!;
      const constraint = session.constraints.find((c) => c.id === cid) ?? null;
      return jsonResponse(
        body.accept ? { constraint, removed: null } : { constraint: null, removed: cid },
      );
    }
    if (method === "DELETE" && /\/constraints\/c\d+$/.test(path)) {
      return jsonResponse({ removed: path.split("/").at(-1) });
    }
    if (method === "POST" && (path === "/sessions/s1/plan" || path === "/sessions/s1/feedback")) {
      jobCounter += 1;
      const jobId = `j${jobCounter}`;
      jobKinds[jobId] = path.endsWith("plan") ? "plan" : "feedback";
      return jsonResponse({ job_id: jobId });
    }
    if (method === "GET" && path.startsWith("/jobs/")) {
      const jobId = path.split("/").at(-1)!;
      pollCounts[jobId] = (pollCounts[jobId] ?? 0) + 1;
      if (pollCounts[jobId]! <= pendingPolls) return jsonResponse({ status: "pending" } as JobDoc);
      if (failJobs) return jsonResponse({ status: "error", error: "boom" } as JobDoc);
      const result = jobKinds[jobId] === "plan" ? goldenPlanReports() : goldenFeedbackReports();
      return jsonResponse({ status: "done", result } as JobDoc);
    }
    return jsonResponse({ detail: `unhandled ${method} ${path}` }, 404);
  };

  return { fetch: fetchImpl, calls, pollCounts };
}

export function clientFor(server: MockServer): ApiClient {
  return new ApiClient("", server.fetch);
}

export const instantSleep = () => Promise.resolve();
