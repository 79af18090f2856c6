/** Thin client for the service API plus job polling. */

import type { ConstraintDoc, ConstraintKind, JobDoc, ReportDoc, SessionDoc } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;
export type SleepLike = (ms: number) => Promise<void>;

const realSleep: SleepLike = (ms) => new Promise((resolve) => setTimeout(resolve, ms));

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const reply = await this.fetchImpl(`${this.baseUrl}/api/v1${path}`, init);
    if (!reply.ok) {
      let detail = `HTTP ${reply.status}`;
      try {
        const body = (await reply.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // keep the generic message
      }
      throw new ApiError(reply.status, detail);
    }
    return (await reply.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createSession(): Promise<{ session_id: string }> {
    return this.post("/sessions", {});
  }

  getSession(sessionId: string): Promise<SessionDoc> {
    return this.request(`/sessions/${sessionId}`);
  }

  addConstraint(sessionId: string, nlText: string, kind: ConstraintKind): Promise<ConstraintDoc> {
    return this.post(`/sessions/${sessionId}/constraints`, { nl_text: nlText, kind });
  }

  confirmConstraint(
    sessionId: string,
    constraintId: string,
    accept: boolean,
  ): Promise<{ constraint: ConstraintDoc | null; removed: string | null }> {
    return this.post(`/sessions/${sessionId}/constraints/${constraintId}/confirm`, { accept });
  }

  deleteConstraint(sessionId: string, constraintId: string): Promise<{ removed: string }> {
    return this.request(`/sessions/${sessionId}/constraints/${constraintId}`, {
      method: "DELETE",
    });
  }

  requestPlans(sessionId: string, taskPrompt: string, n = 3): Promise<{ job_id: string }> {
    return this.post(`/sessions/${sessionId}/plan`, { task_prompt: taskPrompt, n });
  }

  sendFeedback(sessionId: string, planId: string, text: string): Promise<{ job_id: string }> {
    return this.post(`/sessions/${sessionId}/feedback`, { plan_id: planId, text });
  }

  getJob(jobId: string): Promise<JobDoc> {
    return this.request(`/jobs/${jobId}`);
  }

  /** Poll a job every `intervalMs` until it settles; resolves with the
   * ranked reports, rejects when the job errors. */
  async pollJob(jobId: string, intervalMs = 1000, sleep: SleepLike = realSleep): Promise<ReportDoc[]> {
    for (;;) {
      const job = await this.getJob(jobId);
      if (job.status === "done") return job.result ?? [];
      if (job.status === "error") throw new ApiError(502, job.error ?? "job failed");
      await sleep(intervalMs);
    }
  }
}
