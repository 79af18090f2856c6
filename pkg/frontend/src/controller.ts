/** Orchestration between the API client and the view state.
 *
 * All mutations for a session go through one promise chain, so a second
 * submission while a job is pending is queued rather than dropped.
 */

import { ApiClient } from "./api.js";
import {
  addOptimisticNode,
  applyReports,
  applySession,
  closeDialog,
  initialState,
  markNodeError,
  openDialog,
  setBusy,
  setFeedbackDraft,
  setJobError,
  setTaskDraft,
  type ViewState,
} from "./state.js";
import type { ConstraintDoc, ConstraintKind, ReportDoc } from "./types.js";

export type StateListener = (state: ViewState) => void;

export class Controller {
  state: ViewState = initialState();
  private queue: Promise<unknown> = Promise.resolve();
  private retryAction: (() => Promise<void>) | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: StateListener = () => {},
    private readonly pollIntervalMs = 1000,
  ) {}

  private update(next: ViewState): void {
    this.state = next;
    this.onChange(next);
  }

  /** Serialize mutations per session; later calls wait for earlier ones. */
  private enqueue<T>(work: () => Promise<T>): Promise<T> {
    const next = this.queue.then(work, work);
    this.queue = next.catch(() => undefined);
    return next;
  }

  async init(): Promise<void> {
    const { session_id } = await this.api.createSession();
    this.update({ ...this.state, sessionId: session_id });
  }

  private sessionId(): string {
    if (this.state.sessionId === null) throw new Error("no session yet");
    return this.state.sessionId;
  }

  async refreshSession(): Promise<void> {
    const doc = await this.api.getSession(this.sessionId());
    this.update(applySession(this.state, doc));
  }

  async submitConstraint(text: string, kind: ConstraintKind): Promise<void> {
    if (text.trim() === "") return;
    const placeholder: ConstraintDoc = {
      id: `draft-${Date.now()}`,
      kind,
      nl_text: text,
      ltl: null,
      property: null,
      back_translation: null,
      status: "pending",
    };
    this.update(addOptimisticNode(this.state, placeholder));
    return this.enqueue(async () => {
      try {
        const constraint = await this.api.addConstraint(this.sessionId(), text, kind);
        await this.refreshSession();
        if (kind === "hard") {
          this.update(openDialog(this.state, constraint));
        }
      } catch (error) {
        this.update(markNodeError(this.state, placeholder.id, String(error)));
      }
    });
  }

  async confirmConstraint(constraintId: string, accept: boolean): Promise<void> {
    return this.enqueue(async () => {
      await this.api.confirmConstraint(this.sessionId(), constraintId, accept);
      await this.refreshSession();
      this.update(closeDialog(this.state));
    });
  }

  async removeConstraint(constraintId: string): Promise<void> {
    return this.enqueue(async () => {
      await this.api.deleteConstraint(this.sessionId(), constraintId);
      await this.refreshSession();
    });
  }

  setTaskDraft(text: string): void {
    this.update(setTaskDraft(this.state, text));
  }

  setFeedbackDraft(planId: string, text: string): void {
    this.update(setFeedbackDraft(this.state, planId, text));
  }

  async requestPlans(taskPrompt: string): Promise<void> {
    this.retryAction = () => this.requestPlans(taskPrompt);
    this.update(setBusy(this.state, true)); // spinner from submission, not job start
    return this.enqueue(() => this.runJob(() => this.api.requestPlans(this.sessionId(), taskPrompt)));
  }

  async sendFeedback(planId: string, text: string): Promise<void> {
    if (text.trim() === "") return; // the send button is disabled for empty drafts
    this.retryAction = () => this.sendFeedback(planId, text);
    this.update(setBusy(this.state, true));
    return this.enqueue(() =>
      this.runJob(() => this.api.sendFeedback(this.sessionId(), planId, text)),
    );
  }

  async retry(): Promise<void> {
    if (this.retryAction !== null) await this.retryAction();
  }

  private async runJob(start: () => Promise<{ job_id: string }>): Promise<void> {
    this.update(setBusy(this.state, true));
    try {
      const { job_id } = await start();
      const reports: ReportDoc[] = await this.api.pollJob(job_id, this.pollIntervalMs);
      await this.refreshSession();
      this.update(applyReports(this.state, reports));
    } catch (error) {
      this.update(setJobError(this.state, String(error)));
    }
  }
}
