import { describe, expect, it } from "vitest";

import { Controller } from "../src/controller.js";
import { clientFor, goldenFeedbackReports, goldenPlanReports, mockServer } from "./helpers.js";
import { goldenSession } from "./helpers.js";

async function readyController(server = mockServer()) {
  const controller = new Controller(clientFor(server), () => {}, 0);
  await controller.init();
  return controller;
}

describe("submitConstraint", () => {
  it("adds an optimistic pending node immediately", async () => {
    const controller = await readyController();
    const text = goldenSession().constraints[0]!.nl_text;
    const pending = controller.submitConstraint(text, "hard");
    expect(controller.state.hardNodes.at(-1)?.optimistic).toBe(true);
    await pending;
  });

  it("opens the confirmation dialog for hard constraints", async () => {
    const controller = await readyController();
    const constraint = goldenSession().constraints[0]!;
    await controller.submitConstraint(constraint.nl_text, "hard");
    expect(controller.state.dialog?.id).toBe(constraint.id);
    expect(controller.state.dialog?.back_translation).toBe(constraint.back_translation);
  });

  it("does not open a dialog for soft constraints", async () => {
    const controller = await readyController();
    const soft = goldenSession().constraints.find((c) => c.kind === "soft")!;
    await controller.submitConstraint(soft.nl_text, "soft");
    expect(controller.state.dialog).toBeNull();
  });

  it("marks the node with an error badge on API failure", async () => {
    const controller = await readyController();
    await controller.submitConstraint("a rule the server rejects", "hard");
    const node = controller.state.hardNodes.at(-1)!;
    expect(node.error).toContain("translation failed");
  });

  it("accepting the dialog closes it", async () => {
    const controller = await readyController();
    const constraint = goldenSession().constraints[0]!;
    await controller.submitConstraint(constraint.nl_text, "hard");
    await controller.confirmConstraint(constraint.id, true);
    expect(controller.state.dialog).toBeNull();
  });
});

describe("requestPlans", () => {
  it("polls the job and adopts the ranked reports", async () => {
    const server = mockServer(2);
    const controller = await readyController(server);
    await controller.requestPlans("the venice task");
    expect(controller.state.cards.map((c) => c.plan_id)).toEqual(
      goldenPlanReports().map((r) => r.plan_id),
    );
    expect(controller.state.busy).toBe(false);
    expect(server.pollCounts["j1"]).toBe(3);
  });

  it("shows the spinner while the job is pending", async () => {
    const server = mockServer(1);
    const controller = await readyController(server);
    const pending = controller.requestPlans("the venice task");
    expect(controller.state.busy).toBe(true);
    await pending;
    expect(controller.state.busy).toBe(false);
  });

  it("keeps a retry affordance when the job errors", async () => {
    const server = mockServer(0, true);
    const controller = await readyController(server);
    await controller.requestPlans("the venice task");
    expect(controller.state.jobError).toContain("boom");
    expect(controller.state.cards).toEqual([]);
  });
});

describe("sendFeedback", () => {
  it("replaces the cards with the refreshed ranking", async () => {
    const controller = await readyController();
    await controller.requestPlans("the venice task");
    await controller.sendFeedback("p1", "flotation vests first");
    expect(controller.state.cards.map((c) => c.plan_id)).toEqual(
      goldenFeedbackReports().map((r) => r.plan_id),
    );
  });

  it("ignores empty feedback", async () => {
    const server = mockServer();
    const controller = await readyController(server);
    await controller.sendFeedback("p1", "   ");
    expect(server.calls.some((c) => c.url.endsWith("/feedback"))).toBe(false);
  });

  it("queues a second submission instead of dropping it", async () => {
    const server = mockServer(2);
    const controller = await readyController(server);
    const first = controller.requestPlans("the venice task");
    const second = controller.sendFeedback("p1", "flotation vests first");
    await Promise.all([first, second]);
    const jobPosts = server.calls.filter(
      (c) => c.method === "POST" && (c.url.endsWith("/plan") || c.url.endsWith("/feedback")),
    );
    expect(jobPosts).toHaveLength(2);
    // the feedback job finished last, so its ranking is on screen
    expect(controller.state.cards.map((c) => c.plan_id)).toEqual(
      goldenFeedbackReports().map((r) => r.plan_id),
    );
  });
});
