/** Browser bootstrap: mount the app, delegate events to the controller. */

import { ApiClient } from "./api.js";
import { Controller } from "./controller.js";
import { renderApp } from "./render.js";

function text(selector: string): string {
  const el = document.querySelector<HTMLInputElement>(selector);
  return el ? el.value : "";
}

export function mount(root: HTMLElement, baseUrl = ""): Controller {
  const controller = new Controller(new ApiClient(baseUrl), (state) => {
    const focused = document.activeElement as HTMLElement | null;
    const keep = focused?.dataset?.action;
    root.innerHTML = renderApp(state);
    if (keep) {
      root.querySelector<HTMLElement>(`[data-action="${keep}"]`)?.focus();
    }
  });

  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) return;
    const id = target.dataset.id ?? "";
    const plan = target.dataset.plan ?? "";
    switch (target.dataset.action) {
      case "add-hard":
        void controller.submitConstraint(text('[data-action="constraint-text"]'), "hard");
        break;
      case "add-soft":
        void controller.submitConstraint(text('[data-action="constraint-text"]'), "soft");
        break;
      case "confirm-accept":
        void controller.confirmConstraint(id, true);
        break;
      case "confirm-reject":
        void controller.confirmConstraint(id, false);
        break;
      case "remove-constraint":
        void controller.removeConstraint(id);
        break;
      case "request-plans":
        void controller.requestPlans(text('[data-action="task-text"]'));
        break;
      case "send-feedback":
        void controller.sendFeedback(plan, controller.state.feedbackDrafts[plan] ?? "");
        break;
      case "retry":
        void controller.retry();
        break;
    }
  });

  root.addEventListener("input", (event) => {
    const target = event.target as HTMLElement;
    if (target.dataset.action === "feedback-draft") {
      controller.setFeedbackDraft(target.dataset.plan ?? "", (target as HTMLTextAreaElement).value);
    }
    if (target.dataset.action === "task-text") {
      controller.setTaskDraft((target as HTMLInputElement).value);
    }
  });

  void controller.init();
  return controller;
}

declare global {
  interface Window {
    plancheck?: Controller;
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    window.plancheck = mount(root);
  }
}
