/** Pure renderers: view state in, HTML strings out.
 *
 * Rendering is deliberately side-effect free so the same state always
 * produces the same markup; the browser layer only swaps innerHTML and
 * wires events.
 */

import type { ConstraintNode, ViewState } from "./state.js";
import type { ConstraintDoc, PlanDoc, ReportDoc, ViolationDoc } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function renderStars(rating: number): string {
  return "★".repeat(rating) + "☆".repeat(5 - rating);
}

/** The data a plan card displays; violations are the report's, verbatim. */
export interface CardView {
  planId: string;
  title: string;
  valid: boolean;
  violations: ViolationDoc[];
  satisfied: string[];
  soft: { rating: number; explanation: string } | null;
  steps: string[];
}

export function cardView(report: ReportDoc, plansById: Record<string, PlanDoc>): CardView {
  const plan = plansById[report.plan_id];
  return {
    planId: report.plan_id,
    title: plan ? plan.title : report.plan_id,
    valid: report.valid,
    violations: report.violations,
    satisfied: report.satisfied,
    soft: report.soft,
    steps: plan ? plan.steps.map((s) => s.description) : [],
  };
}

function renderNode(node: ConstraintNode): string {
  const c = node.constraint;
  const classes = ["node", c.kind, c.status];
  if (node.optimistic) classes.push("optimistic");
  const badge =
    c.status === "confirmed"
      ? '<span class="badge confirmed">confirmed</span>'
      : '<span class="badge pending">pending</span>';
  const error = node.error ? `<span class="badge error">${escapeHtml(node.error)}</span>` : "";
  // soft nodes never show formal text; hard nodes show theirs once translated
  const formal =
    c.kind === "hard" && c.ltl !== null
      ? `<code class="ltl">${escapeHtml(c.ltl)}</code>`
      : "";
  return `<li class="${classes.join(" ")}" data-id="${escapeHtml(c.id)}" draggable="true">
    <span class="nl">${escapeHtml(c.nl_text)}</span> ${badge}${error}
    ${formal}
    <button data-action="remove-constraint" data-id="${escapeHtml(c.id)}">✕</button>
  </li>`;
}

export function renderConstraintBins(state: ViewState): string {
  const bin = (label: string, kind: string, nodes: ConstraintNode[]) => `
  <section class="bin ${kind}">
    <h2>${label}</h2>
    <ul>${nodes.map(renderNode).join("\n")}</ul>
  </section>`;
  return bin("Hard rules", "hard", state.hardNodes) + bin("Soft preferences", "soft", state.softNodes);
}

export function renderConfirmDialog(constraint: ConstraintDoc): string {
  const reading = constraint.back_translation ?? "";
  return `<div class="dialog" data-id="${escapeHtml(constraint.id)}">
    <h3>Confirm translation</h3>
    <p class="original">${escapeHtml(constraint.nl_text)}</p>
    <p class="back-translation">${escapeHtml(reading)}</p>
    <code class="ltl">${escapeHtml(constraint.ltl ?? "")}</code>
    <button data-action="confirm-accept" data-id="${escapeHtml(constraint.id)}">Looks right</button>
    <button data-action="confirm-reject" data-id="${escapeHtml(constraint.id)}">Delete and re-enter</button>
  </div>`;
}

function renderCard(view: CardView, draft: string): string {
  const violations = view.violations.length
    ? `<ul class="violations">${view.violations
        .map(
          (v) =>
            `<li data-constraint="${escapeHtml(v.constraint_id)}">${escapeHtml(v.nl_text)}${
              v.witness_index === null ? "" : ` <span class="witness">(step ${v.witness_index})</span>`
            }</li>`,
        )
        .join("\n")}</ul>`
    : '<p class="all-clear">No hard rules violated.</p>';
  const soft = view.soft
    ? `<p class="soft"><span class="stars">${renderStars(view.soft.rating)}</span> ${escapeHtml(
        view.soft.explanation,
      )}</p>`
    : "";
  const steps = view.steps.map((s) => `<li>${escapeHtml(s)}</li>`).join("\n");
  const sendDisabled = draft.trim() === "" ? " disabled" : "";
  return `<article class="card ${view.valid ? "valid" : "invalid"}" data-plan="${escapeHtml(view.planId)}">
    <h3>${escapeHtml(view.title)}</h3>
    <ol class="steps">${steps}</ol>
    ${violations}
    ${soft}
    <div class="feedback">
      <textarea data-action="feedback-draft" data-plan="${escapeHtml(view.planId)}">${escapeHtml(draft)}</textarea>
      <button data-action="send-feedback" data-plan="${escapeHtml(view.planId)}"${sendDisabled}>Send feedback</button>
    </div>
  </article>`;
}

export function renderPlanCards(state: ViewState): string {
  // cards stay in the order the server ranked them
  const cards = state.cards
    .map((report) => renderCard(cardView(report, state.plansById), state.feedbackDrafts[report.plan_id] ?? ""))
    .join("\n");
  const spinner = state.busy ? '<div class="spinner">verifying…</div>' : "";
  const retry = state.jobError
    ? `<div class="job-error">${escapeHtml(state.jobError)} <button data-action="retry">Retry</button></div>`
    : "";
  return `<section class="cards">${spinner}${retry}${cards}</section>`;
}

export function renderApp(state: ViewState): string {
  const dialog = state.dialog ? renderConfirmDialog(state.dialog) : "";
  return `<main>
  <section class="define">
    <input type="text" data-action="constraint-text" placeholder="State a rule in plain language">
    <button data-action="add-hard">Add hard rule</button>
    <button data-action="add-soft">Add soft preference</button>
    ${renderConstraintBins(state)}
  </section>
  <section class="plan">
    <input type="text" data-action="task-text" value="${escapeHtml(state.taskDraft)}" placeholder="Describe the planning task">
    <button data-action="request-plans">Generate plans</button>
    ${renderPlanCards(state)}
  </section>
  ${dialog}
</main>`;
}
