// DOM behavior of the individual widgets, without a backend.
import { beforeEach, describe, expect, it, vi } from "vitest";

import { renderCodeBlock } from "../src/codeblock";
import { renderConfirmation } from "../src/confirmation";
import { renderFeedbackWidget } from "../src/feedback";
import type { ConfirmationEnvelope } from "../src/types";

function clipboardSpy() {
  const writeText = vi.fn().mockResolvedValue(undefined);
  Object.defineProperty(globalThis.navigator, "clipboard", {
    value: { writeText },
    configurable: true,
  });
  return writeText;
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("code block", () => {
  it("copies the source text verbatim", async () => {
    const writeText = clipboardSpy();
    const source = "from qiskit import QuantumCircuit\nprint('hi')\n";
    const block = renderCodeBlock({
      framework_tag: "qiskit>=1.0",
      source_text: source,
      template_id: "draw_gate",
    });
    document.body.appendChild(block);
    (block.querySelector(".copy-button") as HTMLButtonElement).click();
    await Promise.resolve();
    expect(writeText).toHaveBeenCalledWith(source);
  });

  it("disables the button for an empty block", () => {
    const block = renderCodeBlock({
      framework_tag: "qiskit>=1.0",
      source_text: "",
      template_id: "draw_gate",
    });
    const button = block.querySelector(".copy-button") as HTMLButtonElement;
    expect(button.disabled).toBe(true);
  });

  it("shows the framework tag next to the button", () => {
    const block = renderCodeBlock({
      framework_tag: "qiskit>=1.0",
      source_text: "print(1)",
      template_id: "draw_gate",
    });
    expect(block.querySelector(".framework-tag")?.textContent).toBe("qiskit>=1.0");
  });

  it("falls back to selecting the text when the clipboard is denied", async () => {
    Object.defineProperty(globalThis.navigator, "clipboard", {
      value: { writeText: vi.fn().mockRejectedValue(new Error("denied")) },
      configurable: true,
    });
    const block = renderCodeBlock({
      framework_tag: "qiskit>=1.0",
      source_text: "print(1)",
      template_id: "draw_gate",
    });
    document.body.appendChild(block);
    (block.querySelector(".copy-button") as HTMLButtonElement).click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    const selection = window.getSelection();
    expect(selection?.toString()).toContain("print(1)");
  });
});

describe("confirmation form", () => {
  const tspEnvelope: ConfirmationEnvelope = {
    schema_version: "1",
    kind: "confirmation",
    session_id: "s1",
    intent: "solve_tsp",
    gate: null,
    restatement: "You asked me to solve a travelling-salesperson problem.",
    params: {
      cities: ["Bern", "Basel"],
      distances: { "Bern->Basel": 3, "Basel->Bern": 3 },
    },
    missing_fields: [],
    assumed_fields: ["Basel->Bern"],
    options: ["accept", "modify"],
  };

  it("makes every extracted field editable and submits the edits", () => {
    const submitted: Record<string, unknown>[] = [];
    const form = renderConfirmation(tspEnvelope, (edited) => submitted.push(edited));
    document.body.appendChild(form);
    const input = form.querySelector(
      'input[name="distances.Bern->Basel"]',
    ) as HTMLInputElement;
    expect(input).not.toBeNull();
    input.value = "7";
    form.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(submitted).toHaveLength(1);
    const distances = submitted[0]["distances"] as Record<string, number>;
    expect(distances["Bern->Basel"]).toBe(7);
    expect(distances["Basel->Bern"]).toBe(3);
  });

  it("marks assumed symmetric distances", () => {
    const form = renderConfirmation(tspEnvelope, () => {});
    expect(form.textContent).toContain("assumed symmetric");
  });

  it("highlights missing fields and blocks submit until filled", () => {
    const envelope: ConfirmationEnvelope = {
      ...tspEnvelope,
      params: { cities: ["Bern", "Basel"], distances: { "Bern->Basel": 3 } },
      missing_fields: ["distance Basel->Bern"],
      assumed_fields: [],
    };
    const submitted: unknown[] = [];
    const form = renderConfirmation(envelope, (edited) => submitted.push(edited));
    document.body.appendChild(form);
    const missing = form.querySelector(
      'input[name="distances.Basel->Bern"]',
    ) as HTMLInputElement;
    expect(missing.classList.contains("missing")).toBe(true);
    form.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(submitted).toHaveLength(0); // empty field blocks the submit
    missing.value = "4";
    form.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(submitted).toHaveLength(1);
  });

  it("mirrors the server's integer rule for knapsack weights", () => {
    const envelope: ConfirmationEnvelope = {
      schema_version: "1",
      kind: "confirmation",
      session_id: "s2",
      intent: "solve_kp",
      gate: null,
      restatement: "You asked me to solve a knapsack problem.",
      params: {
        items: ["tent"],
        weights: { tent: 2.5 },
        values: { tent: 3 },
        capacity: 7,
      },
      missing_fields: [],
      assumed_fields: [],
      options: ["accept", "modify"],
    };
    const submitted: unknown[] = [];
    const form = renderConfirmation(envelope, (edited) => submitted.push(edited));
    document.body.appendChild(form);
    form.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(submitted).toHaveLength(0);
    expect(form.textContent).toContain("integer");
  });

  it("renders gate parameter fields", () => {
    const envelope: ConfirmationEnvelope = {
      schema_version: "1",
      kind: "confirmation",
      session_id: "s3",
      intent: "apply_gate",
      gate: "phase",
      restatement: "You asked me to apply the Phase gate.",
      params: { gate: "phase", phase_shift: 1.5708, initial_state: "|0>" },
      missing_fields: [],
      assumed_fields: [],
      options: ["accept", "modify"],
    };
    const form = renderConfirmation(envelope, () => {});
    expect(form.querySelector('input[name="phase_shift"]')).not.toBeNull();
    expect(form.querySelector('input[name="initial_state"]')).not.toBeNull();
  });
});

describe("feedback widget", () => {
  it("disables submit until stars are selected", () => {
    const widget = renderFeedbackWidget(async () => {});
    document.body.appendChild(widget);
    const submit = widget.querySelector(".feedback-submit") as HTMLButtonElement;
    expect(submit.disabled).toBe(true);
    (widget.querySelectorAll(".star")[4] as HTMLButtonElement).click();
    expect(submit.disabled).toBe(false);
  });

  it("counts the comment and disables submit past 2000 chars", () => {
    const widget = renderFeedbackWidget(async () => {});
    document.body.appendChild(widget);
    (widget.querySelectorAll(".star")[2] as HTMLButtonElement).click();
    const comment = widget.querySelector(".feedback-comment") as HTMLTextAreaElement;
    comment.value = "x".repeat(2001);
    comment.dispatchEvent(new Event("input"));
    const submit = widget.querySelector(".feedback-submit") as HTMLButtonElement;
    expect(submit.disabled).toBe(true);
    expect(widget.querySelector(".comment-counter")?.textContent).toBe("2001/2000");
    comment.value = "fine";
    comment.dispatchEvent(new Event("input"));
    expect(submit.disabled).toBe(false);
  });

  it("resets after a successful submission", async () => {
    const calls: Array<[number, string | null]> = [];
    const widget = renderFeedbackWidget(async (stars, comment) => {
      calls.push([stars, comment]);
    });
    document.body.appendChild(widget);
    (widget.querySelectorAll(".star")[4] as HTMLButtonElement).click();
    (widget.querySelector(".feedback-submit") as HTMLButtonElement).click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(calls).toEqual([[5, null]]);
    expect(widget.querySelector(".feedback-toast")?.textContent).toContain("Thanks");
    expect((widget.querySelector(".feedback-submit") as HTMLButtonElement).disabled).toBe(true);
  });
});
