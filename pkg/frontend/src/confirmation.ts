// Editable parameter form shown for every confirmation envelope.
// Every extracted field is editable; missing fields are highlighted; the
// submit button posts the edited params to /confirm. Client-side checks
// mirror the server's 422 rules so most mistakes never leave the browser.

import type { ConfirmationEnvelope } from "./types";

export interface ConfirmationSubmit {
  (editedParams: Record<string, unknown>): void;
}

interface FieldValidation {
  ok: boolean;
  message?: string;
}

function numberField(value: string): FieldValidation {
  if (value.trim() === "") return { ok: false, message: "required" };
  const parsed = Number(value);
  if (!Number.isFinite(parsed)) return { ok: false, message: "must be a number" };
  return { ok: true };
}

function positiveIntegerField(value: string): FieldValidation {
  const base = numberField(value);
  if (!base.ok) return base;
  const parsed = Number(value);
  if (parsed <= 0) return { ok: false, message: "must be positive" };
  if (!Number.isInteger(parsed)) {
    return { ok: false, message: "must be an integer (scale everything up)" };
  }
  return { ok: true };
}

function nonNegativeNumberField(value: string): FieldValidation {
  const base = numberField(value);
  if (!base.ok) return base;
  if (Number(value) < 0) return { ok: false, message: "must be nonnegative" };
  return { ok: true };
}

type Validator = (value: string) => FieldValidation;

interface FieldSpec {
  key: string; // key into the submitted params structure, "a.b" for nested
  label: string;
  value: string;
  validator: Validator;
  missing: boolean;
  assumed?: boolean;
}

function gateFields(envelope: ConfirmationEnvelope): FieldSpec[] {
  const params = envelope.params;
  const missing = new Set(envelope.missing_fields);
  const fields: FieldSpec[] = [];
  for (const slot of ["phase_shift", "angle"]) {
    if (slot in params || missing.has(slot)) {
      const raw = params[slot];
      fields.push({
        key: slot,
        label: slot === "phase_shift" ? "phase shift (rad)" : "angle (rad)",
        value: raw == null ? "" : String(raw),
        validator: numberField,
        missing: missing.has(slot),
      });
    }
  }
  if ("initial_state" in params || missing.has("initial_state")) {
    const raw = params["initial_state"];
    fields.push({
      key: "initial_state",
      label: "initial state",
      value: raw == null ? "" : String(raw),
      validator: (v) =>
        v.trim() === "" ? { ok: false, message: "required, e.g. |0>" } : { ok: true },
      missing: missing.has("initial_state"),
    });
  }
  return fields;
}

function tspFields(envelope: ConfirmationEnvelope): FieldSpec[] {
  const cities = (envelope.params["cities"] as string[]) ?? [];
  const distances =
    (envelope.params["distances"] as Record<string, number>) ?? {};
  const missing = envelope.missing_fields;
  const assumed = new Set(envelope.assumed_fields);
  const fields: FieldSpec[] = [];
  for (const from of cities) {
    for (const to of cities) {
      if (from === to) continue;
      const key = `${from}->${to}`;
      const value = distances[key];
      fields.push({
        key: `distances.${key}`,
        label: `distance ${from} to ${to}`,
        value: value == null ? "" : String(value),
        validator: nonNegativeNumberField,
        missing: missing.some((m) => m.includes(key)),
        assumed: assumed.has(key),
      });
    }
  }
  return fields;
}

function kpFields(envelope: ConfirmationEnvelope): FieldSpec[] {
  const items = (envelope.params["items"] as string[]) ?? [];
  const weights = (envelope.params["weights"] as Record<string, number>) ?? {};
  const values = (envelope.params["values"] as Record<string, number>) ?? {};
  const missing = new Set(envelope.missing_fields);
  const fields: FieldSpec[] = [];
  for (const item of items) {
    fields.push({
      key: `weights.${item}`,
      label: `${item}: weight`,
      value: weights[item] == null ? "" : String(weights[item]),
      validator: positiveIntegerField,
      missing: missing.has(`weight:${item}`),
    });
    fields.push({
      key: `values.${item}`,
      label: `${item}: value`,
      value: values[item] == null ? "" : String(values[item]),
      validator: positiveIntegerField,
      missing: missing.has(`value:${item}`),
    });
  }
  const capacity = envelope.params["capacity"];
  fields.push({
    key: "capacity",
    label: "capacity (max weight)",
    value: capacity == null ? "" : String(capacity),
    validator: positiveIntegerField,
    missing: missing.has("capacity"),
  });
  return fields;
}

function assign(target: Record<string, unknown>, path: string, value: unknown) {
  const parts = path.split(".");
  let cursor = target;
  for (const part of parts.slice(0, -1)) {
    cursor[part] = cursor[part] ?? {};
    cursor = cursor[part] as Record<string, unknown>;
  }
  cursor[parts[parts.length - 1]] = value;
}

export function renderConfirmation(
  envelope: ConfirmationEnvelope,
  onSubmit: ConfirmationSubmit,
): HTMLElement {
  const panel = document.createElement("form");
  panel.className = "pending-panel";

  const restatement = document.createElement("p");
  restatement.className = "restatement";
  restatement.textContent = envelope.restatement;
  panel.appendChild(restatement);

  let fields: FieldSpec[];
  if (envelope.intent === "solve_tsp") fields = tspFields(envelope);
  else if (envelope.intent === "solve_kp") fields = kpFields(envelope);
  else fields = gateFields(envelope);

  const inputs = new Map<string, { input: HTMLInputElement; spec: FieldSpec; error: HTMLElement }>();

  for (const spec of fields) {
    const row = document.createElement("label");
    row.className = "field-row";

    const caption = document.createElement("span");
    caption.textContent = spec.label + (spec.assumed ? " (assumed symmetric)" : "");
    row.appendChild(caption);

    const input = document.createElement("input");
    input.name = spec.key;
    input.value = spec.value;
    if (spec.missing) {
      input.classList.add("missing");
      input.placeholder = "missing - please fill in";
    }
    row.appendChild(input);

    const error = document.createElement("span");
    error.className = "field-error";
    row.appendChild(error);

    inputs.set(spec.key, { input, spec, error });
    panel.appendChild(row);
  }

  const submit = document.createElement("button");
  submit.type = "submit";
  submit.className = "confirm-button";
  submit.textContent = "Looks right - answer";
  panel.appendChild(submit);

  panel.addEventListener("submit", (event) => {
    event.preventDefault();
    let allValid = true;
    const edited: Record<string, unknown> = JSON.parse(
      JSON.stringify(envelope.params),
    );
    for (const { input, spec, error } of inputs.values()) {
      const check = spec.validator(input.value);
      if (!check.ok) {
        allValid = false;
        input.classList.add("invalid");
        error.textContent = check.message ?? "invalid";
        continue;
      }
      input.classList.remove("invalid");
      error.textContent = "";
      const numeric = Number(input.value);
      assign(
        edited,
        spec.key,
        Number.isFinite(numeric) && input.value.trim() !== "" && spec.key !== "initial_state"
          ? numeric
          : input.value,
      );
    }
    if (allValid) onSubmit(edited);
  });

  return panel;
}
