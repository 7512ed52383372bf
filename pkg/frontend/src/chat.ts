// Chat surface: transcript, one pending confirmation panel at a time,
// compute buttons gated by the server's computability flag, and replayable
// state. Everything rendered derives from server envelopes; the envelope
// log is kept in sessionStorage so a mid-conversation reload reconstructs
// the exact same view.

import { ApiClient, ApiRequestError } from "./api";
import { renderCodeBlock } from "./codeblock";
import { renderConfirmation } from "./confirmation";
import type {
  AnswerEnvelope,
  ChatReply,
  ConfirmationEnvelope,
  SolveEnvelope,
} from "./types";

type LogEntry =
  | { kind: "user"; text: string }
  | { kind: "envelope"; envelope: ChatReply | SolveEnvelope };

const STORAGE_KEY = "qchat-log";

export class ChatApp {
  readonly root: HTMLElement;
  private transcript: HTMLElement;
  private pendingSlot: HTMLElement;
  private input: HTMLInputElement;
  private sessionId: string | null = null;
  private log: LogEntry[] = [];

  constructor(
    private api: ApiClient,
    mount: HTMLElement,
  ) {
    this.root = mount;
    this.transcript = document.createElement("div");
    this.transcript.className = "transcript";
    this.pendingSlot = document.createElement("div");
    this.pendingSlot.className = "pending-slot";

    const composer = document.createElement("form");
    composer.className = "composer";
    this.input = document.createElement("input");
    this.input.className = "composer-input";
    this.input.placeholder = "Ask about a gate, a route, or a knapsack...";
    const send = document.createElement("button");
    send.type = "submit";
    send.textContent = "Send";
    composer.appendChild(this.input);
    composer.appendChild(send);
    composer.addEventListener("submit", (event) => {
      event.preventDefault();
      const text = this.input.value.trim();
      if (text) {
        this.input.value = "";
        void this.send(text);
      }
    });

    mount.appendChild(this.transcript);
    mount.appendChild(this.pendingSlot);
    mount.appendChild(composer);
    this.restore();
  }

  // -- state persistence ---

  private persist() {
    sessionStorage.setItem(
      STORAGE_KEY,
      JSON.stringify({ sessionId: this.sessionId, log: this.log }),
    );
  }

  private restore() {
    const raw = sessionStorage.getItem(STORAGE_KEY);
    if (!raw) return;
    try {
      const saved = JSON.parse(raw) as {
        sessionId: string | null;
        log: LogEntry[];
      };
      this.sessionId = saved.sessionId;
      for (const entry of saved.log) {
        this.log.push(entry);
        if (entry.kind === "user") this.renderUser(entry.text);
        else this.renderEnvelope(entry.envelope, { replay: true });
      }
    } catch {
      sessionStorage.removeItem(STORAGE_KEY);
    }
  }

  // -- flow ---

  async send(text: string): Promise<void> {
    this.renderUser(text);
    this.log.push({ kind: "user", text });
    try {
      const reply = await this.api.chat(text, this.sessionId);
      this.sessionId = reply.session_id;
      this.log.push({ kind: "envelope", envelope: reply });
      this.renderEnvelope(reply, { replay: false });
    } catch (error) {
      this.renderNotice(this.describeError(error));
    }
    this.persist();
  }

  private async confirm(
    envelope: ConfirmationEnvelope,
    edited: Record<string, unknown>,
  ): Promise<void> {
    try {
      const answer = await this.api.confirm(envelope.session_id, edited);
      this.pendingSlot.replaceChildren();
      this.log.push({ kind: "envelope", envelope: answer });
      this.renderEnvelope(answer, { replay: false });
    } catch (error) {
      this.renderNotice(this.describeError(error));
    }
    this.persist();
  }

  private async compute(answer: AnswerEnvelope): Promise<void> {
    if (!answer.compute?.compute_token) return;
    this.renderNotice("Computing on the backend...");
    try {
      const solve = await this.api.compute(
        answer.session_id,
        answer.compute.compute_token,
      );
      this.log.push({ kind: "envelope", envelope: solve });
      this.renderEnvelope(solve, { replay: false });
    } catch (error) {
      this.renderNotice(this.describeError(error));
    }
    this.persist();
  }

  private describeError(error: unknown): string {
    if (error instanceof ApiRequestError) {
      const detail = error.detail as { field?: string; message?: string };
      if (detail && typeof detail === "object" && detail.field) {
        return `Problem with ${detail.field}: ${detail.message}`;
      }
      return `The service answered ${error.status}: ${error.message}`;
    }
    return `Request failed: ${String(error)}`;
  }

  // -- rendering ---

  private renderUser(text: string) {
    const bubble = document.createElement("div");
    bubble.className = "message user";
    bubble.textContent = text;
    this.transcript.appendChild(bubble);
  }

  private renderNotice(text: string) {
    const bubble = document.createElement("div");
    bubble.className = "message notice";
    bubble.textContent = text;
    this.transcript.appendChild(bubble);
  }

  private renderEnvelope(
    envelope: ChatReply | SolveEnvelope,
    options: { replay: boolean },
  ) {
    if (envelope.kind === "confirmation") {
      // at most one pending panel is ever visible
      this.pendingSlot.replaceChildren(
        renderConfirmation(envelope, (edited) => {
          void this.confirm(envelope, edited);
        }),
      );
      const bubble = document.createElement("div");
      bubble.className = "message assistant";
      bubble.textContent = envelope.restatement;
      this.transcript.appendChild(bubble);
      return;
    }

    this.pendingSlot.replaceChildren();
    const bubble = document.createElement("div");
    bubble.className = "message assistant";

    const text = document.createElement("p");
    text.textContent = envelope.text;
    bubble.appendChild(text);

    if (envelope.kind === "answer") {
      if (envelope.diagram) {
        const diagram = document.createElement("pre");
        diagram.className = "diagram";
        diagram.textContent = envelope.diagram;
        bubble.appendChild(diagram);
      }
      if (envelope.final_state) {
        const state = document.createElement("p");
        state.className = "final-state";
        state.textContent = envelope.final_state;
        bubble.appendChild(state);
      }
      if (envelope.code) {
        bubble.appendChild(renderCodeBlock(envelope.code));
      }
      // the compute button appears only when the server says the instance
      // fits its in-process ceiling (fresh answers only; a replayed token
      // may already be spent, so the button is not restored)
      if (envelope.compute?.available && !options.replay) {
        const computeButton = document.createElement("button");
        computeButton.type = "button";
        computeButton.className = "compute-button";
        computeButton.textContent = "Compute the solution here";
        computeButton.addEventListener("click", () => {
          computeButton.disabled = true;
          void this.compute(envelope);
        });
        bubble.appendChild(computeButton);
      } else if (envelope.compute && !envelope.compute.available) {
        const reason = document.createElement("p");
        reason.className = "compute-unavailable";
        reason.textContent = envelope.compute.reason ?? "";
        bubble.appendChild(reason);
      }
    }

    if (envelope.kind === "solve") {
      const solution = document.createElement("pre");
      solution.className = "solution";
      solution.textContent = JSON.stringify(envelope.solution, null, 2);
      bubble.appendChild(solution);
    }

    this.transcript.appendChild(bubble);
  }
}
