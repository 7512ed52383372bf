// Thin typed client for the chat service; the UI talks to nothing else.

import type {
  AckEnvelope,
  AnswerEnvelope,
  ChatReply,
  SolveEnvelope,
} from "./types";

export class ApiRequestError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
  }
}

async function post<T>(base: string, path: string, body: unknown): Promise<T> {
  const response = await fetch(base + path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok) {
    throw new ApiRequestError(response.status, payload.detail ?? payload);
  }
  return payload as T;
}

export class ApiClient {
  constructor(public base: string = "") {}

  chat(text: string, sessionId: string | null): Promise<ChatReply> {
    return post<ChatReply>(this.base, "/chat", {
      session_id: sessionId,
      text,
    });
  }

  confirm(
    sessionId: string,
    editedParams: Record<string, unknown>,
  ): Promise<AnswerEnvelope> {
    return post<AnswerEnvelope>(this.base, "/confirm", {
      session_id: sessionId,
      edited_params: editedParams,
    });
  }

  compute(sessionId: string, computeToken: string): Promise<SolveEnvelope> {
    return post<SolveEnvelope>(this.base, "/compute", {
      session_id: sessionId,
      compute_token: computeToken,
    });
  }

  feedback(
    sessionId: string,
    stars: number,
    comment: string | null,
  ): Promise<AckEnvelope> {
    return post<AckEnvelope>(this.base, "/feedback", {
      session_id: sessionId,
      stars,
      comment,
    });
  }

  async deleteSession(sessionId: string): Promise<AckEnvelope> {
    const response = await fetch(this.base + "/session", {
      method: "DELETE",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ session_id: sessionId }),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiRequestError(response.status, payload.detail ?? payload);
    }
    return payload as AckEnvelope;
  }
}
