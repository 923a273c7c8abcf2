// Thin typed client over the session service. The fetch implementation is
// injectable so tests can replay recorded responses.

import type {
  Candidate,
  ChangeKind,
  ModelGraph,
  SessionState,
  StoredTheory,
  TheorySummary,
} from "./types.js";

export type FetchLike = (
  input: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private base: string = "",
    private fetcher: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const res = await this.fetcher(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const doc = (await res.json()) as Record<string, unknown>;
    if (res.status >= 400) {
      const message =
        typeof doc?.error === "string" ? doc.error : `HTTP ${res.status}`;
      throw new ApiError(res.status, message);
    }
    return doc as T;
  }

  postTheory(text: string): Promise<TheorySummary> {
    return this.request("POST", "/api/theories", { text });
  }

  getTheory(id: string): Promise<StoredTheory> {
    return this.request("GET", `/api/theories/${id}`);
  }

  openSession(theoryId: string): Promise<SessionState> {
    return this.request("POST", "/api/sessions", { theoryId });
  }

  getSession(id: string): Promise<SessionState> {
    return this.request("GET", `/api/sessions/${id}`);
  }

  requestChange(
    sessionId: string,
    kind: ChangeKind,
    law: string,
  ): Promise<{ candidates: Candidate[] }> {
    return this.request("POST", `/api/sessions/${sessionId}/${kind}`, { law });
  }

  select(sessionId: string, candidateId: string): Promise<SessionState> {
    return this.request("POST", `/api/sessions/${sessionId}/select`, {
      candidateId,
    });
  }

  undo(sessionId: string): Promise<SessionState> {
    return this.request("POST", `/api/sessions/${sessionId}/undo`);
  }

  getModel(sessionId: string): Promise<ModelGraph> {
    return this.request("GET", `/api/sessions/${sessionId}/model`);
  }
}
