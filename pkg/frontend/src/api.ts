import type {
  ArgumentsResponse,
  CptDoc,
  EdgeAction,
  EdgeEditResponse,
  GraphDoc,
  QueryResponse,
  SessionDoc,
} from "./types.js";

/** Error body produced by the service: {code, message} plus HTTP status. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client; the UI never computes probabilities itself. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const code = body?.code ?? "error";
      const message = body?.message ?? `request failed (${response.status})`;
      throw new ApiError(response.status, code, message);
    }
    return body as T;
  }

  graph(): Promise<GraphDoc> {
    return this.request("/api/graph");
  }

  cpt(node: string, sessionId?: string): Promise<CptDoc> {
    const suffix = sessionId ? `?session_id=${encodeURIComponent(sessionId)}` : "";
    return this.request(`/api/cpt/${encodeURIComponent(node)}${suffix}`);
  }

  createSession(): Promise<SessionDoc> {
    return this.request("/api/session", { method: "POST" });
  }

  editEdge(
    sessionId: string,
    action: EdgeAction,
    from: string,
    to: string,
  ): Promise<EdgeEditResponse> {
    return this.request(`/api/session/${encodeURIComponent(sessionId)}/edge`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ action, from, to }),
    });
  }

  query(
    evidence: Record<string, number>,
    target: string,
    sessionId?: string,
  ): Promise<QueryResponse> {
    return this.request("/api/query", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ session_id: sessionId ?? null, evidence, target }),
    });
  }

  arguments(
    target: string,
    maxEvidence: number,
    sessionId?: string,
  ): Promise<ArgumentsResponse> {
    const params = new URLSearchParams({
      target,
      max_evidence: String(maxEvidence),
    });
    if (sessionId) params.set("session_id", sessionId);
    return this.request(`/api/arguments?${params.toString()}`);
  }
}
