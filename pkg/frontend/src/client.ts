import type {
  AnalysisDoc,
  ApiErrorBody,
  AppliedEvent,
  BaseDoc,
  EventBody,
  ProposalStatus,
  ProveResponse,
  SessionDoc,
  SessionSummary,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(`${body.error}: ${body.detail ?? ""}`);
    this.status = status;
    this.code = body.error;
    this.body = body;
  }
}

async function parseError(response: Response): Promise<never> {
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = { error: `HTTP${response.status}`, detail: response.statusText };
  }
  throw new ApiError(response.status, body);
}

export class ElenchusClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      return parseError(response);
    }
    return (await response.json()) as T;
  }

  createSession(name: string): Promise<{ sessionId: string }> {
    return this.request("POST", "/sessions", { name });
  }

  listSessions(): Promise<SessionSummary[]> {
    return this.request("GET", "/sessions");
  }

  getSession(sessionId: string): Promise<SessionDoc> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  appendEvent(sessionId: string, event: EventBody): Promise<AppliedEvent> {
    return this.request("POST", `/sessions/${sessionId}/events`, event);
  }

  requestOracle(sessionId: string): Promise<{ status: string }> {
    return this.request("POST", `/sessions/${sessionId}/oracle`);
  }

  getProposals(sessionId: string): Promise<ProposalStatus> {
    return this.request("GET", `/sessions/${sessionId}/proposals`);
  }

  getBase(sessionId: string): Promise<BaseDoc> {
    return this.request("GET", `/sessions/${sessionId}/base`);
  }

  getAnalysis(sessionId: string): Promise<AnalysisDoc> {
    return this.request("GET", `/sessions/${sessionId}/analysis`);
  }

  prove(body: {
    sequent: string;
    sessionId?: string;
    base?: BaseDoc;
    proof?: boolean;
  }): Promise<ProveResponse> {
    return this.request("POST", "/prove", body);
  }
}
