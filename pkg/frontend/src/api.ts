/** Typed client for the route-session HTTP API. */

export interface ObjectiveMeta {
  name: string;
  unit: string;
}

export interface RouteView {
  value: number[];
  objectives: ObjectiveMeta[];
  nodes: string[];
  polyline: [number, number][] | null;
  deltas?: number[];
}

export type SessionStatus = "active" | "exhausted" | "closed";

export interface SessionSnapshot {
  session_id: string;
  status: SessionStatus;
  pending_comparison: boolean;
  incumbent: RouteView;
  best: RouteView;
  candidate?: RouteView;
  objectives: ObjectiveMeta[];
  transcript?: unknown[];
}

export interface SteerCandidateResponse {
  session_id: string;
  status: "candidate";
  candidate: RouteView;
  incumbent: RouteView;
  oracle_seconds: number;
}

export interface SteerExhaustedResponse {
  session_id: string;
  status: "exhausted";
  best: RouteView;
}

export type SteerResponse = SteerCandidateResponse | SteerExhaustedResponse;

export interface ChooseResponse {
  session_id: string;
  status: SessionStatus;
  best: RouteView;
}

export interface GraphDocument {
  objectives: { name: string; unit: string }[];
  nodes: { id: string; lon?: number; lat?: number }[];
  edges: { from: string; to: string; costs: number[] }[];
}

export type Direction = "improve" | "relax";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "unknown";
  let message = response.statusText;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    code = body.code ?? code;
    message = body.message ?? message;
  } catch {
    // non-JSON error body; keep the HTTP status text
  }
  return new ApiError(response.status, code, message);
}

export class Client {
  constructor(readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  uploadGraph(document: GraphDocument): Promise<{ graph_id: string }> {
    return this.request("/graphs", {
      method: "POST",
      body: JSON.stringify(document),
    });
  }

  getGraph(graphId: string): Promise<GraphDocument> {
    return this.request(`/graphs/${graphId}`);
  }

  createSession(
    graphId: string,
    source: string,
    target: string,
    heuristic: "closest" | "middle" = "middle",
  ): Promise<SessionSnapshot> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ graph_id: graphId, source, target, heuristic }),
    });
  }

  steer(sessionId: string, objective: number, direction: Direction): Promise<SteerResponse> {
    return this.request(`/sessions/${sessionId}/steer`, {
      method: "POST",
      body: JSON.stringify({ objective, direction }),
    });
  }

  choose(sessionId: string, preferred: "candidate" | "incumbent"): Promise<ChooseResponse> {
    return this.request(`/sessions/${sessionId}/choose`, {
      method: "POST",
      body: JSON.stringify({ preferred }),
    });
  }

  close(sessionId: string): Promise<ChooseResponse> {
    return this.request(`/sessions/${sessionId}/close`, { method: "POST" });
  }

  getSession(sessionId: string): Promise<SessionSnapshot> {
    return this.request(`/sessions/${sessionId}`);
  }
}
