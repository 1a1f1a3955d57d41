/** Typed client for the route-session HTTP API. */
export class ApiError extends Error {
    status;
    code;
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
async function parseError(response) {
    let code = "unknown";
    let message = response.statusText;
    try {
        const body = (await response.json());
        code = body.code ?? code;
        message = body.message ?? message;
    }
    catch {
        // non-JSON error body; keep the HTTP status text
    }
    return new ApiError(response.status, code, message);
}
export class Client {
    baseUrl;
    constructor(baseUrl) {
        this.baseUrl = baseUrl;
    }
    async request(path, init) {
        const response = await fetch(`${this.baseUrl}${path}`, {
            headers: { "content-type": "application/json" },
            ...init,
        });
        if (!response.ok) {
            throw await parseError(response);
        }
        return (await response.json());
    }
    uploadGraph(document) {
        return this.request("/graphs", {
            method: "POST",
            body: JSON.stringify(document),
        });
    }
    getGraph(graphId) {
        return this.request(`/graphs/${graphId}`);
    }
    createSession(graphId, source, target, heuristic = "middle") {
        return this.request("/sessions", {
            method: "POST",
            body: JSON.stringify({ graph_id: graphId, source, target, heuristic }),
        });
    }
    steer(sessionId, objective, direction) {
        return this.request(`/sessions/${sessionId}/steer`, {
            method: "POST",
            body: JSON.stringify({ objective, direction }),
        });
    }
    choose(sessionId, preferred) {
        return this.request(`/sessions/${sessionId}/choose`, {
            method: "POST",
            body: JSON.stringify({ preferred }),
        });
    }
    close(sessionId) {
        return this.request(`/sessions/${sessionId}/close`, { method: "POST" });
    }
    getSession(sessionId) {
        return this.request(`/sessions/${sessionId}`);
    }
}
