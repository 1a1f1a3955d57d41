/** Client-side session state machine.
 *
 * Mirrors the server snapshot and enforces the interaction protocol locally:
 * one candidate at a time, a pending comparison blocks further steering, and
 * nothing mutates after the session is finished.
 */
import { ApiError, } from "./api.js";
export class ProtocolError extends Error {
}
export class SessionController {
    client;
    state;
    inFlight = false;
    constructor(client, state) {
        this.client = client;
        this.state = state;
    }
    static async create(client, graphId, source, target) {
        const snapshot = await client.createSession(graphId, source, target);
        return new SessionController(client, {
            sessionId: snapshot.session_id,
            status: snapshot.status,
            objectives: snapshot.objectives,
            incumbent: snapshot.incumbent,
            candidate: snapshot.candidate ?? null,
            history: [snapshot.incumbent],
            queryCount: 0,
            notice: null,
        });
    }
    get pendingComparison() {
        return this.state.candidate !== null;
    }
    canSteer() {
        return (this.state.status === "active" && !this.pendingComparison && !this.inFlight);
    }
    canChoose() {
        return (this.state.status !== "closed" && this.pendingComparison && !this.inFlight);
    }
    /** Ask for a route that moves the given objective; stages a comparison. */
    async sendSteer(objective, direction) {
        if (this.pendingComparison) {
            throw new ProtocolError("answer the pending comparison first");
        }
        if (this.state.status !== "active") {
            throw new ProtocolError(`session is ${this.state.status}`);
        }
        this.inFlight = true;
        try {
            const response = await this.client.steer(this.state.sessionId, objective, direction);
            if (response.status === "exhausted") {
                this.state.status = "exhausted";
                this.state.incumbent = response.best;
                this.state.candidate = null;
                this.state.notice = "no further improvement is possible";
            }
            else {
                this.state.incumbent = response.incumbent;
                this.state.candidate = response.candidate;
                this.state.history.push(response.candidate);
                this.state.queryCount += 1;
                this.state.notice = null;
            }
        }
        catch (error) {
            await this.handleApiError(error);
        }
        finally {
            this.inFlight = false;
        }
    }
    /** Resolve the staged comparison in favor of one side. */
    async sendChoice(preferred) {
        if (!this.pendingComparison) {
            throw new ProtocolError("no comparison is pending");
        }
        this.inFlight = true;
        try {
            const response = await this.client.choose(this.state.sessionId, preferred);
            this.state.incumbent = response.best;
            this.state.candidate = null;
            this.state.status = response.status;
            this.state.notice = null;
        }
        catch (error) {
            await this.handleApiError(error);
        }
        finally {
            this.inFlight = false;
        }
    }
    /** End the session; the server returns the most-preferred route. */
    async finish() {
        this.inFlight = true;
        try {
            const response = await this.client.close(this.state.sessionId);
            this.state.status = "closed";
            this.state.candidate = null;
            this.state.incumbent = response.best;
            return response.best;
        }
        finally {
            this.inFlight = false;
        }
    }
    /** Re-pull the server snapshot; used to recover after errors. */
    async resync() {
        const snapshot = await this.client.getSession(this.state.sessionId);
        this.state.status = snapshot.status;
        this.state.objectives = snapshot.objectives;
        this.state.incumbent = snapshot.incumbent;
        this.state.candidate = snapshot.candidate ?? null;
    }
    async handleApiError(error) {
        if (error instanceof ApiError) {
            this.state.notice =
                error.status === 503
                    ? `${error.message} (you can retry)`
                    : error.message;
            await this.resync();
            return;
        }
        throw error;
    }
}
