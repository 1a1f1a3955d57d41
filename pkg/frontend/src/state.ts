/** Client-side session state machine.
 *
 * Mirrors the server snapshot and enforces the interaction protocol locally:
 * one candidate at a time, a pending comparison blocks further steering, and
 * nothing mutates after the session is finished.
 */

import {
  ApiError,
  Client,
  Direction,
  ObjectiveMeta,
  RouteView,
  SessionStatus,
} from "./api.js";

export class ProtocolError extends Error {}

export interface UiSessionState {
  sessionId: string;
  status: SessionStatus;
  objectives: ObjectiveMeta[];
  /** Most-preferred route so far; what the map shows between comparisons. */
  incumbent: RouteView;
  /** Candidate staged for comparison, or null when none is pending. */
  candidate: RouteView | null;
  /** Every route shown so far, in presentation order. */
  history: RouteView[];
  /** Interaction rounds consumed (one steer counts as one query). */
  queryCount: number;
  /** Last inline error message, cleared by the next successful action. */
  notice: string | null;
}

export class SessionController {
  private inFlight = false;

  private constructor(
    readonly client: Client,
    public state: UiSessionState,
  ) {}

  static async create(
    client: Client,
    graphId: string,
    source: string,
    target: string,
  ): Promise<SessionController> {
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

  get pendingComparison(): boolean {
    return this.state.candidate !== null;
  }

  canSteer(): boolean {
    return (
      this.state.status === "active" && !this.pendingComparison && !this.inFlight
    );
  }

  canChoose(): boolean {
    return (
      this.state.status !== "closed" && this.pendingComparison && !this.inFlight
    );
  }

  /** Ask for a route that moves the given objective; stages a comparison. */
  async sendSteer(objective: number, direction: Direction): Promise<void> {
    if (this.pendingComparison) {
      throw new ProtocolError("answer the pending comparison first");
    }
    if (this.state.status !== "active") {
      throw new ProtocolError(`session is ${this.state.status}`);
    }
    this.inFlight = true;
    try {
      const response = await this.client.steer(
        this.state.sessionId,
        objective,
        direction,
      );
      if (response.status === "exhausted") {
        this.state.status = "exhausted";
        this.state.incumbent = response.best;
        this.state.candidate = null;
        this.state.notice = "no further improvement is possible";
      } else {
        this.state.incumbent = response.incumbent;
        this.state.candidate = response.candidate;
        this.state.history.push(response.candidate);
        this.state.queryCount += 1;
        this.state.notice = null;
      }
    } catch (error) {
      await this.handleApiError(error);
    } finally {
      this.inFlight = false;
    }
  }

  /** Resolve the staged comparison in favor of one side. */
  async sendChoice(preferred: "candidate" | "incumbent"): Promise<void> {
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
    } catch (error) {
      await this.handleApiError(error);
    } finally {
      this.inFlight = false;
    }
  }

  /** End the session; the server returns the most-preferred route. */
  async finish(): Promise<RouteView> {
    this.inFlight = true;
    try {
      const response = await this.client.close(this.state.sessionId);
      this.state.status = "closed";
      this.state.candidate = null;
      this.state.incumbent = response.best;
      return response.best;
    } finally {
      this.inFlight = false;
    }
  }

  /** Re-pull the server snapshot; used to recover after errors. */
  async resync(): Promise<void> {
    const snapshot = await this.client.getSession(this.state.sessionId);
    this.state.status = snapshot.status;
    this.state.objectives = snapshot.objectives;
    this.state.incumbent = snapshot.incumbent;
    this.state.candidate = snapshot.candidate ?? null;
  }

  private async handleApiError(error: unknown): Promise<void> {
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
