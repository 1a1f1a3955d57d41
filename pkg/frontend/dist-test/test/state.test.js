import assert from "node:assert/strict";
import { test } from "node:test";
import { Client, } from "../src/api.js";
import { ProtocolError, SessionController } from "../src/state.js";
const OBJECTIVES = [
    { name: "length", unit: "m" },
    { name: "crossings", unit: "count" },
];
function route(value, deltas) {
    return {
        value,
        objectives: OBJECTIVES,
        nodes: ["O", "D"],
        polyline: null,
        ...(deltas ? { deltas } : {}),
    };
}
/** Scripted stand-in for the HTTP client; records the calls it served. */
class FakeClient extends Client {
    calls = [];
    best = route([568, 8]);
    steerScript = [];
    constructor() {
        super("http://fake");
    }
    async createSession() {
        this.calls.push("create");
        return {
            session_id: "s1",
            status: "active",
            pending_comparison: false,
            incumbent: this.best,
            best: this.best,
            objectives: OBJECTIVES,
        };
    }
    async steer() {
        this.calls.push("steer");
        const next = this.steerScript.shift();
        if (!next) {
            throw new Error("unscripted steer");
        }
        return next;
    }
    async choose(_sessionId, preferred) {
        this.calls.push(`choose:${preferred}`);
        return { session_id: "s1", status: "active", best: this.best };
    }
    async close() {
        this.calls.push("close");
        return { session_id: "s1", status: "closed", best: this.best };
    }
    async getSession() {
        this.calls.push("get");
        return {
            session_id: "s1",
            status: "active",
            pending_comparison: false,
            incumbent: this.best,
            best: this.best,
            objectives: OBJECTIVES,
        };
    }
}
function candidateResponse(value) {
    return {
        session_id: "s1",
        status: "candidate",
        candidate: route(value, [value[0] - 568, value[1] - 8]),
        incumbent: route([568, 8]),
        oracle_seconds: 0.001,
    };
}
async function makeController() {
    const fake = new FakeClient();
    const c = await SessionController.create(fake, "osdorp", "O", "D");
    return { fake, c };
}
test("fresh controller can steer and holds no candidate", async () => {
    const { c } = await makeController();
    assert.equal(c.canSteer(), true);
    assert.equal(c.pendingComparison, false);
    assert.equal(c.state.queryCount, 0);
});
test("steer stages a candidate and blocks further steering", async () => {
    const { fake, c } = await makeController();
    fake.steerScript = [candidateResponse([574, 7])];
    await c.sendSteer(1, "improve");
    assert.equal(c.pendingComparison, true);
    assert.equal(c.canSteer(), false);
    assert.deepEqual(c.state.candidate?.value, [574, 7]);
    assert.equal(c.state.queryCount, 1);
    await assert.rejects(c.sendSteer(1, "improve"), ProtocolError);
    // The protocol violation never reached the network.
    assert.deepEqual(fake.calls.filter((call) => call === "steer"), ["steer"]);
});
test("choice clears the candidate and re-enables steering", async () => {
    const { fake, c } = await makeController();
    fake.steerScript = [candidateResponse([574, 7])];
    await c.sendSteer(1, "improve");
    await c.sendChoice("candidate");
    assert.equal(c.pendingComparison, false);
    assert.equal(c.canSteer(), true);
    assert.deepEqual(fake.calls.at(-1), "choose:candidate");
});
test("choice without a pending candidate is a protocol error", async () => {
    const { c } = await makeController();
    await assert.rejects(c.sendChoice("candidate"), ProtocolError);
});
test("exhaustion disables steering and sets the notice", async () => {
    const { fake, c } = await makeController();
    fake.steerScript = [
        { session_id: "s1", status: "exhausted", best: route([568, 8]) },
    ];
    await c.sendSteer(0, "improve");
    assert.equal(c.state.status, "exhausted");
    assert.equal(c.canSteer(), false);
    assert.equal(c.state.notice, "no further improvement is possible");
    await assert.rejects(c.sendSteer(0, "improve"), ProtocolError);
});
test("displayed values are the server payload verbatim", async () => {
    const { fake, c } = await makeController();
    const payload = candidateResponse([603.25, 5]);
    if (payload.status !== "candidate") {
        throw new Error("unreachable");
    }
    fake.steerScript = [payload];
    await c.sendSteer(1, "improve");
    assert.equal(c.state.candidate, payload.candidate);
    assert.deepEqual(c.state.candidate?.value, [603.25, 5]);
    assert.deepEqual(c.state.candidate?.deltas, [603.25 - 568, -3]);
});
test("finish closes the session and freezes further actions", async () => {
    const { fake, c } = await makeController();
    const best = await c.finish();
    assert.deepEqual(best.value, [568, 8]);
    assert.equal(c.state.status, "closed");
    assert.equal(c.canSteer(), false);
    await assert.rejects(c.sendSteer(0, "improve"), ProtocolError);
    assert.equal(fake.calls.at(-1), "close");
});
