/** End-to-end protocol test against a live service on the bundled instance.
 *
 * Drives the same controller the browser uses through a full
 * create -> steer -> compare -> choose -> finish interaction and checks that
 * the alternation protocol is never violated and displayed values always
 * match the server payloads exactly.
 */
import assert from "node:assert/strict";
import { spawn } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { after, before, test } from "node:test";
import { ApiError, Client } from "../src/api.js";
import { ProtocolError, SessionController } from "../src/state.js";
const PORT = 18700 + (process.pid % 200);
const BASE = `http://127.0.0.1:${PORT}`;
let server;
async function waitForServer() {
    for (let attempt = 0; attempt < 100; attempt += 1) {
        try {
            const response = await fetch(`${BASE}/`);
            if (response.ok) {
                return;
            }
        }
        catch {
            // not up yet
        }
        await new Promise((resolve) => setTimeout(resolve, 150));
    }
    throw new Error("service did not come up");
}
before(async () => {
    const logDir = mkdtempSync(join(tmpdir(), "pgipro-ui-test-"));
    server = spawn("python3", [
        "-m",
        "pgipro",
        "serve",
        "--host",
        "127.0.0.1",
        "--port",
        String(PORT),
        "--transcript-log",
        join(logDir, "transcripts.jsonl"),
    ], { stdio: "ignore" });
    await waitForServer();
});
after(() => {
    server.kill();
});
test("preloaded instance is served with its metadata", async () => {
    const client = new Client(BASE);
    const graph = await client.getGraph("osdorp");
    assert.equal(graph.objectives.length, 2);
    assert.equal(graph.objectives[0].name, "length");
    assert.ok(graph.nodes.some((n) => n.id === "O"));
});
test("full steering round trip with alternation intact", async () => {
    const client = new Client(BASE);
    const controller = await SessionController.create(client, "osdorp", "O", "D");
    const seenValues = [controller.state.incumbent.value];
    assert.equal(controller.state.status, "active");
    assert.ok(controller.state.incumbent.polyline, "fixture routes have coordinates");
    let comparisons = 0;
    while (controller.state.status === "active" && comparisons < 8) {
        await controller.sendSteer(1, "improve");
        if (controller.state.status !== "active") {
            break;
        }
        assert.ok(controller.pendingComparison, "steer staged a comparison");
        assert.equal(controller.canSteer(), false);
        // A second steer must be rejected locally, before any request is sent.
        await assert.rejects(controller.sendSteer(1, "improve"), ProtocolError);
        const candidate = controller.state.candidate;
        assert.ok(candidate);
        seenValues.push(candidate.value);
        // Verbatim agreement with the server's own snapshot of the comparison.
        const snapshot = await client.getSession(controller.state.sessionId);
        assert.deepEqual(candidate.value, snapshot.candidate?.value);
        assert.deepEqual(controller.state.incumbent.value, snapshot.incumbent.value);
        assert.ok(candidate.deltas, "candidate carries per-objective deltas");
        await controller.sendChoice("candidate");
        comparisons += 1;
        assert.equal(controller.pendingComparison, false);
    }
    assert.ok(comparisons >= 1, "at least one comparison happened");
    // The crossing counts strictly decrease along accepted candidates.
    const crossings = seenValues.map((value) => value[1]);
    for (let i = 1; i < crossings.length; i += 1) {
        assert.ok(crossings[i] < crossings[i - 1]);
    }
    const best = await controller.finish();
    assert.equal(controller.state.status, "closed");
    assert.deepEqual(best.value, seenValues.at(-1));
    const closed = await client.getSession(controller.state.sessionId);
    assert.equal(closed.status, "closed");
});
test("exhausted state disables steering and is reported by the server", async () => {
    const client = new Client(BASE);
    const controller = await SessionController.create(client, "osdorp", "O", "D");
    // The opening route is length-optimal, so improving length exhausts at once.
    await controller.sendSteer(0, "improve");
    assert.equal(controller.state.status, "exhausted");
    assert.equal(controller.canSteer(), false);
    assert.equal(controller.state.notice, "no further improvement is possible");
    await assert.rejects(controller.sendSteer(0, "improve"), ProtocolError);
    const snapshot = await client.getSession(controller.state.sessionId);
    assert.equal(snapshot.status, "exhausted");
    await controller.finish();
    assert.equal(controller.state.status, "closed");
});
test("server-side protocol conflicts surface as typed errors", async () => {
    const client = new Client(BASE);
    const snapshot = await client.createSession("osdorp", "O", "D");
    await client.steer(snapshot.session_id, 1, "improve");
    try {
        await client.steer(snapshot.session_id, 1, "improve");
        assert.fail("second steer should conflict");
    }
    catch (error) {
        assert.ok(error instanceof ApiError);
        assert.equal(error.status, 409);
        assert.equal(error.code, "pending_comparison");
    }
    await client.close(snapshot.session_id);
});
test("unknown graph produces a 404 with a code", async () => {
    const client = new Client(BASE);
    try {
        await client.createSession("nope", "O", "D");
        assert.fail("unreachable");
    }
    catch (error) {
        assert.ok(error instanceof ApiError);
        assert.equal(error.status, 404);
    }
});
