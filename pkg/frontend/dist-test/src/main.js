/** Entry point: pick endpoints on the preloaded graph, run one steering session. */
import { Client } from "./api.js";
import { renderSession } from "./render.js";
import { SessionController } from "./state.js";
const DEFAULT_GRAPH = "osdorp";
const DEFAULT_SOURCE = "O";
const DEFAULT_TARGET = "D";
function baseUrl() {
    return window.location.origin;
}
async function boot() {
    const root = document.getElementById("app");
    if (!root) {
        throw new Error("missing #app element");
    }
    const params = new URLSearchParams(window.location.search);
    const client = new Client(baseUrl());
    let controller;
    try {
        controller = await SessionController.create(client, params.get("graph") ?? DEFAULT_GRAPH, params.get("source") ?? DEFAULT_SOURCE, params.get("target") ?? DEFAULT_TARGET);
    }
    catch (error) {
        root.textContent = `could not start a session: ${String(error)}`;
        return;
    }
    const redraw = () => renderSession(root, controller, {
        onSteer: (objective, direction) => {
            void controller.sendSteer(objective, direction).then(redraw, redraw);
        },
        onChoose: (preferred) => {
            void controller.sendChoice(preferred).then(redraw, redraw);
        },
        onFinish: () => {
            void controller.finish().then(redraw, redraw);
        },
    });
    redraw();
}
void boot();
