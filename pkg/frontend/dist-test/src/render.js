/** DOM rendering of a session: map panel, value readouts, and the control row. */
import { fitBounds, formatDeltas, formatValue, polylinePath } from "./geometry.js";
const SVG_NS = "http://www.w3.org/2000/svg";
const MAP_W = 460;
const MAP_H = 380;
function drawRoute(svg, route, bounds, cssClass) {
    if (!route.polyline || !bounds) {
        return;
    }
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("d", polylinePath(route.polyline, bounds, MAP_W, MAP_H));
    path.setAttribute("class", cssClass);
    path.setAttribute("fill", "none");
    svg.appendChild(path);
    const ends = [
        route.polyline[0],
        route.polyline[route.polyline.length - 1],
    ];
    for (const [index, point] of ends.entries()) {
        const marker = document.createElementNS(SVG_NS, "circle");
        const d = polylinePath([point], bounds, MAP_W, MAP_H).slice(1).split(",");
        marker.setAttribute("cx", d[0]);
        marker.setAttribute("cy", d[1]);
        marker.setAttribute("r", "5");
        marker.setAttribute("class", index === 0 ? "marker-origin" : "marker-target");
        svg.appendChild(marker);
    }
}
function valueTable(route, label) {
    const box = document.createElement("div");
    box.className = "route-card";
    const title = document.createElement("h3");
    title.textContent = label;
    box.appendChild(title);
    const values = document.createElement("p");
    values.className = "route-values";
    values.textContent = formatValue(route.value, route.objectives);
    box.appendChild(values);
    if (route.deltas) {
        const deltas = document.createElement("p");
        deltas.className = "route-deltas";
        deltas.textContent = `vs best: ${formatDeltas(route.deltas, route.objectives)}`;
        box.appendChild(deltas);
    }
    return box;
}
export function renderSession(root, controller, callbacks) {
    const state = controller.state;
    root.replaceChildren();
    const status = document.createElement("p");
    status.className = `status status-${state.status}`;
    status.textContent =
        state.status === "exhausted"
            ? "no further improvement is possible"
            : state.status === "closed"
                ? "session finished"
                : `query ${state.queryCount} of ~6`;
    root.appendChild(status);
    if (state.notice && state.status === "active") {
        const notice = document.createElement("p");
        notice.className = "notice";
        notice.textContent = state.notice;
        root.appendChild(notice);
    }
    const mapPanel = document.createElement("div");
    mapPanel.className = "map-panel";
    const polylines = [state.incumbent, state.candidate]
        .filter((r) => r !== null)
        .map((r) => r.polyline)
        .filter((p) => p !== null);
    const bounds = fitBounds(polylines);
    if (bounds) {
        const svg = document.createElementNS(SVG_NS, "svg");
        svg.setAttribute("viewBox", `0 0 ${MAP_W} ${MAP_H}`);
        svg.setAttribute("class", "map");
        drawRoute(svg, state.incumbent, bounds, "route-best");
        if (state.candidate) {
            drawRoute(svg, state.candidate, bounds, "route-candidate");
        }
        mapPanel.appendChild(svg);
    }
    root.appendChild(mapPanel);
    const cards = document.createElement("div");
    cards.className = "cards";
    cards.appendChild(valueTable(state.incumbent, "best route"));
    if (state.candidate) {
        cards.appendChild(valueTable(state.candidate, "candidate"));
    }
    root.appendChild(cards);
    const controls = document.createElement("div");
    controls.className = "controls";
    for (const [index, meta] of state.objectives.entries()) {
        for (const direction of ["improve", "relax"]) {
            const button = document.createElement("button");
            button.textContent = `${direction} ${meta.name}`;
            button.className = `steer steer-${direction}`;
            button.disabled = !controller.canSteer();
            button.addEventListener("click", () => callbacks.onSteer(index, direction));
            controls.appendChild(button);
        }
    }
    root.appendChild(controls);
    if (state.candidate) {
        const choiceRow = document.createElement("div");
        choiceRow.className = "choice-row";
        for (const side of ["candidate", "incumbent"]) {
            const button = document.createElement("button");
            button.textContent = side === "candidate" ? "take candidate" : "keep best";
            button.className = `choose choose-${side}`;
            button.disabled = !controller.canChoose();
            button.addEventListener("click", () => callbacks.onChoose(side));
            choiceRow.appendChild(button);
        }
        root.appendChild(choiceRow);
    }
    const finish = document.createElement("button");
    finish.textContent = "finish";
    finish.className = "finish";
    finish.disabled = state.status === "closed";
    finish.addEventListener("click", callbacks.onFinish);
    root.appendChild(finish);
}
