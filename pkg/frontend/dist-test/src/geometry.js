/** Pure helpers shared by the DOM layer and the tests: projection and formatting. */
export function fitBounds(polylines) {
    const points = polylines.flat();
    if (points.length === 0) {
        return null;
    }
    return {
        minLon: Math.min(...points.map((p) => p[0])),
        maxLon: Math.max(...points.map((p) => p[0])),
        minLat: Math.min(...points.map((p) => p[1])),
        maxLat: Math.max(...points.map((p) => p[1])),
    };
}
/** Map lon/lat pairs into an SVG path string for the given viewport. */
export function polylinePath(polyline, bounds, width, height, padding = 12) {
    if (polyline.length === 0) {
        return "";
    }
    const spanLon = Math.max(bounds.maxLon - bounds.minLon, 1e-12);
    const spanLat = Math.max(bounds.maxLat - bounds.minLat, 1e-12);
    const innerW = width - 2 * padding;
    const innerH = height - 2 * padding;
    const parts = polyline.map(([lon, lat], index) => {
        const x = padding + ((lon - bounds.minLon) / spanLon) * innerW;
        // Screen y grows downward; latitude grows upward.
        const y = padding + ((bounds.maxLat - lat) / spanLat) * innerH;
        return `${index === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`;
    });
    return parts.join(" ");
}
function trimNumber(x) {
    return Number.isInteger(x) ? String(x) : x.toFixed(2).replace(/\.?0+$/, "");
}
/** "1335 m, 2 crossings" style rendering of a value vector. */
export function formatValue(value, objectives) {
    return value
        .map((x, i) => {
        const meta = objectives[i];
        const unit = meta && meta.unit ? ` ${meta.unit}` : "";
        return `${trimNumber(x)}${unit}`;
    })
        .join(", ");
}
/** Signed per-objective differences: "+6 m, -1 crossings". */
export function formatDeltas(deltas, objectives) {
    return deltas
        .map((d, i) => {
        const meta = objectives[i];
        const unit = meta && meta.unit ? ` ${meta.unit}` : "";
        const sign = d > 0 ? "+" : "";
        return `${sign}${trimNumber(d)}${unit}`;
    })
        .join(", ");
}
