import assert from "node:assert/strict";
import { test } from "node:test";
import { fitBounds, formatDeltas, formatValue, polylinePath, } from "../src/geometry.js";
const OBJECTIVES = [
    { name: "length", unit: "m" },
    { name: "crossings", unit: "count" },
];
test("fitBounds spans every point of every polyline", () => {
    const bounds = fitBounds([
        [
            [4.8, 52.36],
            [4.81, 52.35],
        ],
        [[4.79, 52.37]],
    ]);
    assert.deepEqual(bounds, {
        minLon: 4.79,
        maxLon: 4.81,
        minLat: 52.35,
        maxLat: 52.37,
    });
});
test("fitBounds of nothing is null", () => {
    assert.equal(fitBounds([]), null);
});
test("polylinePath maps corners to the padded viewport", () => {
    const bounds = { minLon: 0, maxLon: 1, minLat: 0, maxLat: 1 };
    const path = polylinePath([
        [0, 1],
        [1, 0],
    ], bounds, 100, 100, 10);
    // lon 0 -> x 10; lat 1 (north) -> y 10; lon 1 -> x 90; lat 0 -> y 90
    assert.equal(path, "M10.00,10.00 L90.00,90.00");
});
test("polylinePath of a single point yields one move command", () => {
    const bounds = { minLon: 0, maxLon: 1, minLat: 0, maxLat: 1 };
    assert.equal(polylinePath([[0.5, 0.5]], bounds, 100, 100, 10), "M50.00,50.00");
});
test("formatValue renders units verbatim", () => {
    assert.equal(formatValue([1335, 2], OBJECTIVES), "1335 m, 2 count");
});
test("formatValue trims trailing zeros on fractions", () => {
    assert.equal(formatValue([574.5, 7], OBJECTIVES), "574.5 m, 7 count");
});
test("formatDeltas carries explicit signs", () => {
    assert.equal(formatDeltas([6, -1], OBJECTIVES), "+6 m, -1 count");
});
