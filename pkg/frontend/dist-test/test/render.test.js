// The UI is a pure function of the service payload: absurd numbers in the
// mock come out verbatim, proving the explorer computes no mathematics.
import assert from "node:assert/strict";
import { test } from "node:test";
import { renderArcTable, renderPanel, renderState } from "../src/render.js";
function mockPanel() {
    return {
        surface: {
            arcs: ["1", "2"],
            fans: { c0: [["1", 0]], c1: [["1", 1], ["2", 1]], c2: [["2", 0]] },
            dualFaces: {
                c0: [{ corner: "B0" }, { dual: "1", side: 0 }, { corner: "B1" }],
                c1: [
                    { corner: "B1" },
                    { dual: "1", side: 1 },
                    { corner: "B0" },
                    { dual: "2", side: 1 },
                    { corner: "B2" },
                ],
                c2: [{ corner: "B2" }, { dual: "2", side: 0 }, { corner: "B0" }],
            },
            boundary: [],
            punctures: [],
            genus: 41,
            boundaryCount: 97,
        },
        dissection: {
            kind: "dissection",
            arcs: [
                {
                    kind: "arc",
                    crossings: ["1"],
                    sides: [],
                    ends: [
                        { vertex: "c0", slot: 0 },
                        { vertex: "c1", slot: 0 },
                    ],
                    anchor: { index: 0, value: -58 },
                },
                {
                    kind: "arc",
                    crossings: ["2"],
                    sides: [],
                    ends: [
                        { vertex: "c2", slot: 0 },
                        { vertex: "c1", slot: 1 },
                    ],
                    anchor: { index: 0, value: 9001 },
                },
            ],
        },
        badges: [
            [7777, -1234],
            [55, 56],
        ],
        flags: { silting: true, tilting: false },
        cases: [
            { arc: 0, left: "II", right: "III", leftTiltingPreserved: false },
            { arc: 1, left: "III", right: "II" },
        ],
        origin: "mock",
    };
}
test("arc table shows exactly the service numbers", () => {
    const html = renderArcTable(mockPanel(), 0, null);
    for (const needle of ["7777", "-1234", "55", "56", "-58@0", "9001@0"]) {
        assert.ok(html.includes(needle), `missing ${needle}`);
    }
    assert.ok(html.includes(">II<") || html.includes("II loses tilting"));
    assert.ok(html.includes("genus=<span class=\"genus\">41</span>"));
    assert.ok(html.includes("97"));
});
test("changing a payload number changes the screen and nothing is derived", () => {
    const panel = mockPanel();
    const before = renderArcTable(panel, 0, null);
    panel.badges[0] = [31337, -1234];
    const after = renderArcTable(panel, 0, null);
    assert.ok(!before.includes("31337") && after.includes("31337"));
    assert.ok(!after.includes("7777"));
});
test("diagram renders every dual face with matching glyphs", () => {
    const svg = renderPanel(mockPanel(), 0, null);
    // the dual arc "1" appears on both identified edges, one starred
    assert.ok(svg.includes(">1<") && svg.includes(">1*<"));
    assert.ok(svg.includes(">2<") && svg.includes(">2*<"));
    assert.ok((svg.match(/<polygon/g) ?? []).length === 3);
    assert.ok((svg.match(/data-arc="/g) ?? []).length === 2);
});
test("state wrapper reports exchange notes verbatim", () => {
    const state = {
        schema: "silt-surf/1",
        kind: "state",
        panels: [mockPanel()],
        depth: 3,
        exchange: { case: "XYZZY", middles: 42, arc: 0, direction: "left" },
    };
    const html = renderState(state, null);
    assert.ok(html.includes("case XYZZY") && html.includes("42 middle term(s)"));
    assert.ok(html.includes('data-depth="3"'));
});
test("mutation preview lists service-provided neighbors", () => {
    const panel = mockPanel();
    panel.cases[0].leftNeighbors = [1];
    const html = renderArcTable(panel, 0, null);
    assert.ok(html.includes("II via arc 1"));
});
