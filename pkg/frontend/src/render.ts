// Pure SVG renderers. Layout only: every displayed number is copied
// verbatim from the service payload (single-source-of-truth; the mock test
// feeds absurd values and expects them on screen unchanged).

import type { PanelDoc, RimEntry, StateDoc, SurfaceDoc } from "./types.js";

const FACE_RADIUS = 70;
const GRID = 190;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

interface FaceLayout {
  cx: number;
  cy: number;
  // rim entry index -> midpoint of that polygon side
  sideMid: { x: number; y: number }[];
}

function layoutFaces(surface: SurfaceDoc): Record<string, FaceLayout> {
  const names = Object.keys(surface.dualFaces).sort();
  const cols = Math.max(1, Math.ceil(Math.sqrt(names.length)));
  const out: Record<string, FaceLayout> = {};
  names.forEach((name, i) => {
    const cx = GRID * (i % cols) + GRID / 2;
    const cy = GRID * Math.floor(i / cols) + GRID / 2;
    const rim = surface.dualFaces[name];
    const n = Math.max(rim.length, 3);
    const sideMid = rim.map((_entry, k) => {
      const a0 = (2 * Math.PI * k) / n - Math.PI / 2;
      const a1 = (2 * Math.PI * (k + 1)) / n - Math.PI / 2;
      return {
        x: cx + (FACE_RADIUS * (Math.cos(a0) + Math.cos(a1))) / 2,
        y: cy + (FACE_RADIUS * (Math.sin(a0) + Math.sin(a1))) / 2,
      };
    });
    out[name] = { cx, cy, sideMid };
  });
  return out;
}

function facePolygon(name: string, rim: RimEntry[], lay: FaceLayout): string {
  const n = Math.max(rim.length, 3);
  const pts: string[] = [];
  for (let k = 0; k < n; k++) {
    const a = (2 * Math.PI * k) / n - Math.PI / 2;
    pts.push(`${lay.cx + FACE_RADIUS * Math.cos(a)},${lay.cy + FACE_RADIUS * Math.sin(a)}`);
  }
  const bits = [
    `<polygon points="${pts.join(" ")}" fill="#f8f4ec" stroke="#999"/>`,
    `<text x="${lay.cx}" y="${lay.cy - FACE_RADIUS - 8}" text-anchor="middle" class="face-name">${esc(name)}</text>`,
    `<circle cx="${lay.cx}" cy="${lay.cy - FACE_RADIUS}" r="5" fill="white" stroke="green" stroke-width="2"/>`,
  ];
  rim.forEach((entry, k) => {
    const mid = lay.sideMid[k];
    if ("dual" in entry) {
      // identified edges carry matching glyphs: arc id plus side tick
      bits.push(
        `<text x="${mid.x}" y="${mid.y}" text-anchor="middle" class="glyph" ` +
          `data-dual="${esc(entry.dual)}" data-side="${entry.side}">` +
          `${esc(entry.dual)}${entry.side ? "*" : ""}</text>`
      );
    } else {
      bits.push(
        `<circle cx="${mid.x}" cy="${mid.y}" r="4" fill="#c33" data-corner="${esc(entry.corner)}"/>`
      );
    }
  });
  return bits.join("");
}

function arcPath(
  surface: SurfaceDoc,
  lay: Record<string, FaceLayout>,
  crossings: string[]
): string {
  // polyline through the midpoints of the crossed dual edges (first side
  // instance of each dual arc; geometric sugar only)
  const pts: { x: number; y: number }[] = [];
  for (const dual of crossings) {
    for (const [face, rim] of Object.entries(surface.dualFaces)) {
      const k = rim.findIndex((e) => "dual" in e && e.dual === dual && e.side === 0);
      if (k >= 0) {
        pts.push(lay[face].sideMid[k]);
        break;
      }
    }
  }
  if (!pts.length) return "";
  return pts.map((p) => `${p.x},${p.y}`).join(" ");
}

export function renderPanel(panel: PanelDoc, index: number, selected: number | null): string {
  const lay = layoutFaces(panel.surface);
  const faces = Object.entries(panel.surface.dualFaces)
    .sort(([a], [b]) => (a < b ? -1 : 1))
    .map(([name, rim]) => facePolygon(name, rim, lay[name]))
    .join("");
  const arcs = panel.dissection.arcs
    .map((arc, j) => {
      const pts = arcPath(panel.surface, lay, arc.crossings);
      const cls = selected === j ? "arc selected" : "arc";
      return pts
        ? `<polyline points="${pts}" class="${cls}" fill="none" ` +
            `stroke="${selected === j ? "#06c" : "#333"}" stroke-width="2" ` +
            `data-panel="${index}" data-arc="${j}"/>`
        : "";
    })
    .join("");
  const cols = Math.max(1, Math.ceil(Math.sqrt(Object.keys(panel.surface.dualFaces).length)));
  const rows = Math.ceil(Object.keys(panel.surface.dualFaces).length / cols);
  const w = cols * GRID;
  const h = Math.max(rows * GRID, GRID);
  return (
    `<svg viewBox="0 0 ${w} ${h}" width="${w}" height="${h}" data-panel="${index}">` +
    faces +
    arcs +
    `</svg>`
  );
}

export function renderArcTable(panel: PanelDoc, index: number, selected: number | null): string {
  const rows = panel.dissection.arcs.map((arc, j) => {
    const badge = panel.badges[j];
    const entry = panel.cases.find((c) => c.arc === j);
    const anchor = arc.anchor ? `${arc.anchor.value}@${arc.anchor.index}` : "";
    const tilt = (d: "left" | "right") => {
      const key = d === "left" ? "leftTiltingPreserved" : "rightTiltingPreserved";
      const v = entry?.[key];
      return v === undefined ? "" : v ? " keeps tilting" : " loses tilting";
    };
    const neighbors = (d: "left" | "right") => {
      const ns = d === "left" ? entry?.leftNeighbors : entry?.rightNeighbors;
      return ns && ns.length ? ` via ${ns.map((n) => `arc ${n}`).join(", ")}` : "";
    };
    return (
      `<tr class="${selected === j ? "selected" : ""}" data-panel="${index}" data-arc="${j}">` +
      `<td class="arc-name">arc ${j}</td>` +
      `<td class="crossings">${esc(arc.crossings.join(" "))}</td>` +
      `<td class="badge" data-end="0">${badge ? badge[0] : ""}</td>` +
      `<td class="badge" data-end="1">${badge ? badge[1] : ""}</td>` +
      `<td class="anchor">${esc(anchor)}</td>` +
      `<td class="case-left">${esc(entry?.left ?? "")}${esc(neighbors("left"))}${esc(tilt("left"))}</td>` +
      `<td class="case-right">${esc(entry?.right ?? "")}${esc(neighbors("right"))}${esc(tilt("right"))}</td>` +
      `<td><button data-act="mutate-left" data-panel="${index}" data-arc="${j}">&mu;+</button>` +
      `<button data-act="mutate-right" data-panel="${index}" data-arc="${j}">&mu;&minus;</button>` +
      `<button data-act="cut" data-panel="${index}" data-arc="${j}">cut</button></td>` +
      `</tr>`
    );
  });
  const flags = panel.flags;
  return (
    `<div class="panel-block" data-panel="${index}">` +
    `<div class="flags">panel ${index}: silting=<b class="flag-silting">${flags.silting}</b> ` +
    `tilting=<b class="flag-tilting">${flags.tilting}</b> ` +
    `genus=<span class="genus">${panel.surface.genus}</span> ` +
    `boundary=<span class="boundary">${panel.surface.boundaryCount}</span> ` +
    `origin=${esc(panel.origin)}</div>` +
    `<table><thead><tr><th>arc</th><th>crossings</th><th>f(start)</th><th>f(end)</th>` +
    `<th>anchor</th><th>&mu;+ case</th><th>&mu;&minus; case</th><th></th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table></div>`
  );
}

export function renderState(state: StateDoc, selected: { panel: number; arc: number } | null): string {
  const panels = state.panels
    .map((p, i) => {
      const sel = selected && selected.panel === i ? selected.arc : null;
      return (
        `<section class="panel">` +
        renderPanel(p, i, sel) +
        renderArcTable(p, i, sel) +
        `</section>`
      );
    })
    .join("");
  const note = state.exchange
    ? `<div class="note">exchange: case ${esc(state.exchange.case)} with ` +
      `${state.exchange.middles} middle term(s)</div>`
    : state.cut
      ? `<div class="note">cut: case ${state.cut.case}, ${state.cut.pieces} piece(s)</div>`
      : "";
  return `<div class="state" data-depth="${state.depth}">${note}${panels}</div>`;
}
