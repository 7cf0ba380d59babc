/** Two-panel native drawing of a graph file: the disk rendered with
 * Euclidean polar coordinates equal to the hyperbolic ones, and the strip
 * panel beside it; points colored by angular coordinate. */

import { GraphFile, parseGraphFile, radiusOf } from "./graphfile.js";
import { STYLE, angleColor } from "./style.js";
import { circle, fmt, line, svgDocument, text } from "./svg.js";

export const MAX_DRAW_VERTICES = 2000;

const PANEL = 380;
const GAP = 28;
const PAD = 24;

export function renderGraphDrawing(graphText: string): string {
  const g = parseGraphFile(graphText);
  if (g.vertices.length > MAX_DRAW_VERTICES) {
    throw new Error(
      `refusing to draw ${g.vertices.length} vertices (limit ${MAX_DRAW_VERTICES})`,
    );
  }
  const radius = radiusOf(g);
  const width = 2 * PANEL + GAP + 2 * PAD;
  const height = PANEL + 2 * PAD + 22;
  const parts: string[] = [];
  parts.push(diskPanel(g, radius, PAD, PAD));
  parts.push(stripPanel(g, radius, PAD + PANEL + GAP, PAD));
  return svgDocument(width, height, parts.join("\n"));
}

function diskPanel(g: GraphFile, radius: number, ox: number, oy: number): string {
  const cx = ox + PANEL / 2;
  const cy = oy + PANEL / 2;
  const scale = PANEL / 2 / radius;
  const px = (r: number, theta: number) => cx + r * scale * Math.cos(theta);
  const py = (r: number, theta: number) => cy - r * scale * Math.sin(theta);
  const parts: string[] = [
    `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(radius * scale)}" fill="none" stroke="${STYLE.gridColor}"/>`,
  ];
  for (const [u, v] of g.edges) {
    const a = g.vertices[u];
    const b = g.vertices[v];
    parts.push(
      line(px(a.r, a.theta), py(a.r, a.theta), px(b.r, b.theta), py(b.r, b.theta), "#bbbbbb", 0.5),
    );
  }
  for (const vtx of g.vertices) {
    parts.push(circle(px(vtx.r, vtx.theta), py(vtx.r, vtx.theta), 2.4, angleColor(vtx.theta)));
  }
  parts.push(text(cx, oy + PANEL + 16, "native disk", "middle"));
  return parts.join("\n");
}

function stripPanel(g: GraphFile, radius: number, ox: number, oy: number): string {
  const width = Math.PI * Math.exp(radius / 2);
  const sx = (x: number) => ox + ((x + width / 2) / width) * PANEL;
  const sy = (y: number) => oy + PANEL - (y / radius) * PANEL;
  const parts: string[] = [
    `<rect x="${fmt(ox)}" y="${fmt(oy)}" width="${PANEL}" height="${PANEL}" fill="none" stroke="${STYLE.gridColor}"/>`,
  ];
  for (const [u, v] of g.edges) {
    const a = g.vertices[u];
    const b = g.vertices[v];
    // draw only the non-wrapping representative
    if (Math.abs(a.x - b.x) <= width / 2) {
      parts.push(line(sx(a.x), sy(a.y), sx(b.x), sy(b.y), "#bbbbbb", 0.5));
    }
  }
  for (const vtx of g.vertices) {
    parts.push(circle(sx(vtx.x), sy(vtx.y), 2.4, angleColor(vtx.theta)));
  }
  parts.push(text(ox + PANEL / 2, oy + PANEL + 16, "strip image", "middle"));
  parts.push(text(ox, oy - 8, `x in (-${fmt(width / 2)}, ${fmt(width / 2)}]`, "start"));
  return parts.join("\n");
}
