import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { test } from "node:test";

import { renderGraphDrawing, MAX_DRAW_VERTICES } from "../src/drawing.js";
import { parseGraphFile, radiusOf } from "../src/graphfile.js";

const FIXTURES = new URL("../../fixtures/", import.meta.url);

function fixture(name: string): string {
  return readFileSync(new URL(name, FIXTURES), "utf8");
}

test("parses the golden graph file", () => {
  const g = parseGraphFile(fixture("graph_n200_seed7.txt"));
  assert.equal(g.vertices.length, 200);
  assert.equal(g.edges.length, Number(g.meta["edges"]));
  assert.ok(Math.abs(radiusOf(g) - 10.0719062042) < 1e-9);
});

test("single-vertex file draws one dot per panel", () => {
  const svg = renderGraphDrawing(fixture("graph_n1.txt"));
  const dots = svg.match(/<circle[^>]*hsl/g) ?? [];
  assert.equal(dots.length, 2); // one in the disk panel, one in the strip panel
});

test("two-panel drawing of the n=200 golden instance", () => {
  const svg = renderGraphDrawing(fixture("graph_n200_seed7.txt"));
  assert.ok(svg.includes("native disk"));
  assert.ok(svg.includes("strip image"));
  const dots = svg.match(/<circle[^>]*hsl/g) ?? [];
  assert.equal(dots.length, 400);
  // strip x-range annotation matches (-pi/2 e^{R/2}, pi/2 e^{R/2}]
  const g = parseGraphFile(fixture("graph_n200_seed7.txt"));
  const half = (Math.PI * Math.exp(radiusOf(g) / 2)) / 2;
  assert.ok(svg.includes(`(-${half.toFixed(2)}, ${half.toFixed(2)}]`));
});

test("oversize graphs are refused", () => {
  const lines = ["# R 12.0"];
  for (let i = 0; i <= MAX_DRAW_VERTICES; i++) {
    lines.push(`${i} 1 0 0 1`);
  }
  assert.throws(() => renderGraphDrawing(lines.join("\n")), /refusing to draw/);
});

test("drawing is deterministic", () => {
  const a = renderGraphDrawing(fixture("graph_n200_seed7.txt"));
  const b = renderGraphDrawing(fixture("graph_n200_seed7.txt"));
  assert.equal(a, b);
});
