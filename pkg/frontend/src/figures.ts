/** The five CSV figure kinds. Each renderer reads documented columns of
 * one harness CSV and never recomputes model quantities. */

import { Table, groupBy, median, parseCsv, requireColumns } from "./csv.js";
import { STYLE } from "./style.js";
import { Scale, axes, circle, line, linearScale, logScale, polyline, svgDocument, text } from "./svg.js";

export const FIGURE_KINDS = [
  "diameter-vs-logN",
  "degree-ccdf",
  "qh-curves",
  "coupling-trend",
  "W-ratio",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  inputCsv: string;
  output: string;
}

function plotArea() {
  const { width, height, margin } = STYLE;
  return { x0: margin.left, y0: margin.top, x1: width - margin.right, y1: height - margin.bottom };
}

export function renderFigure(kind: FigureKind, csvText: string): string {
  const table = parseCsv(csvText);
  switch (kind) {
    case "diameter-vs-logN":
      return diameterVsLogN(table);
    case "degree-ccdf":
      return degreeCcdf(table);
    case "qh-curves":
      return qhCurves(table);
    case "coupling-trend":
      return couplingTrend(table);
    case "W-ratio":
      return wRatio(table);
  }
}

function frame(title: string, body: string): string {
  const head = text(STYLE.width / 2, 20, title, "middle", STYLE.titleFont);
  return svgDocument(STYLE.width, STYLE.height, head + "\n" + body);
}

function diameterVsLogN(table: Table): string {
  requireColumns(table, ["n", "max_diameter"]);
  const groups = groupBy(table.rows, (r) => r["n"]);
  const pts = [...groups.entries()]
    .map(([n, rows]) => ({
      lnN: Math.log(Number(n)),
      med: median(rows.map((r) => Number(r["max_diameter"]))),
    }))
    .sort((a, b) => a.lnN - b.lnN);
  const area = plotArea();
  const xs = pts.map((p) => p.lnN);
  const ys = pts.map((p) => p.med);
  const x = linearScale(Math.min(...xs) - 0.3, Math.max(...xs) + 0.3, area.x0, area.x1);
  const y = linearScale(0, Math.max(...ys) * 1.15 + 1, area.y1, area.y0);
  // least-squares line through the medians
  const mx = xs.reduce((a, b) => a + b, 0) / xs.length;
  const my = ys.reduce((a, b) => a + b, 0) / ys.length;
  let num = 0;
  let den = 0;
  xs.forEach((v, i) => {
    num += (v - mx) * (ys[i] - my);
    den += (v - mx) * (v - mx);
  });
  const slope = den ? num / den : 0;
  const icept = my - slope * mx;
  const parts: string[] = [axes(x, y, area, "ln n", "median max component diameter")];
  const lo = Math.min(...xs);
  const hi = Math.max(...xs);
  parts.push(
    line(x(lo), y(slope * lo + icept), x(hi), y(slope * hi + icept), STYLE.series[1], 1.5),
  );
  for (const p of pts) {
    parts.push(circle(x(p.lnN), y(p.med), STYLE.pointRadius + 1, STYLE.series[0]));
  }
  parts.push(text(area.x1, area.y0 + 12, `slope ${slope.toFixed(2)}`, "end"));
  return frame("Diameter against ln n", parts.join("\n"));
}

/** CCDF points P(K >= k) from a degree histogram. */
export function ccdfFromHistogram(degrees: number[], counts: number[]): Array<[number, number]> {
  const total = counts.reduce((a, b) => a + b, 0);
  const order = degrees.map((_, i) => i).sort((a, b) => degrees[a] - degrees[b]);
  let below = 0;
  const out: Array<[number, number]> = [];
  for (const i of order) {
    out.push([degrees[i], (total - below) / total]);
    below += counts[i];
  }
  return out;
}

function degreeCcdf(table: Table): string {
  requireColumns(table, ["degree", "count"]);
  const degrees = table.rows.map((r) => Number(r["degree"]));
  const counts = table.rows.map((r) => Number(r["count"]));
  const pts = ccdfFromHistogram(degrees, counts).filter(([k]) => k >= 1);
  const area = plotArea();
  const kMax = Math.max(...pts.map(([k]) => k));
  const pMin = Math.min(...pts.map(([, p]) => p));
  const x = logScale(1, Math.max(kMax * 1.3, 2), area.x0, area.x1);
  const y = logScale(Math.min(pMin / 1.5, 0.5), 1, area.y1, area.y0);
  const parts: string[] = [axes(x, y, area, "degree k", "P(K >= k)")];
  // step curve: horizontal run at each probability level, then drop
  const steps: Array<[number, number]> = [];
  pts.forEach(([k, p], i) => {
    steps.push([x(k), y(p)]);
    const next = pts[i + 1];
    if (next) {
      steps.push([x(next[0]), y(p)]);
    }
  });
  parts.push(polyline(steps, STYLE.series[0]));
  for (const [k, p] of pts) {
    parts.push(circle(x(k), y(p), STYLE.pointRadius, STYLE.series[0]));
  }
  return frame("Degree CCDF (log-log)", parts.join("\n"));
}

function qhCurves(table: Table): string {
  requireColumns(table, ["h", "q_h", "q_h_plus_1", "rhs"]);
  const rows = [...table.rows].sort((a, b) => Number(a["h"]) - Number(b["h"]));
  const hs = rows.map((r) => Number(r["h"]));
  const area = plotArea();
  const x = linearScale(Math.min(...hs) - 0.5, Math.max(...hs) + 1.5, area.x0, area.x1);
  const y = linearScale(0, 1, area.y1, area.y0);
  const parts: string[] = [axes(x, y, area, "block height h", "crossing probability")];
  const series: Array<{ name: string; col: string; dx: number }> = [
    { name: "q(h)", col: "q_h", dx: 0 },
    { name: "q(h+1)", col: "q_h_plus_1", dx: 1 },
    { name: "p(h)(2q-q^2)", col: "rhs", dx: 1 },
  ];
  series.forEach((s, si) => {
    const pts = rows.map(
      (r) => [x(Number(r["h"]) + s.dx), y(Number(r[s.col]))] as [number, number],
    );
    parts.push(polyline(pts, STYLE.series[si]));
    pts.forEach((p) => parts.push(circle(p[0], p[1], STYLE.pointRadius, STYLE.series[si])));
    parts.push(text(area.x0 + 8, area.y0 + 14 + 14 * si, s.name, "start"));
    parts.push(line(area.x0 + 60, area.y0 + 10 + 14 * si, area.x0 + 84, area.y0 + 10 + 14 * si, STYLE.series[si], 2));
  });
  return frame("Vertical crossing probabilities and the recursion bound", parts.join("\n"));
}

function couplingTrend(table: Table): string {
  requireColumns(table, ["n", "mode", "half_fraction", "tq_fraction"]);
  const area = plotArea();
  const ns = [...new Set(table.rows.map((r) => Number(r["n"])))].sort((a, b) => a - b);
  const x = logScale(Math.min(...ns) / 1.3, Math.max(...ns) * 1.3, area.x0, area.x1);
  const values = table.rows.flatMap((r) => [Number(r["half_fraction"]), Number(r["tq_fraction"])]);
  const yMax = Math.max(...values, 1e-4);
  const y = linearScale(0, yMax * 1.2, area.y1, area.y0);
  const parts: string[] = [axes(x, y, area, "n", "median disagreement fraction")];
  let si = 0;
  for (const mode of ["free", "forced"]) {
    for (const col of ["half_fraction", "tq_fraction"]) {
      const pts: Array<[number, number]> = [];
      for (const n of ns) {
        const rows = table.rows.filter((r) => Number(r["n"]) === n && r["mode"] === mode);
        if (!rows.length) {
          continue;
        }
        pts.push([x(n), y(median(rows.map((r) => Number(r[col]))))]);
      }
      if (pts.length) {
        parts.push(polyline(pts, STYLE.series[si % STYLE.series.length]));
        pts.forEach((p) => parts.push(circle(p[0], p[1], STYLE.pointRadius, STYLE.series[si % STYLE.series.length])));
        parts.push(
          text(area.x0 + 8, area.y0 + 14 + 14 * si, `${mode} ${col.replace("_fraction", "")}`, "start"),
        );
      }
      si += 1;
    }
  }
  return frame("Coupling disagreement fractions against n", parts.join("\n"));
}

function wRatio(table: Table): string {
  requireColumns(table, ["n", "max_w_over_R"]);
  const area = plotArea();
  const ns = [...new Set(table.rows.map((r) => Number(r["n"])))].sort((a, b) => a - b);
  const x = logScale(Math.min(...ns) / 1.3, Math.max(...ns) * 1.3, area.x0, area.x1);
  const vals = table.rows.map((r) => Number(r["max_w_over_R"]));
  const y = linearScale(0, Math.max(...vals) * 1.15, area.y1, area.y0);
  const parts: string[] = [axes(x, y, area, "n", "max |W| / R")];
  for (const row of table.rows) {
    parts.push(circle(x(Number(row["n"])), y(Number(row["max_w_over_R"])), STYLE.pointRadius - 1, STYLE.series[2]));
  }
  const medians: Array<[number, number]> = ns.map((n) => [
    x(n),
    y(median(table.rows.filter((r) => Number(r["n"]) === n).map((r) => Number(r["max_w_over_R"])))),
  ]);
  parts.push(polyline(medians, STYLE.series[1], 2));
  return frame("Inactive-closure size ratio against n", parts.join("\n"));
}
