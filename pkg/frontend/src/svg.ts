/** Hand-rolled SVG assembly: every element is a string, coordinates are
 * rounded to two decimals so reruns emit identical bytes. */

import { STYLE } from "./style.js";

export function fmt(value: number): string {
  return value.toFixed(2);
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="${STYLE.background}"/>\n` +
    body +
    "\n</svg>\n"
  );
}

export function line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${width}"/>`;
}

export function polyline(points: Array<[number, number]>, stroke: string, width = 1.5): string {
  const attr = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${attr}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`;
}

export function circle(cx: number, cy: number, r: number, fill: string): string {
  return `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  anchor: "start" | "middle" | "end" = "start",
  font: string = STYLE.font,
): string {
  return (
    `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ` +
    `style="font:${font}" fill="${STYLE.axisColor}">${escapeXml(content)}</text>`
  );
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface Scale {
  (value: number): number;
  ticks: number[];
  label: (v: number) => string;
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  const fn = ((v: number) => outLo + ((v - lo) / span) * (outHi - outLo)) as Scale;
  const step = niceStep(span);
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-9; t += step) {
    ticks.push(t);
  }
  fn.ticks = ticks;
  fn.label = (v) => trimNumber(v);
  return fn;
}

export function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const span = lhi - llo || 1;
  const fn = ((v: number) => outLo + ((Math.log10(v) - llo) / span) * (outHi - outLo)) as Scale;
  const ticks: number[] = [];
  for (let p = Math.floor(llo); p <= Math.ceil(lhi); p++) {
    const t = 10 ** p;
    if (t >= lo / 1.0001 && t <= hi * 1.0001) {
      ticks.push(t);
    }
  }
  if (ticks.length < 2) {
    ticks.length = 0;
    ticks.push(lo, hi);
  }
  fn.ticks = ticks;
  fn.label = (v) => (v >= 1 && v < 10_000 ? trimNumber(v) : `1e${Math.round(Math.log10(v))}`);
  return fn;
}

function niceStep(span: number): number {
  const raw = span / 6;
  const mag = 10 ** Math.floor(Math.log10(raw));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) {
      return m * mag;
    }
  }
  return 10 * mag;
}

function trimNumber(v: number): string {
  const s = v.toPrecision(6);
  return String(Number(s));
}

/** Frame, tick marks, tick labels, and axis labels for one plot area. */
export function axes(
  xScale: Scale,
  yScale: Scale,
  area: { x0: number; y0: number; x1: number; y1: number },
  xLabel: string,
  yLabel: string,
): string {
  const parts: string[] = [];
  parts.push(line(area.x0, area.y1, area.x1, area.y1, STYLE.axisColor));
  parts.push(line(area.x0, area.y0, area.x0, area.y1, STYLE.axisColor));
  for (const t of xScale.ticks) {
    const px = xScale(t);
    parts.push(line(px, area.y1, px, area.y1 + 4, STYLE.axisColor));
    parts.push(text(px, area.y1 + 16, xScale.label(t), "middle"));
  }
  for (const t of yScale.ticks) {
    const py = yScale(t);
    parts.push(line(area.x0 - 4, py, area.x0, py, STYLE.axisColor));
    parts.push(text(area.x0 - 6, py + 4, yScale.label(t), "end"));
  }
  parts.push(text((area.x0 + area.x1) / 2, area.y1 + 36, xLabel, "middle"));
  parts.push(
    `<g transform="rotate(-90 ${fmt(area.x0 - 48)} ${fmt((area.y0 + area.y1) / 2)})">` +
      text(area.x0 - 48, (area.y0 + area.y1) / 2, yLabel, "middle") +
      "</g>",
  );
  return parts.join("\n");
}
