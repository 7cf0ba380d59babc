/** All figure styling lives here; figures are documentation, not analysis. */

export const STYLE = {
  width: 640,
  height: 420,
  margin: { top: 36, right: 24, bottom: 52, left: 64 },
  font: "12px sans-serif",
  titleFont: "14px sans-serif",
  axisColor: "#333333",
  gridColor: "#dddddd",
  series: ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"],
  pointRadius: 3,
  background: "#ffffff",
};

/** Hue by angular coordinate, matching the drawing convention. */
export function angleColor(theta: number): string {
  const hue = ((theta + Math.PI) / (2 * Math.PI)) * 360;
  return `hsl(${hue.toFixed(1)}, 75%, 45%)`;
}
