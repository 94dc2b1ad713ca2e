/** Deterministic SVG trajectory figures: one mean line per strategy with a
 * min-max or one-standard-deviation band, in the style of optimization
 * trajectory plots.
 */

import { StrategySeries } from "./stats.js";

export type BandKind = "minmax" | "std";

export interface PlotOptions {
  metric: string;
  band: BandKind;
  reference?: number; // horizontal rule, e.g. the exact ground energy
  width?: number;
  height?: number;
  title?: string;
}

// fixed palette; a strategy's color is keyed by its name so the same
// strategy is colored identically across figures
const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

export function strategyColor(strategy: string, all: string[]): string {
  const ordered = [...new Set(all)].sort();
  const index = ordered.indexOf(strategy);
  return PALETTE[(index >= 0 ? index : 0) % PALETTE.length];
}

interface Scale {
  (value: number): number;
}

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (value) => r0 + ((value - d0) / span) * (r1 - r0);
}

/** ~n "nice" tick positions covering [lo, hi]. */
export function ticks(lo: number, hi: number, n = 6): number[] {
  if (lo === hi) return [lo];
  const raw = (hi - lo) / n;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= raw) ?? candidates[4];
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

const fmt = (value: number) => {
  const rounded = value.toFixed(2);
  return rounded === "-0.00" ? "0.00" : rounded;
};

function tickLabel(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1000 || magnitude < 0.01) return value.toExponential(1);
  return String(Number(value.toPrecision(6)));
}

function bandBounds(series: StrategySeries, band: BandKind): [number[], number[]] {
  const lower = series.points.map((p) =>
    band === "minmax" ? p.min : p.mean - p.std,
  );
  const upper = series.points.map((p) =>
    band === "minmax" ? p.max : p.mean + p.std,
  );
  return [lower, upper];
}

export function renderPlot(
  allSeries: StrategySeries[],
  options: PlotOptions,
): string {
  if (allSeries.length === 0 || allSeries.every((s) => s.points.length === 0)) {
    throw new Error("nothing to plot: no series");
  }
  const width = options.width ?? 720;
  const height = options.height ?? 480;
  const margin = { left: 78, right: 16, top: 20, bottom: 48 };

  let xMax = 0;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const series of allSeries) {
    const [lower, upper] = bandBounds(series, options.band);
    for (const p of series.points) xMax = Math.max(xMax, p.iteration);
    yMin = Math.min(yMin, ...lower);
    yMax = Math.max(yMax, ...upper);
  }
  if (options.reference !== undefined) {
    yMin = Math.min(yMin, options.reference);
    yMax = Math.max(yMax, options.reference);
  }
  const pad = (yMax - yMin || 1) * 0.05;
  yMin -= pad;
  yMax += pad;

  const x = linearScale(0, xMax, margin.left, width - margin.right);
  const y = linearScale(yMin, yMax, height - margin.bottom, margin.top);

  const names = allSeries.map((s) => s.strategy);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  // grid and axes
  for (const tv of ticks(yMin + pad, yMax - pad)) {
    const yy = fmt(y(tv));
    parts.push(
      `<line x1="${margin.left}" y1="${yy}" x2="${width - margin.right}" y2="${yy}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${margin.left - 8}" y="${yy}" text-anchor="end" ` +
        `dominant-baseline="middle" font-size="12">${tickLabel(tv)}</text>`,
    );
  }
  for (const tv of ticks(0, xMax)) {
    const xx = fmt(x(tv));
    parts.push(
      `<line x1="${xx}" y1="${height - margin.bottom}" x2="${xx}" ` +
        `y2="${height - margin.bottom + 5}" stroke="#333333"/>`,
      `<text x="${xx}" y="${height - margin.bottom + 20}" text-anchor="middle" ` +
        `font-size="12">${tickLabel(tv)}</text>`,
    );
  }
  parts.push(
    `<line x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" ` +
      `y2="${height - margin.bottom}" stroke="#333333"/>`,
    `<line x1="${margin.left}" y1="${height - margin.bottom}" ` +
      `x2="${width - margin.right}" y2="${height - margin.bottom}" stroke="#333333"/>`,
    `<text x="${(margin.left + width - margin.right) / 2}" y="${height - 10}" ` +
      `text-anchor="middle" font-size="13">iteration</text>`,
    `<text x="18" y="${(margin.top + height - margin.bottom) / 2}" ` +
      `text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 18 ${(margin.top + height - margin.bottom) / 2})">` +
      `${options.metric}</text>`,
  );

  // bands under lines under the reference rule
  for (const series of allSeries) {
    const color = strategyColor(series.strategy, names);
    const [lower, upper] = bandBounds(series, options.band);
    const forward = series.points
      .map((p, i) => `${fmt(x(p.iteration))},${fmt(y(upper[i]))}`)
      .join(" L");
    const backward = [...series.points]
      .reverse()
      .map((p, i) => {
        const j = series.points.length - 1 - i;
        return `${fmt(x(p.iteration))},${fmt(y(lower[j]))}`;
      })
      .join(" L");
    parts.push(
      `<path d="M${forward} L${backward} Z" fill="${color}" ` +
        `fill-opacity="0.18" stroke="none"/>`,
    );
  }
  for (const series of allSeries) {
    const color = strategyColor(series.strategy, names);
    const line = series.points
      .map((p) => `${fmt(x(p.iteration))},${fmt(y(p.mean))}`)
      .join(" L");
    parts.push(
      `<path d="M${line}" fill="none" stroke="${color}" stroke-width="1.8"/>`,
    );
  }
  if (options.reference !== undefined) {
    const yy = fmt(y(options.reference));
    parts.push(
      `<line x1="${margin.left}" y1="${yy}" x2="${width - margin.right}" ` +
        `y2="${yy}" stroke="#000000" stroke-dasharray="6 4" stroke-width="1.2"/>`,
      `<text x="${width - margin.right - 4}" y="${Number(yy) - 5}" ` +
        `text-anchor="end" font-size="11">reference ${options.reference}</text>`,
    );
  }

  // legend, top right
  let legendY = margin.top + 8;
  for (const series of allSeries) {
    const color = strategyColor(series.strategy, names);
    const xSwatch = width - margin.right - 150;
    parts.push(
      `<line x1="${xSwatch}" y1="${legendY}" x2="${xSwatch + 26}" ` +
        `y2="${legendY}" stroke="${color}" stroke-width="2.5"/>`,
      `<text x="${xSwatch + 32}" y="${legendY + 4}" font-size="12">` +
        `${series.strategy}</text>`,
    );
    legendY += 18;
  }
  if (options.title) {
    parts.push(
      `<text x="${(margin.left + width - margin.right) / 2}" y="14" ` +
        `text-anchor="middle" font-size="14">${options.title}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
