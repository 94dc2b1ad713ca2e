#!/usr/bin/env node
/** Render a qpath results CSV as an SVG trajectory figure.
 *
 * Usage:
 *   qpath-plot --in results.csv --metric objective --band minmax \
 *              [--ref -140.272] [--title "..."] --out fig.svg
 */

import { readFileSync, realpathSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseResultsCsv } from "./csv.js";
import { trajectoryStats, Metric } from "./stats.js";
import { renderPlot, BandKind } from "./svg.js";

interface Args {
  in: string;
  out: string;
  metric: Metric;
  band: BandKind;
  ref?: number;
  title?: string;
}

function parseArgs(argv: string[]): Args {
  const out: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    if (!flag.startsWith("--") || i + 1 >= argv.length) {
      throw new Error(`malformed arguments near "${flag}"`);
    }
    out[flag.slice(2)] = argv[i + 1];
  }
  if (!out.in || !out.out) {
    throw new Error("--in and --out are required");
  }
  const metric = (out.metric ?? "objective") as Metric;
  if (metric !== "objective" && metric !== "accuracy") {
    throw new Error(`unknown metric "${out.metric}"`);
  }
  const band = (out.band ?? "minmax") as BandKind;
  if (band !== "minmax" && band !== "std") {
    throw new Error(`unknown band "${out.band}"`);
  }
  return {
    in: out.in,
    out: out.out,
    metric,
    band,
    ref: out.ref === undefined ? undefined : Number(out.ref),
    title: out.title,
  };
}

export async function main(argv: string[]): Promise<number> {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (error) {
    console.error((error as Error).message);
    return 2;
  }
  const rows = parseResultsCsv(readFileSync(args.in, "utf8"));
  const series = trajectoryStats(rows, args.metric);
  const svg = renderPlot(series, {
    metric: args.metric,
    band: args.band,
    reference: args.ref,
    title: args.title,
  });
  if (args.out.toLowerCase().endsWith(".png")) {
    const sharp = (await import("sharp")).default;
    await sharp(Buffer.from(svg)).png().toFile(args.out);
  } else {
    writeFileSync(args.out, svg);
  }
  console.log(`wrote ${args.out}`);
  return 0;
}

const isDirectRun = (() => {
  if (process.argv[1] === undefined) return false;
  try {
    return import.meta.url === pathToFileURL(realpathSync(process.argv[1])).href;
  } catch {
    return false;
  }
})();
if (isDirectRun) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
