/** Per-(strategy, iteration) trajectory statistics across seeds.
 *
 * Matches the harness's `summarize` arithmetic: sequential summation,
 * population standard deviation.
 */

import { ResultRow } from "./csv.js";

export type Metric = "objective" | "accuracy";

export interface SeriesPoint {
  iteration: number;
  runs: number;
  mean: number;
  min: number;
  max: number;
  std: number;
}

export interface StrategySeries {
  strategy: string;
  points: SeriesPoint[];
}

function mean(values: number[]): number {
  let total = 0;
  for (const v of values) total += v;
  return total / values.length;
}

function summarizeValues(iteration: number, values: number[]): SeriesPoint {
  const m = mean(values);
  let varSum = 0;
  for (const v of values) varSum += (v - m) * (v - m);
  return {
    iteration,
    runs: values.length,
    mean: m,
    min: Math.min(...values),
    max: Math.max(...values),
    std: Math.sqrt(varSum / values.length),
  };
}

/** Group rows by strategy and iteration; strategies keep first-seen order. */
export function trajectoryStats(rows: ResultRow[], metric: Metric): StrategySeries[] {
  const perStrategy = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    const value = metric === "objective" ? row.objective : row.accuracy;
    if (value === null) {
      throw new Error(`metric "${metric}" missing in CSV rows`);
    }
    let iterations = perStrategy.get(row.strategy);
    if (!iterations) {
      iterations = new Map();
      perStrategy.set(row.strategy, iterations);
    }
    let bucket = iterations.get(row.iteration);
    if (!bucket) {
      bucket = [];
      iterations.set(row.iteration, bucket);
    }
    bucket.push(value);
  }
  const out: StrategySeries[] = [];
  for (const [strategy, iterations] of perStrategy) {
    const points = [...iterations.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([iteration, values]) => summarizeValues(iteration, values));
    out.push({ strategy, points });
  }
  return out;
}
