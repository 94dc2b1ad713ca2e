/** Trajectory statistics must numerically equal the harness's summarize
 * output (the frozen fixture was produced by `qpath summarize`).
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { parseResultsCsv } from "../src/csv.js";
import { trajectoryStats } from "../src/stats.js";

const fixtures = join(dirname(fileURLToPath(import.meta.url)), "..", "fixtures");

interface SummaryRow {
  strategy: string;
  iteration: number;
  runs: number;
  objective_mean: number;
  objective_min: number;
  objective_max: number;
  objective_std: number;
  accuracy_mean: number | null;
  accuracy_min: number | null;
  accuracy_max: number | null;
  accuracy_std: number | null;
}

function readSummary(path: string): SummaryRow[] {
  const lines = readFileSync(path, "utf8").split(/\r?\n/).filter(Boolean);
  const header = lines[0].split(",");
  return lines.slice(1).map((line) => {
    const parts = line.split(",");
    const get = (name: string) => parts[header.indexOf(name)];
    const num = (name: string) => {
      const raw = get(name);
      return raw === "" ? null : Number(raw);
    };
    return {
      strategy: get("strategy"),
      iteration: Number(get("iteration")),
      runs: Number(get("runs")),
      objective_mean: Number(get("objective_mean")),
      objective_min: Number(get("objective_min")),
      objective_max: Number(get("objective_max")),
      objective_std: Number(get("objective_std")),
      accuracy_mean: num("accuracy_mean"),
      accuracy_min: num("accuracy_min"),
      accuracy_max: num("accuracy_max"),
      accuracy_std: num("accuracy_std"),
    };
  });
}

describe("trajectoryStats vs the harness summarize output", () => {
  it("matches the hand-built three-seed fixture exactly", () => {
    const rows = parseResultsCsv(
      readFileSync(join(fixtures, "three_seed.csv"), "utf8"),
    );
    const summary = readSummary(join(fixtures, "three_seed_summary.csv"));
    const series = trajectoryStats(rows, "objective");
    expect(series).toHaveLength(1);
    expect(series[0].strategy).toBe("demo");
    for (const expected of summary) {
      const point = series[0].points.find(
        (p) => p.iteration === expected.iteration,
      );
      expect(point).toBeDefined();
      expect(point!.runs).toBe(expected.runs);
      expect(point!.mean).toBe(expected.objective_mean);
      expect(point!.min).toBe(expected.objective_min);
      expect(point!.max).toBe(expected.objective_max);
      expect(point!.std).toBe(expected.objective_std);
    }
  });

  it("hand-checked values of the three-seed fixture", () => {
    const rows = parseResultsCsv(
      readFileSync(join(fixtures, "three_seed.csv"), "utf8"),
    );
    const [series] = trajectoryStats(rows, "objective");
    const at0 = series.points[0];
    expect(at0.mean).toBe(2.0);
    expect(at0.min).toBe(1.0);
    expect(at0.max).toBe(3.0);
    expect(at0.std).toBeCloseTo(Math.sqrt(2 / 3), 15);
    const at1 = series.points[1];
    expect(at1.mean).toBe(0.5);
    expect(at1.std).toBeCloseTo(Math.sqrt(1 / 6), 15);
  });

  it("matches summarize on a real VQE output", () => {
    const rows = parseResultsCsv(
      readFileSync(join(fixtures, "vqe_small.csv"), "utf8"),
    );
    const summary = readSummary(join(fixtures, "vqe_small_summary.csv"));
    const byStrategy = new Map(
      trajectoryStats(rows, "objective").map((s) => [s.strategy, s]),
    );
    for (const expected of summary) {
      const point = byStrategy
        .get(expected.strategy)!
        .points.find((p) => p.iteration === expected.iteration)!;
      expect(point.mean).toBe(expected.objective_mean);
      expect(point.min).toBe(expected.objective_min);
      expect(point.max).toBe(expected.objective_max);
      expect(point.std).toBe(expected.objective_std);
    }
  });

  it("matches summarize on a real VQC output, both metrics", () => {
    const rows = parseResultsCsv(
      readFileSync(join(fixtures, "vqc_small.csv"), "utf8"),
    );
    const summary = readSummary(join(fixtures, "vqc_small_summary.csv"));
    const loss = new Map(
      trajectoryStats(rows, "objective").map((s) => [s.strategy, s]),
    );
    const accuracy = new Map(
      trajectoryStats(rows, "accuracy").map((s) => [s.strategy, s]),
    );
    for (const expected of summary) {
      const lossPoint = loss
        .get(expected.strategy)!
        .points.find((p) => p.iteration === expected.iteration)!;
      expect(lossPoint.mean).toBe(expected.objective_mean);
      expect(lossPoint.std).toBe(expected.objective_std);
      const accPoint = accuracy
        .get(expected.strategy)!
        .points.find((p) => p.iteration === expected.iteration)!;
      expect(accPoint.mean).toBe(expected.accuracy_mean);
      expect(accPoint.min).toBe(expected.accuracy_min);
      expect(accPoint.max).toBe(expected.accuracy_max);
      expect(accPoint.std).toBe(expected.accuracy_std);
    }
  });

  it("rejects a missing metric", () => {
    const rows = parseResultsCsv(
      readFileSync(join(fixtures, "vqe_small.csv"), "utf8"),
    );
    expect(() => trajectoryStats(rows, "accuracy")).toThrow(/missing/);
  });
});
