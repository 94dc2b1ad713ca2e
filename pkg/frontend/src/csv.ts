/** Reader for the experiment harness results CSV. */

export interface ResultRow {
  experiment: string;
  strategy: string;
  seed: number;
  iteration: number;
  objective: number;
  accuracy: number | null;
  updates: number;
}

export const RESULTS_HEADER =
  "experiment,strategy,seed,iteration,objective,accuracy,updates";

export function parseResultsCsv(text: string): ResultRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  if (lines[0] !== RESULTS_HEADER) {
    throw new Error(
      `unexpected CSV header "${lines[0]}", want "${RESULTS_HEADER}"`,
    );
  }
  const rows: ResultRow[] = [];
  for (const [index, line] of lines.slice(1).entries()) {
    const parts = line.split(",");
    if (parts.length !== 7) {
      throw new Error(`line ${index + 2}: expected 7 fields, got ${parts.length}`);
    }
    const [experiment, strategy, seed, iteration, objective, accuracy, updates] =
      parts;
    rows.push({
      experiment,
      strategy,
      seed: Number(seed),
      iteration: Number(iteration),
      objective: Number(objective),
      accuracy: accuracy === "" ? null : Number(accuracy),
      updates: Number(updates),
    });
  }
  return rows;
}
