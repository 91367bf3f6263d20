import { readFileSync } from "fs";
import Papa from "papaparse";

/** One records.csv row; absent statistics are null. */
export type RecordRow = {
  rep: number;
  n: number;
  [column: string]: number | null;
};

export interface Summary {
  predicted: { loglog: number | null; gamma: number | null; gamma_star: number | null };
  predicted_limit: number | null;
  branch: string;
  n_max: number;
  [key: string]: unknown;
}

export function loadSummary(path: string): Summary {
  return JSON.parse(readFileSync(path, "utf-8")) as Summary;
}

export function loadRecords(path: string): { rows: RecordRow[]; columns: string[] } {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new Error(`failed to parse ${path}: ${parsed.errors[0].message}`);
  }
  const columns = parsed.meta.fields ?? [];
  const rows = parsed.data.map((raw) => {
    const row: RecordRow = { rep: 0, n: 0 };
    for (const col of columns) {
      const text = raw[col];
      row[col] = text === "" || text === undefined ? null : Number(text);
    }
    return row;
  });
  return { rows, columns };
}

/** Group rows by replication index, preserving checkpoint order. */
export function byRep(rows: RecordRow[]): Map<number, RecordRow[]> {
  const groups = new Map<number, RecordRow[]>();
  for (const row of rows) {
    const rep = row.rep ?? 0;
    if (rep === null) continue;
    const bucket = groups.get(rep);
    if (bucket) bucket.push(row);
    else groups.set(rep, [row]);
  }
  return groups;
}

/** Map a statistic column to its predicted-limit key in summary.json. */
export function predictedKey(column: string): "loglog" | "gamma" | "gamma_star" | null {
  if (column.endsWith("gamma_star")) return "gamma_star";
  if (column.endsWith("gamma")) return "gamma";
  if (column.endsWith("loglog")) return "loglog";
  return null;
}
