import { writeFileSync } from "fs";
import { byRep, loadRecords, loadSummary, predictedKey, RecordRow } from "./data.js";

export interface PlotJob {
  csvPath: string;
  summaryPath: string;
  outPath: string;
  column: string;
  logX: boolean;
}

const WIDTH = 880;
const HEIGHT = 540;
const MARGIN = { left: 72, right: 24, top: 40, bottom: 56 };

type Scale = (v: number) => number;

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  return (v) => outLo + ((v - lo) / span) * (outHi - outLo);
}

function fmt(v: number): string {
  return Number.isInteger(v) ? v.toString() : v.toPrecision(4);
}

function xTicks(lo: number, hi: number, logX: boolean): number[] {
  if (logX) {
    const ticks: number[] = [];
    for (let e = Math.ceil(Math.log10(lo)); Math.pow(10, e) <= hi; e++) {
      ticks.push(Math.pow(10, e));
    }
    return ticks.length >= 2 ? ticks : [lo, hi];
  }
  const step = (hi - lo) / 5;
  return Array.from({ length: 6 }, (_, i) => lo + i * step);
}

function polyline(points: Array<[number, number]>, cls: string, style: string): string {
  if (points.length === 0) return "";
  const attr = points.map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`).join(" ");
  return `<polyline class="${cls}" fill="none" ${style} points="${attr}"/>`;
}

/**
 * Running-max Chover diagnostic: one thin curve per replication, a bold
 * pooled-max curve, and a dashed horizontal reference line at the
 * predicted limit read from summary.json.  Never recomputes statistics:
 * the CSV and summary are the single source of truth.
 */
export function renderChover(job: PlotJob): void {
  const { rows, columns } = loadRecords(job.csvPath);
  if (!columns.includes(job.column)) {
    throw new Error(`column '${job.column}' not in records.csv (have: ${columns.join(", ")})`);
  }
  const summary = loadSummary(job.summaryPath);
  const key = predictedKey(job.column);
  const predicted = key ? summary.predicted[key] : null;

  const groups = byRep(rows);
  const xs = rows.map((r) => r.n).filter((n): n is number => n !== null && n > 0);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const values = rows
    .map((r) => r[job.column])
    .filter((v): v is number => v !== null && Number.isFinite(v));
  const yHi = Math.max(predicted ?? 0, ...(values.length ? values : [1])) * 1.08 || 1;

  const xmap: Scale = job.logX
    ? (() => {
        const s = linearScale(Math.log10(xLo), Math.log10(xHi), MARGIN.left, WIDTH - MARGIN.right);
        return (v: number) => s(Math.log10(v));
      })()
    : linearScale(xLo, xHi, MARGIN.left, WIDTH - MARGIN.right);
  const ymap = linearScale(0, yHi, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${MARGIN.left}" y="24" font-family="sans-serif" font-size="15">${job.column} vs n (${groups.size} replications)</text>`
  );

  // axes
  const x0 = MARGIN.left;
  const y0 = HEIGHT - MARGIN.bottom;
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${WIDTH - MARGIN.right}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" stroke="black"/>`
  );
  for (const t of xTicks(xLo, xHi, job.logX)) {
    const x = xmap(t);
    parts.push(
      `<line x1="${x.toFixed(1)}" y1="${y0}" x2="${x.toFixed(1)}" y2="${y0 + 5}" stroke="black"/>`,
      `<text x="${x.toFixed(1)}" y="${y0 + 20}" font-family="sans-serif" font-size="11" text-anchor="middle">${fmt(t)}</text>`
    );
  }
  for (let i = 0; i <= 5; i++) {
    const v = (yHi * i) / 5;
    const y = ymap(v);
    parts.push(
      `<line x1="${x0 - 5}" y1="${y.toFixed(1)}" x2="${x0}" y2="${y.toFixed(1)}" stroke="black"/>`,
      `<text x="${x0 - 8}" y="${(y + 4).toFixed(1)}" font-family="sans-serif" font-size="11" text-anchor="end">${fmt(v)}</text>`
    );
  }

  // per-replication curves
  for (const [, recs] of [...groups.entries()].sort((a, b) => a[0] - b[0])) {
    const pts: Array<[number, number]> = [];
    for (const r of recs) {
      const v = r[job.column];
      if (r.n !== null && v !== null && Number.isFinite(v)) pts.push([xmap(r.n), ymap(v)]);
    }
    parts.push(polyline(pts, "rep-curve", 'stroke="#8aa" stroke-width="1"'));
  }

  // pooled max across replications at each checkpoint
  const pooled = new Map<number, number>();
  for (const r of rows) {
    const v = r[job.column];
    if (r.n === null || v === null || !Number.isFinite(v)) continue;
    const cur = pooled.get(r.n);
    if (cur === undefined || v > cur) pooled.set(r.n, v);
  }
  const pooledPts: Array<[number, number]> = [...pooled.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([n, v]) => [xmap(n), ymap(v)]);
  parts.push(polyline(pooledPts, "pooled-curve", 'stroke="#036" stroke-width="2.5"'));

  // reference line at the predicted limit
  if (predicted !== null && predicted !== undefined) {
    const y = ymap(predicted).toFixed(1);
    parts.push(
      `<line class="reference-line" data-predicted="${predicted}" x1="${x0}" y1="${y}" x2="${WIDTH - MARGIN.right}" y2="${y}" stroke="#c33" stroke-width="1.5" stroke-dasharray="7,5"/>`,
      `<text x="${WIDTH - MARGIN.right}" y="${(Number(y) - 6).toFixed(1)}" font-family="sans-serif" font-size="12" fill="#c33" text-anchor="end">predicted ${predicted.toPrecision(6)}</text>`
    );
  }

  parts.push("</svg>");
  writeFileSync(job.outPath, parts.join("\n"), "utf-8");
}

/**
 * Tail validation view: log10|numerator| scatter against log10 n with the
 * log10 of the normalizer column as a reference curve, showing the delayed
 * sums tracking their predicted scale.
 */
export function renderTail(
  job: PlotJob,
  numerator: string = "T",
  reference: string = "B_an"
): void {
  const { rows, columns } = loadRecords(job.csvPath);
  for (const col of [numerator, reference]) {
    if (!columns.includes(col)) {
      throw new Error(`column '${col}' not in records.csv (have: ${columns.join(", ")})`);
    }
  }
  const pts: Array<[number, number]> = [];
  const ref: Array<[number, number]> = [];
  for (const r of rows) {
    if (r.n === null || r.n <= 1) continue;
    const lx = Math.log10(r.n);
    const t = r[numerator];
    if (t !== null && Math.abs(t) > 0) pts.push([lx, Math.log10(Math.abs(t))]);
    const b = r[reference];
    if (b !== null && b > 0 && (r.rep ?? 0) === 0) ref.push([lx, Math.log10(b)]);
  }
  if (pts.length === 0) throw new Error(`no finite nonzero values in column '${numerator}'`);
  const xLo = Math.min(...pts.map((p) => p[0]));
  const xHi = Math.max(...pts.map((p) => p[0]));
  const ys = pts.concat(ref).map((p) => p[1]);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);
  const xmap = linearScale(xLo, xHi, MARGIN.left, WIDTH - MARGIN.right);
  const ymap = linearScale(yLo, yHi + 0.3, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${MARGIN.left}" y="24" font-family="sans-serif" font-size="15">log10|${numerator}| vs log10 n (reference: ${reference})</text>`,
  ];
  for (const [x, y] of pts) {
    parts.push(
      `<circle class="tail-point" cx="${xmap(x).toFixed(1)}" cy="${ymap(y).toFixed(1)}" r="1.6" fill="#468"/>`
    );
  }
  parts.push(
    polyline(ref.sort((a, b) => a[0] - b[0]).map(([x, y]) => [xmap(x), ymap(y)]),
      "scale-curve", 'stroke="#c33" stroke-width="2"')
  );
  parts.push("</svg>");
  writeFileSync(job.outPath, parts.join("\n"), "utf-8");
}
