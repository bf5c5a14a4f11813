/**
 * Per-locus trajectory panels: every selected locus gets one panel, every
 * run contributes one line, the y axis is always the full one-frequency
 * range [0, 1] and the x axis spans the recorded generations.
 */

import { mkdirSync, readFileSync, writeFileSync } from "fs";
import { dirname } from "path";
import { getSeries, maxGeneration, parseTrace, TraceTable } from "./trace.js";
import { axes, escapeXml, Frame, polyline, svgDocument } from "./svg.js";

/** What to draw and where to put it. */
export interface FigureSpec {
  /** Trace file, or several (e.g. shards of one experiment). */
  trace: string | string[];
  /** 1-based loci to draw, one panel each. */
  loci: number[];
  /** Output image path (SVG). */
  out: string;
  /** Figure title; panels are always titled by locus. */
  title?: string;
}

export interface TrajectoryOptions {
  title?: string;
  panelWidth?: number;
  panelHeight?: number;
}

const MARGIN_LEFT = 56;
const MARGIN_RIGHT = 16;
const MARGIN_TOP = 40;
const MARGIN_BOTTOM = 52;
const PANEL_GAP = 30;
const LINE_COLOR = "#20609c";

/** Round ticks (1/2/5 steps) from 0 to at least hi, about `count` of them. */
export function niceTicks(hi: number, count = 5): number[] {
  if (hi <= 0) return [0];
  const rawStep = hi / count;
  const power = Math.floor(Math.log10(rawStep));
  const base = Math.pow(10, power);
  let step = 10 * base;
  for (const mult of [1, 2, 5]) {
    if (mult * base >= rawStep) {
      step = mult * base;
      break;
    }
  }
  const ticks: number[] = [];
  for (let t = 0; t <= hi + step * 1e-9; t += step) {
    ticks.push(Math.round(t / step) * step);
  }
  return ticks;
}

/** So hundreds or thousands of overplotted runs stay legible. */
export function lineOpacity(runCount: number): number {
  return Math.min(0.85, Math.max(0.03, 7.5 / runCount));
}

/**
 * Render the panels as an SVG string. Pure: the same table and options
 * always produce the same markup.
 */
export function renderTrajectories(
  table: TraceTable,
  loci: number[],
  options: TrajectoryOptions = {},
): string {
  if (loci.length === 0) {
    throw new Error("no loci selected");
  }
  for (const locus of loci) {
    if (!table.loci.includes(locus)) {
      throw new Error(
        `locus ${locus} not present in trace (has ${table.loci.join(", ") || "none"})`,
      );
    }
  }
  if (table.runs.length === 0) {
    throw new Error("trace contains no runs");
  }

  const panelWidth = options.panelWidth ?? 300;
  const panelHeight = options.panelHeight ?? 260;
  const width =
    MARGIN_LEFT + MARGIN_RIGHT + loci.length * panelWidth + (loci.length - 1) * PANEL_GAP;
  const height = MARGIN_TOP + MARGIN_BOTTOM + panelHeight;

  const lastGeneration = maxGeneration(table);
  const xTicks = niceTicks(lastGeneration);
  const yTicks = [0, 0.2, 0.4, 0.6, 0.8, 1];
  const opacity = lineOpacity(table.runs.length);

  const parts: string[] = [];
  loci.forEach((locus, index) => {
    const frame: Frame = {
      x0: MARGIN_LEFT + index * (panelWidth + PANEL_GAP),
      y0: MARGIN_TOP,
      width: panelWidth,
      height: panelHeight,
      xMin: 0,
      xMax: Math.max(lastGeneration, 1),
      yMin: 0,
      yMax: 1,
    };
    parts.push(`<g class="panel" data-locus="${locus}">`);
    parts.push(
      axes(frame, {
        xTicks,
        yTicks,
        xLabel: "generation",
        yLabel: index === 0 ? "one-frequency" : undefined,
        title: `locus ${locus}`,
      }),
    );
    for (const run of table.runs) {
      const points = getSeries(table, run, locus);
      parts.push(
        polyline(
          frame,
          points.map((p) => p.generation),
          points.map((p) => p.frequency),
          { stroke: LINE_COLOR, strokeWidth: 1, opacity },
        ),
      );
    }
    parts.push("</g>");
  });

  if (options.title) {
    parts.unshift(
      `<text x="${width / 2}" y="18" font-size="15" text-anchor="middle"` +
        ` fill="#111111">${escapeXml(options.title)}</text>`,
    );
  }

  return svgDocument(width, height, parts.join("\n"));
}

/** Read one or more trace files into a single table; run ids must not collide. */
export function loadTraceFiles(paths: string[]): TraceTable {
  if (paths.length === 0) {
    throw new Error("no trace files given");
  }
  const tables = paths.map((path) => parseTrace(readFileSync(path, "utf8"), path));
  if (tables.length === 1) return tables[0];

  const merged: TraceTable = { runs: [], loci: [], series: new Map() };
  const runs = new Set<number>();
  const loci = new Set<number>();
  tables.forEach((table, index) => {
    for (const run of table.runs) {
      if (runs.has(run)) {
        throw new Error(`${paths[index]}: run ${run} appears in more than one trace file`);
      }
      runs.add(run);
    }
    for (const locus of table.loci) loci.add(locus);
    for (const [key, points] of table.series) merged.series.set(key, points);
  });
  merged.runs = [...runs].sort((a, b) => a - b);
  merged.loci = [...loci].sort((a, b) => a - b);
  return merged;
}

/** Render a spec to its output file and return the written markup. */
export function plotTrajectories(spec: FigureSpec): string {
  const paths = Array.isArray(spec.trace) ? spec.trace : [spec.trace];
  const table = loadTraceFiles(paths);
  const svg = renderTrajectories(table, spec.loci, { title: spec.title });
  mkdirSync(dirname(spec.out), { recursive: true });
  writeFileSync(spec.out, svg);
  return svg;
}
