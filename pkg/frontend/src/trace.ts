/**
 * Reader for locus-frequency trace files.
 *
 * The format is delimited text with the exact header
 * `run,generation,locus,one_frequency` followed by one row per
 * (run, generation, locus) giving the fraction of ones at that locus.
 * Every parse failure is reported as `<source>:<line>: <reason>` so a
 * garbled row can be located in the file.
 */

export const TRACE_HEADER = "run,generation,locus,one_frequency";

/** One recorded point of a single locus's trajectory. */
export interface TracePoint {
  generation: number;
  frequency: number;
}

/** A parsed trace: all runs and loci present, plus per-series points. */
export interface TraceTable {
  /** Distinct run identifiers, ascending. */
  runs: number[];
  /** Distinct 1-based locus positions, ascending. */
  loci: number[];
  /** Points keyed by `${run}:${locus}`, ordered by generation. */
  series: Map<string, TracePoint[]>;
}

export function seriesKey(run: number, locus: number): string {
  return `${run}:${locus}`;
}

function fail(source: string, line: number, reason: string): never {
  throw new Error(`${source}:${line}: ${reason}`);
}

function parseIntField(
  raw: string,
  name: string,
  source: string,
  line: number,
): number {
  if (!/^-?\d+$/.test(raw)) {
    fail(source, line, `${name} must be an integer, got '${raw}'`);
  }
  return Number(raw);
}

/**
 * Parse trace text into a table.
 *
 * @param text complete file contents
 * @param source label used in error messages (conventionally the path)
 */
export function parseTrace(text: string, source = "trace"): TraceTable {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || lines[0].trim() !== TRACE_HEADER) {
    fail(source, 1, `expected header '${TRACE_HEADER}'`);
  }

  const series = new Map<string, TracePoint[]>();
  const runs = new Set<number>();
  const loci = new Set<number>();

  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "") continue; // trailing newline etc.
    const lineno = i + 1;
    const fields = line.split(",");
    if (fields.length !== 4) {
      fail(source, lineno, `expected 4 fields, got ${fields.length}`);
    }
    const run = parseIntField(fields[0], "run", source, lineno);
    const generation = parseIntField(fields[1], "generation", source, lineno);
    const locus = parseIntField(fields[2], "locus", source, lineno);
    const frequency = Number(fields[3]);
    if (fields[3].trim() === "" || Number.isNaN(frequency)) {
      fail(source, lineno, `one_frequency must be a number, got '${fields[3]}'`);
    }
    if (run < 0) fail(source, lineno, `run must be >= 0, got ${run}`);
    if (generation < 0) {
      fail(source, lineno, `generation must be >= 0, got ${generation}`);
    }
    if (locus < 1) fail(source, lineno, `locus must be >= 1, got ${locus}`);
    if (frequency < 0 || frequency > 1) {
      fail(source, lineno, `one_frequency must lie in [0, 1], got ${frequency}`);
    }

    runs.add(run);
    loci.add(locus);
    const key = seriesKey(run, locus);
    let points = series.get(key);
    if (!points) {
      points = [];
      series.set(key, points);
    }
    points.push({ generation, frequency });
  }

  for (const points of series.values()) {
    points.sort((a, b) => a.generation - b.generation);
  }

  return {
    runs: [...runs].sort((a, b) => a - b),
    loci: [...loci].sort((a, b) => a - b),
    series,
  };
}

/** Points for one run at one locus; throws if the series is absent. */
export function getSeries(
  table: TraceTable,
  run: number,
  locus: number,
): TracePoint[] {
  const points = table.series.get(seriesKey(run, locus));
  if (!points) {
    throw new Error(`trace has no series for run ${run}, locus ${locus}`);
  }
  return points;
}

/** Largest recorded generation across the whole table (0 if empty). */
export function maxGeneration(table: TraceTable): number {
  let max = 0;
  for (const points of table.series.values()) {
    for (const p of points) {
      if (p.generation > max) max = p.generation;
    }
  }
  return max;
}
