/** Normal probability density at x. */
export function normalPdf(x: number, mean = 0, sigma = 1): number {
  if (sigma <= 0) {
    throw new Error(`sigma must be > 0, got ${sigma}`);
  }
  const z = (x - mean) / sigma;
  return Math.exp(-0.5 * z * z) / (sigma * Math.sqrt(2 * Math.PI));
}

/** n evenly spaced values from lo to hi inclusive. */
export function linspace(lo: number, hi: number, n: number): number[] {
  if (!Number.isInteger(n) || n < 2) {
    throw new Error(`need at least 2 points, got ${n}`);
  }
  const step = (hi - lo) / (n - 1);
  const xs = new Array<number>(n);
  for (let i = 0; i < n; i++) {
    xs[i] = lo + i * step;
  }
  xs[n - 1] = hi; // exact endpoint regardless of rounding
  return xs;
}

/** One density curve sampled on a shared grid. */
export interface PdfCurve {
  mean: number;
  sigma: number;
  xs: number[];
  ys: number[];
}

export function pdfCurve(mean: number, sigma: number, xs: number[]): PdfCurve {
  return {
    mean,
    sigma,
    xs,
    ys: xs.map((x) => normalPdf(x, mean, sigma)),
  };
}

/**
 * Sample two normal densities on one grid wide enough to show both
 * (four standard deviations beyond the outer means).
 */
export function pdfPair(
  meanA: number,
  meanB: number,
  sigma: number,
  points = 241,
): [PdfCurve, PdfCurve] {
  if (sigma <= 0) {
    throw new Error(`sigma must be > 0, got ${sigma}`);
  }
  const lo = Math.min(meanA, meanB) - 4 * sigma;
  const hi = Math.max(meanA, meanB) + 4 * sigma;
  const xs = linspace(lo, hi, points);
  return [pdfCurve(meanA, sigma, xs), pdfCurve(meanB, sigma, xs)];
}
