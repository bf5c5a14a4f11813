/**
 * Overlaid normal densities on a shared axis — the picture of how a
 * two-level stochastic fitness signal (off-mean vs on-mean, common noise)
 * separates, e.g. means -0.06 and 0.18 with standard deviation 1.
 */

import { mkdirSync, writeFileSync } from "fs";
import { dirname } from "path";
import { pdfPair } from "./gaussian.js";
import { axes, Frame, polyline, svgDocument } from "./svg.js";

export interface PdfOptions {
  width?: number;
  height?: number;
  points?: number;
  title?: string;
}

const MARGIN_LEFT = 56;
const MARGIN_RIGHT = 16;
const MARGIN_TOP = 40;
const MARGIN_BOTTOM = 52;
const COLOR_A = "#9c9c9c";
const COLOR_B = "#20609c";

/**
 * Render the two densities as an SVG string. Pure: identical arguments
 * produce identical markup. Requires sigma > 0.
 */
export function renderPdfs(
  meanA: number,
  meanB: number,
  sigma: number,
  options: PdfOptions = {},
): string {
  const width = options.width ?? 460;
  const height = options.height ?? 320;
  const [curveA, curveB] = pdfPair(meanA, meanB, sigma, options.points ?? 241);

  const peak = Math.max(...curveA.ys, ...curveB.ys);
  const frame: Frame = {
    x0: MARGIN_LEFT,
    y0: MARGIN_TOP,
    width: width - MARGIN_LEFT - MARGIN_RIGHT,
    height: height - MARGIN_TOP - MARGIN_BOTTOM,
    xMin: curveA.xs[0],
    xMax: curveA.xs[curveA.xs.length - 1],
    yMin: 0,
    yMax: peak * 1.08,
  };

  const xTicks: number[] = [];
  const lo = Math.ceil(frame.xMin);
  const hi = Math.floor(frame.xMax);
  for (let t = lo; t <= hi; t++) xTicks.push(t);
  const yStep = peak > 0.2 ? 0.1 : 0.05;
  const yTicks: number[] = [];
  for (let t = 0; t <= frame.yMax + 1e-12; t += yStep) {
    yTicks.push(Number(t.toFixed(2)));
  }

  const parts: string[] = [];
  parts.push(
    axes(frame, {
      xTicks,
      yTicks,
      xLabel: "fitness value",
      yLabel: "density",
      title: options.title ?? `N(${meanA}, ${sigma}²) vs N(${meanB}, ${sigma}²)`,
      yTickDecimals: 2,
    }),
  );
  parts.push(
    polyline(frame, curveA.xs, curveA.ys, {
      stroke: COLOR_A,
      strokeWidth: 2,
      opacity: 1,
    }),
  );
  parts.push(
    polyline(frame, curveB.xs, curveB.ys, {
      stroke: COLOR_B,
      strokeWidth: 2,
      opacity: 1,
    }),
  );

  return svgDocument(width, height, parts.join("\n"));
}

/** Render to a file and return the written markup. */
export function plotPdfs(
  meanA: number,
  meanB: number,
  sigma: number,
  out: string,
  options: PdfOptions = {},
): string {
  const svg = renderPdfs(meanA, meanB, sigma, options);
  mkdirSync(dirname(out), { recursive: true });
  writeFileSync(out, svg);
  return svg;
}
