/**
 * Minimal deterministic SVG builder. Coordinates are formatted with a
 * fixed number of decimals so the same data always yields byte-identical
 * markup.
 */

/** Maps data coordinates onto a pixel rectangle (y grows upward in data). */
export interface Frame {
  x0: number;
  y0: number;
  width: number;
  height: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function fmt(value: number): string {
  return value.toFixed(2);
}

export function toX(frame: Frame, x: number): number {
  const span = frame.xMax - frame.xMin;
  const t = span === 0 ? 0.5 : (x - frame.xMin) / span;
  return frame.x0 + t * frame.width;
}

export function toY(frame: Frame, y: number): number {
  const span = frame.yMax - frame.yMin;
  const t = span === 0 ? 0.5 : (y - frame.yMin) / span;
  return frame.y0 + frame.height - t * frame.height;
}

export interface StrokeStyle {
  stroke: string;
  strokeWidth: number;
  opacity: number;
}

/** One data series as a polyline clipped to nothing (data is pre-bounded). */
export function polyline(
  frame: Frame,
  xs: readonly number[],
  ys: readonly number[],
  style: StrokeStyle,
): string {
  if (xs.length !== ys.length) {
    throw new Error(`polyline needs matching lengths, got ${xs.length} and ${ys.length}`);
  }
  const points = xs
    .map((x, i) => `${fmt(toX(frame, x))},${fmt(toY(frame, ys[i]))}`)
    .join(" ");
  return (
    `<polyline fill="none" stroke="${style.stroke}"` +
    ` stroke-width="${fmt(style.strokeWidth)}" stroke-opacity="${fmt(style.opacity)}"` +
    ` points="${points}"/>`
  );
}

export interface AxisOptions {
  xTicks: number[];
  yTicks: number[];
  xLabel?: string;
  yLabel?: string;
  title?: string;
  /** Decimals used for tick labels (x, y). */
  xTickDecimals?: number;
  yTickDecimals?: number;
}

/** Border, ticks, tick labels, axis labels and an optional title. */
export function axes(frame: Frame, options: AxisOptions): string {
  const parts: string[] = [];
  const left = frame.x0;
  const right = frame.x0 + frame.width;
  const top = frame.y0;
  const bottom = frame.y0 + frame.height;
  parts.push(
    `<rect x="${fmt(left)}" y="${fmt(top)}" width="${fmt(frame.width)}"` +
      ` height="${fmt(frame.height)}" fill="none" stroke="#333333" stroke-width="1.00"/>`,
  );

  const xDecimals = options.xTickDecimals ?? 0;
  for (const tick of options.xTicks) {
    const px = toX(frame, tick);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(bottom)}" x2="${fmt(px)}" y2="${fmt(bottom + 4)}"` +
        ` stroke="#333333" stroke-width="1.00"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(bottom + 16)}" font-size="11"` +
        ` text-anchor="middle" fill="#333333">${tick.toFixed(xDecimals)}</text>`,
    );
  }

  const yDecimals = options.yTickDecimals ?? 1;
  for (const tick of options.yTicks) {
    const py = toY(frame, tick);
    parts.push(
      `<line x1="${fmt(left - 4)}" y1="${fmt(py)}" x2="${fmt(left)}" y2="${fmt(py)}"` +
        ` stroke="#333333" stroke-width="1.00"/>`,
    );
    parts.push(
      `<text x="${fmt(left - 7)}" y="${fmt(py + 4)}" font-size="11"` +
        ` text-anchor="end" fill="#333333">${tick.toFixed(yDecimals)}</text>`,
    );
  }

  if (options.xLabel) {
    parts.push(
      `<text x="${fmt(left + frame.width / 2)}" y="${fmt(bottom + 34)}" font-size="12"` +
        ` text-anchor="middle" fill="#333333">${escapeXml(options.xLabel)}</text>`,
    );
  }
  if (options.yLabel) {
    const cx = left - 36;
    const cy = top + frame.height / 2;
    parts.push(
      `<text x="${fmt(cx)}" y="${fmt(cy)}" font-size="12" text-anchor="middle"` +
        ` fill="#333333" transform="rotate(-90 ${fmt(cx)} ${fmt(cy)})">${escapeXml(options.yLabel)}</text>`,
    );
  }
  if (options.title) {
    parts.push(
      `<text x="${fmt(left + frame.width / 2)}" y="${fmt(top - 8)}" font-size="13"` +
        ` text-anchor="middle" fill="#111111">${escapeXml(options.title)}</text>`,
    );
  }
  return parts.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}"` +
    ` viewBox="0 0 ${width} ${height}">\n` +
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>\n` +
    `${body}\n</svg>\n`
  );
}
