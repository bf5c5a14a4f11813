export {
  getSeries,
  maxGeneration,
  parseTrace,
  seriesKey,
  TRACE_HEADER,
} from "./trace.js";
export type { TracePoint, TraceTable } from "./trace.js";
export { linspace, normalPdf, pdfCurve, pdfPair } from "./gaussian.js";
export type { PdfCurve } from "./gaussian.js";
export {
  lineOpacity,
  loadTraceFiles,
  niceTicks,
  plotTrajectories,
  renderTrajectories,
} from "./trajectories.js";
export type { FigureSpec, TrajectoryOptions } from "./trajectories.js";
export { plotPdfs, renderPdfs } from "./pdfs.js";
export type { PdfOptions } from "./pdfs.js";
export { main, parseLoci } from "./cli.js";
