import { describe, expect, it } from "vitest";
import { linspace, normalPdf, pdfPair } from "../src/gaussian.js";

describe("normalPdf", () => {
  it("peaks at 1/sqrt(2*pi) for the standard normal", () => {
    expect(normalPdf(0)).toBeCloseTo(0.3989422804014327, 12);
  });

  it("is symmetric about its mean", () => {
    for (const d of [0.1, 0.5, 1.7]) {
      expect(normalPdf(0.3 + d, 0.3, 0.7)).toBeCloseTo(normalPdf(0.3 - d, 0.3, 0.7), 12);
    }
  });

  it("integrates to one (trapezoid over six sigmas)", () => {
    const xs = linspace(-6, 6, 2401);
    const h = xs[1] - xs[0];
    let area = 0;
    for (let i = 1; i < xs.length; i++) {
      area += 0.5 * h * (normalPdf(xs[i - 1]) + normalPdf(xs[i]));
    }
    expect(area).toBeCloseTo(1, 4);
  });

  it("rejects sigma <= 0", () => {
    expect(() => normalPdf(0, 0, 0)).toThrow("sigma must be > 0");
    expect(() => normalPdf(0, 0, -1)).toThrow("sigma must be > 0");
  });
});

describe("linspace", () => {
  it("hits both endpoints exactly", () => {
    const xs = linspace(-0.3, 0.7, 11);
    expect(xs).toHaveLength(11);
    expect(xs[0]).toBe(-0.3);
    expect(xs[10]).toBe(0.7);
  });

  it("needs at least two points", () => {
    expect(() => linspace(0, 1, 1)).toThrow("at least 2 points");
  });
});

describe("pdfPair", () => {
  it("spans four sigmas beyond both means on a shared grid", () => {
    const [a, b] = pdfPair(-0.06, 0.18, 1);
    expect(a.xs).toEqual(b.xs);
    expect(a.xs[0]).toBeCloseTo(-4.06, 12);
    expect(a.xs[a.xs.length - 1]).toBeCloseTo(4.18, 12);
  });

  it("puts each curve's sampled maximum at the grid point nearest its mean", () => {
    const [a, b] = pdfPair(-0.06, 0.18, 1, 241);
    const step = a.xs[1] - a.xs[0];
    for (const curve of [a, b]) {
      const argmax = curve.ys.indexOf(Math.max(...curve.ys));
      expect(Math.abs(curve.xs[argmax] - curve.mean)).toBeLessThanOrEqual(step / 2 + 1e-12);
    }
  });

  it("yields coincident curves for equal means", () => {
    const [a, b] = pdfPair(0.4, 0.4, 2);
    expect(a.ys).toEqual(b.ys);
  });

  it("rejects sigma <= 0", () => {
    expect(() => pdfPair(0, 1, 0)).toThrow("sigma must be > 0");
  });
});
