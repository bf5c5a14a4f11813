import { existsSync, mkdtempSync, readFileSync, statSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { fileURLToPath } from "url";
import { afterEach, describe, expect, it, vi } from "vitest";
import { main, parseLoci } from "../src/cli.js";
import { TRACE_HEADER } from "../src/trace.js";

const FIXTURE = fileURLToPath(new URL("./fixtures/exp1-trace.csv", import.meta.url));

function tmp(name: string): string {
  return join(mkdtempSync(join(tmpdir(), "cli-")), name);
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("parseLoci", () => {
  it("splits a comma list into positions", () => {
    expect(parseLoci("1,4")).toEqual([1, 4]);
    expect(parseLoci(" 2 , 3 ")).toEqual([2, 3]);
  });

  it("rejects non-positive or non-numeric entries", () => {
    expect(() => parseLoci("0")).toThrow("positive integer");
    expect(() => parseLoci("a")).toThrow("positive integer");
    expect(() => parseLoci("1,,2")).toThrow("comma-separated");
  });
});

describe("render command", () => {
  it("writes a trajectory figure from a trace file", async () => {
    const out = tmp("figure.svg");
    const log = vi.spyOn(console, "log").mockImplementation(() => {});
    const code = await main(["render", "--trace", FIXTURE, "--loci", "1,4", "--out", out]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(statSync(out).size).toBeGreaterThan(0);
    expect(readFileSync(out, "utf8")).toMatch(/^<svg /);
    expect(log).toHaveBeenCalledWith(`wrote ${out}`);
  });

  it("accepts several trace shards", async () => {
    const dir = mkdtempSync(join(tmpdir(), "cli-"));
    const a = join(dir, "a.csv");
    const b = join(dir, "b.csv");
    writeFileSync(a, TRACE_HEADER + "\n0,0,1,0.400000\n0,1,1,0.450000\n");
    writeFileSync(b, TRACE_HEADER + "\n1,0,1,0.600000\n1,1,1,0.550000\n");
    const out = join(dir, "fig.svg");
    vi.spyOn(console, "log").mockImplementation(() => {});
    const code = await main(["render", "--trace", a, "--trace", b, "--loci", "1", "--out", out]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf8").match(/<polyline/g)).toHaveLength(2);
  });

  it("fails with the row number for a garbled trace", async () => {
    const trace = tmp("bad.csv");
    writeFileSync(trace, TRACE_HEADER + "\n0,0,1,0.500000\nnot,a,row\n");
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    const code = await main(["render", "--trace", trace, "--loci", "1", "--out", tmp("x.svg")]);
    expect(code).toBe(1);
    expect(err.mock.calls.map((c) => String(c[0])).join("\n")).toContain(`${trace}:3:`);
  });

  it("fails when the trace file does not exist", async () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    const code = await main(["render", "--trace", "/no/such/file.csv", "--loci", "1", "--out", tmp("x.svg")]);
    expect(code).toBe(1);
    expect(err.mock.calls.map((c) => String(c[0])).join("\n")).toContain("/no/such/file.csv");
  });

  it("fails on a bad loci argument", async () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    const code = await main(["render", "--trace", FIXTURE, "--loci", "1,zero", "--out", tmp("x.svg")]);
    expect(code).toBe(1);
    expect(err.mock.calls.map((c) => String(c[0])).join("\n")).toContain("positive integer");
  });

  it("requires the trace option", async () => {
    vi.spyOn(console, "error").mockImplementation(() => {});
    const code = await main(["render", "--loci", "1", "--out", tmp("x.svg")]);
    expect(code).toBe(1);
  });
});

describe("pdfs command", () => {
  it("writes the overlaid-densities figure for explicit means", async () => {
    const out = tmp("densities.svg");
    vi.spyOn(console, "log").mockImplementation(() => {});
    const code = await main([
      "pdfs",
      "--mean-a",
      "-0.06",
      "--mean-b",
      "0.18",
      "--sigma",
      "1",
      "--out",
      out,
    ]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg.match(/<polyline/g)).toHaveLength(2);
  });

  it("defaults to the canonical means and unit sigma", async () => {
    const out = tmp("default.svg");
    vi.spyOn(console, "log").mockImplementation(() => {});
    const explicit = tmp("explicit.svg");
    expect(await main(["pdfs", "--out", out])).toBe(0);
    expect(
      await main(["pdfs", "--mean-a", "-0.06", "--mean-b", "0.18", "--sigma", "1", "--out", explicit]),
    ).toBe(0);
    expect(readFileSync(out, "utf8")).toBe(readFileSync(explicit, "utf8"));
  });

  it("rejects sigma <= 0", async () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    const code = await main(["pdfs", "--sigma", "0", "--out", tmp("x.svg")]);
    expect(code).toBe(1);
    expect(err.mock.calls.map((c) => String(c[0])).join("\n")).toContain("sigma must be > 0");
  });
});

describe("command dispatch", () => {
  it("rejects an unknown command", async () => {
    vi.spyOn(console, "error").mockImplementation(() => {});
    expect(await main(["sketch"])).toBe(1);
  });

  it("demands a command", async () => {
    vi.spyOn(console, "error").mockImplementation(() => {});
    expect(await main([])).toBe(1);
  });
});
