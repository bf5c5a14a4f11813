#!/usr/bin/env node
/**
 * Batch figure renderer.
 *
 *   render --trace <csv> --loci 1,4 --out <img>   trajectory panels
 *   pdfs --mean-a -0.06 --mean-b 0.18 --sigma 1 --out <img>
 *                                                 overlaid normal densities
 */

import { pathToFileURL } from "url";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { plotPdfs } from "./pdfs.js";
import { plotTrajectories } from "./trajectories.js";

/** "1,4" -> [1, 4]; rejects anything that is not a positive integer. */
export function parseLoci(raw: string): number[] {
  const fields = raw.split(",").map((f) => f.trim());
  if (fields.length === 0 || fields.some((f) => f === "")) {
    throw new Error(`loci must be a comma-separated list of positions, got '${raw}'`);
  }
  return fields.map((f) => {
    if (!/^\d+$/.test(f) || Number(f) < 1) {
      throw new Error(`locus must be a positive integer, got '${f}'`);
    }
    return Number(f);
  });
}

export async function main(argv: string[]): Promise<number> {
  try {
    await yargs(argv)
      .scriptName("pivotalga-figures")
      .command(
        "render",
        "draw per-locus one-frequency trajectories from a trace file",
        (cmd) =>
          cmd.options({
            trace: {
              type: "string",
              array: true,
              demandOption: true,
              describe: "trace CSV file(s); shards must have distinct run ids",
            },
            loci: {
              type: "string",
              demandOption: true,
              describe: "comma-separated 1-based loci, one panel each",
            },
            out: { type: "string", demandOption: true, describe: "output SVG path" },
            title: { type: "string", describe: "figure title" },
          }),
        (args) => {
          plotTrajectories({
            trace: args.trace,
            loci: parseLoci(args.loci),
            out: args.out,
            title: args.title,
          });
          console.log(`wrote ${args.out}`);
        },
      )
      .command(
        "pdfs",
        "draw two overlaid normal densities on a shared axis",
        (cmd) =>
          cmd.options({
            "mean-a": { type: "number", default: -0.06, describe: "mean of the first density" },
            "mean-b": { type: "number", default: 0.18, describe: "mean of the second density" },
            sigma: { type: "number", default: 1, describe: "shared standard deviation (> 0)" },
            out: { type: "string", demandOption: true, describe: "output SVG path" },
            title: { type: "string", describe: "figure title" },
          }),
        (args) => {
          plotPdfs(args.meanA, args.meanB, args.sigma, args.out, { title: args.title });
          console.log(`wrote ${args.out}`);
        },
      )
      .demandCommand(1, "choose a command: render or pdfs")
      .strict()
      .exitProcess(false)
      .fail(false)
      .parseAsync();
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

const invokedAsScript =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;

if (invokedAsScript) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
