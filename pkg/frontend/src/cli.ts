/** plotviz command line.
 *
 *   node dist/src/cli.js render --kind diameter-vs-logN --in run.csv --out fig.svg
 *   node dist/src/cli.js draw --in graph.txt --out fig.svg
 *
 * Exit codes: 0 ok, 1 rendering error (e.g. missing column), 2 usage.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { FIGURE_KINDS, FigureKind, renderFigure } from "./figures.js";
import { renderGraphDrawing } from "./drawing.js";

function parseFlags(argv: string[]): Record<string, string> {
  const flags: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) {
      throw new UsageError(`bad flag syntax near ${argv[i]}`);
    }
    flags[argv[i].slice(2)] = argv[i + 1];
  }
  return flags;
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  try {
    const [command, ...rest] = argv;
    if (command === "render") {
      const flags = parseFlags(rest);
      const { kind, in: input, out } = flags;
      if (!kind || !input || !out) {
        throw new UsageError("render needs --kind, --in and --out");
      }
      if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
        throw new UsageError(`unknown figure kind ${kind}; expected one of ${FIGURE_KINDS.join(", ")}`);
      }
      const svg = renderFigure(kind as FigureKind, readFileSync(input, "utf8"));
      writeFileSync(out, svg);
      return 0;
    }
    if (command === "draw") {
      const flags = parseFlags(rest);
      const { in: input, out } = flags;
      if (!input || !out) {
        throw new UsageError("draw needs --in and --out");
      }
      const svg = renderGraphDrawing(readFileSync(input, "utf8"));
      writeFileSync(out, svg);
      return 0;
    }
    throw new UsageError("usage: render --kind K --in file.csv --out file.svg | draw --in graph.txt --out file.svg");
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`usage error: ${err.message}`);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
