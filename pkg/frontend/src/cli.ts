#!/usr/bin/env node
import { writeFileSync } from "node:fs";

import { renderPhaseMap, renderScan, renderSeries } from "./figures.js";
import { readTable, SchemaError } from "./table.js";

const USAGE = `usage: render <kind> <input.tsv...> -o <image.svg>
kinds and their inputs:
  phase-map  phase_field.tsv [vortices.tsv]
  series     series.tsv
  scan       scan.tsv`;

export function main(argv: string[]): number {
  const inputs: string[] = [];
  let out: string | null = null;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "-o" || arg === "--out") {
      i += 1;
      out = i < argv.length ? argv[i] : null;
    } else if (arg === "-h" || arg === "--help") {
      console.log(USAGE);
      return 0;
    } else {
      inputs.push(arg);
    }
  }
  const kind = inputs.shift();
  if (kind === undefined || out === null || inputs.length === 0) {
    console.error(USAGE);
    return 1;
  }

  try {
    let svg: string;
    if (kind === "phase-map") {
      if (inputs.length > 2) {
        throw new SchemaError(
          "phase-map takes a phase table and optionally a vortex table",
        );
      }
      svg = renderPhaseMap(
        readTable(inputs[0]),
        inputs.length === 2 ? readTable(inputs[1]) : null,
      );
    } else if (kind === "series") {
      if (inputs.length !== 1) throw new SchemaError("series takes one table");
      svg = renderSeries(readTable(inputs[0]));
    } else if (kind === "scan") {
      if (inputs.length !== 1) throw new SchemaError("scan takes one table");
      svg = renderScan(readTable(inputs[0]));
    } else {
      console.error(`unknown figure kind "${kind}"\n${USAGE}`);
      return 1;
    }
    writeFileSync(out, svg);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError || isFileError(err)) {
      console.error(`error: ${(err as Error).message}`);
      return 1;
    }
    throw err;
  }
}

function isFileError(err: unknown): boolean {
  const code = (err as NodeJS.ErrnoException).code;
  return code === "ENOENT" || code === "EISDIR" || code === "EACCES";
}

process.exit(main(process.argv.slice(2)));
