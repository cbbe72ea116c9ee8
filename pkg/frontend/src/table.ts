import { readFileSync } from "node:fs";

/** Raised when an input file does not match the documented table schema. */
export class SchemaError extends Error {}

export interface Table {
  path: string;
  columns: string[];
  rows: number[][];
}

export const PHASE_COLUMNS = ["k/m", "t*m", "Re_g", "Im_g", "phase", "singular"] as const;
export const VORTEX_COLUMNS = ["k/m", "t*m", "charge"] as const;
export const SERIES_COLUMNS = ["t*m", "Re_L", "Im_L", "Gamma/m", "rate_g/m", "rate_K/m", "nu"] as const;
export const SCAN_COLUMNS = ["e/m", "t*m", "nu", "Gamma/m"] as const;

/**
 * Parse a tab-separated table with a header line.  Cells are numbers;
 * the literal "nan" marks a column the producing pipeline did not
 * compute.  Anything else is a schema violation, reported with the
 * file and line it came from.
 */
export function parseTable(text: string, path: string): Table {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new SchemaError(`${path}: empty table`);
  const columns = lines[0].split("\t");
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split("\t");
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `${path}:${i + 1}: ${cells.length} cells for ${columns.length} columns`,
      );
    }
    const row = new Array<number>(cells.length);
    for (let j = 0; j < cells.length; j++) {
      const cell = cells[j];
      if (cell === "nan") {
        row[j] = NaN;
        continue;
      }
      const v = Number(cell);
      if (cell === "" || Number.isNaN(v)) {
        throw new SchemaError(
          `${path}:${i + 1}: cell "${cell}" in column "${columns[j]}" is not a number`,
        );
      }
      row[j] = v;
    }
    rows.push(row);
  }
  return { path, columns, rows };
}

export function readTable(path: string): Table {
  return parseTable(readFileSync(path, "utf8"), path);
}

export function requireColumns(table: Table, expected: readonly string[]): void {
  if (table.columns.join("\t") !== expected.join("\t")) {
    throw new SchemaError(
      `${table.path}: expected columns [${expected.join(", ")}], ` +
        `found [${table.columns.join(", ")}]`,
    );
  }
}

export function column(table: Table, name: string): number[] {
  const j = table.columns.indexOf(name);
  if (j < 0) throw new SchemaError(`${table.path}: no column "${name}"`);
  return table.rows.map((r) => r[j]);
}

/** Distinct values in first-appearance order; the tables repeat grid
 *  values exactly (they are printed with 17 significant digits), so
 *  plain equality is the right notion of "same node". */
export function distinct(values: number[]): number[] {
  const seen = new Set<number>();
  const out: number[] = [];
  for (const v of values) {
    if (!seen.has(v)) {
      seen.add(v);
      out.push(v);
    }
  }
  return out;
}
