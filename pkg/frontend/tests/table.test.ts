import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  column,
  distinct,
  parseTable,
  readTable,
  requireColumns,
  SchemaError,
  SERIES_COLUMNS,
} from "../src/table.js";

const golden = (rel: string) =>
  fileURLToPath(new URL(`../testdata/${rel}`, import.meta.url));

describe("parseTable", () => {
  it("reads a golden series table", () => {
    const t = readTable(golden("free-nu/series.tsv"));
    expect(t.columns).toEqual([...SERIES_COLUMNS]);
    expect(t.rows).toHaveLength(121);
    expect(t.rows[0][0]).toBe(0);
    // the free pipeline leaves the lattice-only columns as nan
    expect(Number.isNaN(t.rows[0][1])).toBe(true);
    expect(column(t, "nu")[120]).toBe(6);
  });

  it("keeps full double precision", () => {
    const t = readTable(golden("free-phase/vortices.tsv"));
    expect(column(t, "t*m")[0]).toBe(1.1500000000000001);
  });

  it("rejects ragged rows with file and line", () => {
    const text = "a\tb\n1\t2\n3\n";
    expect(() => parseTable(text, "bad.tsv")).toThrow(SchemaError);
    expect(() => parseTable(text, "bad.tsv")).toThrow("bad.tsv:3");
  });

  it("rejects non-numeric cells but accepts nan", () => {
    expect(() => parseTable("a\n1\nx\n", "t.tsv")).toThrow('cell "x"');
    const t = parseTable("a\nnan\n", "t.tsv");
    expect(Number.isNaN(t.rows[0][0])).toBe(true);
  });

  it("rejects a header mismatch by name", () => {
    const t = parseTable("a\tb\n1\t2\n", "t.tsv");
    expect(() => requireColumns(t, ["a", "c"])).toThrow("expected columns [a, c]");
  });
});

describe("distinct", () => {
  it("keeps first-appearance order", () => {
    expect(distinct([3, 1, 3, 2, 1])).toEqual([3, 1, 2]);
  });
});
