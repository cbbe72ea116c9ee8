import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { MISSING_FILL, nuColor } from "../src/colors.js";
import { renderScan } from "../src/figures.js";
import { column, readTable, Table } from "../src/table.js";

const golden = (rel: string) =>
  fileURLToPath(new URL(`../testdata/${rel}`, import.meta.url));

const scan = readTable(golden("ed-scan/scan.tsv"));

function cellFills(svg: string): Set<string> {
  const fills = new Set<string>();
  for (const m of svg.matchAll(/<rect [^>]*fill="([^"]*)"/g)) {
    if (m[1] !== "#ffffff" && m[1] !== "none") fills.add(m[1]);
  }
  return fills;
}

describe("renderScan", () => {
  it("uses one discrete color per nu value", () => {
    const svg = renderScan(scan);
    const nuValues = new Set(column(scan, "nu"));
    const expected = new Set([...nuValues].map(nuColor));
    expect(expected.size).toBe(nuValues.size);
    expect(cellFills(svg)).toEqual(expected);
  });

  it("marks the strongest rate once per coupling", () => {
    const svg = renderScan(scan);
    const markers = svg.match(/class="rate-max"/g) ?? [];
    // e = 0 at 4 sites still has a positive rate maximum, so all five
    // couplings get one
    expect(markers).toHaveLength(new Set(column(scan, "e/m")).size);
  });

  it("fills holes from failed scan points neutrally", () => {
    // a point that failed mid-scan leaves no rows behind; drop most of
    // one coupling and the grid keeps the row but shows neutral cells
    const e = column(scan, "e/m");
    const t = column(scan, "t*m");
    const holey: Table = {
      ...scan,
      rows: scan.rows.filter((_, i) => e[i] !== 0.5 || t[i] === 0),
    };
    const svg = renderScan(holey);
    expect(svg).toContain(MISSING_FILL);
    expect(renderScan(scan)).not.toContain(MISSING_FILL);
  });
});
