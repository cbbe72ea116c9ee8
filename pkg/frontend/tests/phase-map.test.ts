import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { SINGULAR_FILL } from "../src/colors.js";
import { phaseMapLayout, renderPhaseMap } from "../src/figures.js";
import {
  column,
  distinct,
  parseTable,
  readTable,
  SchemaError,
  Table,
} from "../src/table.js";

const golden = (rel: string) =>
  fileURLToPath(new URL(`../testdata/${rel}`, import.meta.url));

const phase = readTable(golden("free-phase/phase_field.tsv"));
const vortices = readTable(golden("free-phase/vortices.tsv"));

describe("renderPhaseMap", () => {
  it("renders the golden quench field without error", () => {
    const svg = renderPhaseMap(phase, vortices);
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain("hsl(");
    expect(svg).toContain('class="vortex"');
  });

  it("places vortex markers at the axes-transform pixel coordinates", () => {
    const svg = renderPhaseMap(phase, vortices);
    const layout = phaseMapLayout(
      distinct(column(phase, "k/m")),
      distinct(column(phase, "t*m")),
    );
    const found = [...svg.matchAll(
      /<circle class="vortex" cx="([-\d.]+)" cy="([-\d.]+)"/g,
    )].map((m) => [Number(m[1]), Number(m[2])]);
    expect(found).toHaveLength(vortices.rows.length);
    vortices.rows.forEach(([k, t], i) => {
      // coordinates are written with two decimals, so half a hundredth
      // of rounding is the only slack allowed
      expect(Math.abs(found[i][0] - layout.x.apply(k))).toBeLessThan(0.006);
      expect(Math.abs(found[i][1] - layout.y.apply(t))).toBeLessThan(0.006);
    });
  });

  it("marks charges by sign", () => {
    const svg = renderPhaseMap(phase, vortices);
    const signs = [...svg.matchAll(/class="vortex-sign"[^>]*>([^<]*)</g)]
      .map((m) => m[1]);
    expect(signs).toEqual(vortices.rows.map(([, , q]) => (q > 0 ? "+" : "-")));
  });

  it("grays out singular nodes", () => {
    const text = [
      "k/m\tt*m\tRe_g\tIm_g\tphase\tsingular",
      "0\t0\t1\t0\t0\t0",
      "1\t0\t1\t0\t0\t0",
      "0\t1\t0\t0\t0\t1",
      "1\t1\t-1\t0\t3.14\t0",
      "",
    ].join("\n");
    const svg = renderPhaseMap(parseTable(text, "mini.tsv"), null);
    expect(svg).toContain(SINGULAR_FILL);
  });

  it("rejects a table that does not fill its grid", () => {
    const broken: Table = { ...phase, rows: phase.rows.slice(0, -1) };
    expect(() => renderPhaseMap(broken, null)).toThrow(SchemaError);
    expect(() => renderPhaseMap(broken, null)).toThrow("do not fill");
  });

  it("rejects the wrong table kind by column names", () => {
    const series = readTable(golden("free-nu/series.tsv"));
    expect(() => renderPhaseMap(series, null)).toThrow("expected columns");
  });
});
