import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { renderSeries, seriesLayouts } from "../src/figures.js";
import { column, parseTable, readTable } from "../src/table.js";

const golden = (rel: string) =>
  fileURLToPath(new URL(`../testdata/${rel}`, import.meta.url));

function stepPathOf(svg: string): string {
  const m = svg.match(/class="nu-steps" d="([^"]*)"/);
  expect(m).not.toBeNull();
  return m![1];
}

describe("renderSeries", () => {
  it("draws the order parameter as steps and the rate as a line", () => {
    const table = readTable(golden("free-nu/series.tsv"));
    const svg = renderSeries(table);
    const steps = stepPathOf(svg);
    // a step path moves only horizontally and vertically
    expect(steps).toMatch(/^M[-\d. ]+(?: [HV][-\d.]+)+$/);
    // the quench climbs 0 -> 2 -> 4 -> 6, so exactly three verticals
    expect(steps.match(/V/g)).toHaveLength(3);
  });

  it("keeps the vertical jumps where nu changes", () => {
    const table = readTable(golden("free-nu/series.tsv"));
    const t = column(table, "t*m");
    const nu = column(table, "nu");
    const layouts = seriesLayouts(t, column(table, "Gamma/m"), nu);
    const jumps = [...stepPathOf(renderSeries(table)).matchAll(/H([-\d.]+) V/g)]
      .map((m) => Number(m[1]));
    const expected = t.filter((_, i) => i > 0 && nu[i] !== nu[i - 1])
      .map((tv) => layouts.nu!.x.apply(tv));
    expect(jumps).toHaveLength(expected.length);
    jumps.forEach((x, i) => expect(Math.abs(x - expected[i])).toBeLessThan(0.006));
  });

  it("renders a transition-free quench as one flat step line", () => {
    const svg = renderSeries(readTable(golden("flat-nu/series.tsv")));
    expect(stepPathOf(svg)).not.toContain("V");
  });

  it("omits the step layer when nu was never computed", () => {
    const text = [
      "t*m\tRe_L\tIm_L\tGamma/m\trate_g/m\trate_K/m\tnu",
      "0\tnan\tnan\t0\tnan\tnan\tnan",
      "1\tnan\tnan\t0.3\tnan\tnan\tnan",
      "2\tnan\tnan\t0.1\tnan\tnan\tnan",
      "",
    ].join("\n");
    const svg = renderSeries(parseTable(text, "rate-only.tsv"));
    expect(svg).not.toContain("nu-steps");
    expect(svg).toContain("Gamma/m");
  });
});
