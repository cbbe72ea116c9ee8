import { cyclicColor, MISSING_FILL, nuColor, SINGULAR_FILL } from "./colors.js";
import { formatTick, linearScale, Scale, ticks } from "./scales.js";
import { el, svgDocument, textEl } from "./svg.js";
import {
  column,
  distinct,
  PHASE_COLUMNS,
  requireColumns,
  SCAN_COLUMNS,
  SchemaError,
  SERIES_COLUMNS,
  Table,
  VORTEX_COLUMNS,
} from "./table.js";

export const WIDTH = 720;
export const HEIGHT = 520;
const MARGIN = { left: 64, right: 76, top: 24, bottom: 52 };

export interface Layout {
  x: Scale;
  y: Scale;
}

/**
 * The axes transform shared by every figure: data x grows to the
 * right, data y grows upward, both inside the fixed plot frame.  Tests
 * place markers through this function rather than re-deriving it.
 */
export function plotLayout(
  xDomain: [number, number],
  yDomain: [number, number],
): Layout {
  return {
    x: linearScale(xDomain, [MARGIN.left, WIDTH - MARGIN.right]),
    y: linearScale(yDomain, [HEIGHT - MARGIN.bottom, MARGIN.top]),
  };
}

function frame(): string {
  return el("rect", {
    x: MARGIN.left,
    y: MARGIN.top,
    width: WIDTH - MARGIN.left - MARGIN.right,
    height: HEIGHT - MARGIN.top - MARGIN.bottom,
    fill: "none",
    stroke: "#000000",
    "stroke-width": 1,
  });
}

function xAxis(layout: Layout, label: string): string {
  const parts: string[] = [];
  const y0 = HEIGHT - MARGIN.bottom;
  for (const v of ticks(layout.x.domain[0], layout.x.domain[1])) {
    const x = layout.x.apply(v);
    parts.push(el("line", { x1: x, y1: y0, x2: x, y2: y0 + 5, stroke: "#000000" }));
    parts.push(textEl(x, y0 + 18, { "text-anchor": "middle", "font-size": 11 }, formatTick(v)));
  }
  parts.push(textEl((MARGIN.left + WIDTH - MARGIN.right) / 2, HEIGHT - 14,
    { "text-anchor": "middle", "font-size": 13 }, label));
  return parts.join("\n");
}

function yAxis(layout: Layout, label: string, side: "left" | "right" = "left"): string {
  const parts: string[] = [];
  const x0 = side === "left" ? MARGIN.left : WIDTH - MARGIN.right;
  const dir = side === "left" ? -1 : 1;
  for (const v of ticks(layout.y.domain[0], layout.y.domain[1])) {
    const y = layout.y.apply(v);
    parts.push(el("line", { x1: x0, y1: y, x2: x0 + dir * 5, y2: y, stroke: "#000000" }));
    parts.push(textEl(x0 + dir * 9, y + 4,
      { "text-anchor": side === "left" ? "end" : "start", "font-size": 11 }, formatTick(v)));
  }
  const lx = side === "left" ? 16 : WIDTH - 14;
  const ly = (MARGIN.top + HEIGHT - MARGIN.bottom) / 2;
  parts.push(textEl(lx, ly,
    {
      "text-anchor": "middle",
      "font-size": 13,
      transform: `rotate(${dir * -90} ${lx} ${ly})`,
    }, label));
  return parts.join("\n");
}

/** Cell edges around grid nodes: midpoints inside, half steps outside. */
function edges(nodes: number[]): number[] {
  if (nodes.length < 2) {
    throw new SchemaError("a heat map axis needs at least two grid values");
  }
  const out = [nodes[0] - (nodes[1] - nodes[0]) / 2];
  for (let i = 0; i + 1 < nodes.length; i++) out.push((nodes[i] + nodes[i + 1]) / 2);
  out.push(nodes[nodes.length - 1] + (nodes[nodes.length - 1] - nodes[nodes.length - 2]) / 2);
  return out;
}

function heatCells(
  layout: Layout,
  xNodes: number[],
  yNodes: number[],
  fill: (ix: number, iy: number) => string,
): string {
  const ex = edges(xNodes);
  const ey = edges(yNodes);
  const parts: string[] = [];
  for (let iy = 0; iy < yNodes.length; iy++) {
    for (let ix = 0; ix < xNodes.length; ix++) {
      const x = layout.x.apply(ex[ix]);
      const y = layout.y.apply(ey[iy + 1]);
      parts.push(el("rect", {
        x,
        y,
        width: layout.x.apply(ex[ix + 1]) - x,
        height: layout.y.apply(ey[iy]) - y,
        fill: fill(ix, iy),
      }));
    }
  }
  return parts.join("\n");
}

export function phaseMapLayout(kNodes: number[], tNodes: number[]): Layout {
  const ek = edges(kNodes);
  const et = edges(tNodes);
  return plotLayout([ek[0], ek[ek.length - 1]], [et[0], et[et.length - 1]]);
}

/**
 * Phase of the two-time amplitude over the (momentum, time) plane.
 * Cells use the cyclic colormap, singular nodes are grayed out, and
 * vortex positions come from the companion table rather than being
 * re-detected here.
 */
export function renderPhaseMap(phase: Table, vortices: Table | null): string {
  requireColumns(phase, PHASE_COLUMNS);
  const kNodes = distinct(column(phase, "k/m"));
  const tNodes = distinct(column(phase, "t*m"));
  if (phase.rows.length !== kNodes.length * tNodes.length) {
    throw new SchemaError(
      `${phase.path}: ${phase.rows.length} rows do not fill a ` +
        `${tNodes.length} x ${kNodes.length} grid`,
    );
  }
  const layout = phaseMapLayout(kNodes, tNodes);
  // rows are time-major with momentum fastest, in grid order
  const phaseCol = column(phase, "phase");
  const singularCol = column(phase, "singular");
  const cells = heatCells(layout, kNodes, tNodes, (ik, it) => {
    const i = it * kNodes.length + ik;
    return singularCol[i] !== 0 ? SINGULAR_FILL : cyclicColor(phaseCol[i]);
  });

  const markers: string[] = [];
  if (vortices !== null) {
    requireColumns(vortices, VORTEX_COLUMNS);
    for (const row of vortices.rows) {
      const [k, t, charge] = row;
      const cx = layout.x.apply(k);
      const cy = layout.y.apply(t);
      markers.push(el("circle", {
        class: "vortex",
        cx,
        cy,
        r: 7,
        fill: charge > 0 ? "#ffffff" : "#000000",
        stroke: charge > 0 ? "#000000" : "#ffffff",
        "stroke-width": 1.5,
      }));
      markers.push(textEl(cx, cy + 3.5, {
        class: "vortex-sign",
        "text-anchor": "middle",
        "font-size": 11,
        fill: charge > 0 ? "#000000" : "#ffffff",
      }, charge > 0 ? "+" : "-"));
    }
  }

  return svgDocument(WIDTH, HEIGHT, [
    cells,
    markers.join("\n"),
    frame(),
    xAxis(layout, "k/m"),
    yAxis(layout, "t*m"),
  ]);
}

function finiteExtent(values: number[], label: string): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!(lo <= hi)) throw new SchemaError(`${label} has no finite values`);
  return [lo, hi];
}

function linePath(xs: number[], ys: number[], layout: Layout): string {
  const parts: string[] = [];
  let pen = false;
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(ys[i])) {
      pen = false;
      continue;
    }
    const cmd = pen ? "L" : "M";
    parts.push(`${cmd}${layout.x.apply(xs[i]).toFixed(2)} ${layout.y.apply(ys[i]).toFixed(2)}`);
    pen = true;
  }
  return parts.join(" ");
}

/** Step-after path: the value holds until the next sample. */
function stepPath(xs: number[], ys: number[], layout: Layout): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    const x = layout.x.apply(xs[i]).toFixed(2);
    const y = layout.y.apply(ys[i]).toFixed(2);
    if (i === 0) {
      parts.push(`M${x} ${y}`);
      continue;
    }
    parts.push(`H${x}`);
    if (ys[i] !== ys[i - 1]) parts.push(`V${y}`);
  }
  return parts.join(" ");
}

export function seriesLayouts(
  t: number[],
  gamma: number[],
  nu: number[],
): { rate: Layout; nu: Layout | null } {
  const tDomain: [number, number] = [t[0], t[t.length - 1]];
  const [, gHi] = finiteExtent(gamma, "Gamma/m");
  const rate = plotLayout(tDomain, [0, gHi > 0 ? gHi * 1.05 : 1]);
  const haveNu = nu.some(Number.isFinite);
  if (!haveNu) return { rate, nu: null };
  const [nLo, nHi] = finiteExtent(nu, "nu");
  return { rate, nu: plotLayout(tDomain, [nLo - 0.5, nHi + 0.5]) };
}

/**
 * Rate function as a line on the left axis, order parameter as steps
 * on the right axis.  Tables whose nu column is all nan (the rate-only
 * pipeline) just get the line.
 */
export function renderSeries(series: Table): string {
  requireColumns(series, SERIES_COLUMNS);
  const t = column(series, "t*m");
  const gamma = column(series, "Gamma/m");
  const nu = column(series, "nu");
  const layouts = seriesLayouts(t, gamma, nu);

  const parts: string[] = [
    el("path", {
      d: linePath(t, gamma, layouts.rate),
      fill: "none",
      stroke: "#4269d0",
      "stroke-width": 1.8,
    }),
  ];
  if (layouts.nu !== null) {
    parts.push(el("path", {
      class: "nu-steps",
      d: stepPath(t, nu, layouts.nu),
      fill: "none",
      stroke: "#ff725c",
      "stroke-width": 1.8,
    }));
  }
  return svgDocument(WIDTH, HEIGHT, [
    parts.join("\n"),
    frame(),
    xAxis(layouts.rate, "t*m"),
    yAxis(layouts.rate, "Gamma/m"),
    layouts.nu !== null ? yAxis(layouts.nu, "nu", "right") : "",
  ]);
}

export function scanLayout(tNodes: number[], eNodes: number[]): Layout {
  const et = edges(tNodes);
  const ee = edges(eNodes);
  return plotLayout([et[0], et[et.length - 1]], [ee[0], ee[ee.length - 1]]);
}

/**
 * Order parameter over the (time, coupling) plane as discrete-colored
 * cells, with one marker per coupling at the time of the largest rate.
 * A scan whose failed points left holes renders them in a neutral fill
 * instead of refusing the whole figure.
 */
export function renderScan(scan: Table): string {
  requireColumns(scan, SCAN_COLUMNS);
  const e = column(scan, "e/m");
  const t = column(scan, "t*m");
  const nu = column(scan, "nu");
  const gamma = column(scan, "Gamma/m");
  const eNodes = distinct(e);
  const tNodes = distinct(t);
  const layout = scanLayout(tNodes, eNodes);

  const byCell = new Map<string, number>();
  for (let i = 0; i < scan.rows.length; i++) {
    byCell.set(`${e[i]}/${t[i]}`, nu[i]);
  }
  const cells = heatCells(layout, tNodes, eNodes, (it, ie) => {
    const v = byCell.get(`${eNodes[ie]}/${tNodes[it]}`);
    return v === undefined || !Number.isFinite(v) ? MISSING_FILL : nuColor(v);
  });

  // strongest-rate marker per coupling row
  const markers: string[] = [];
  for (const ev of eNodes) {
    let best = -Infinity;
    let bestT = NaN;
    for (let i = 0; i < scan.rows.length; i++) {
      if (e[i] === ev && Number.isFinite(gamma[i]) && gamma[i] > best) {
        best = gamma[i];
        bestT = t[i];
      }
    }
    if (Number.isFinite(bestT) && best > 0) {
      const cx = layout.x.apply(bestT);
      const cy = layout.y.apply(ev);
      markers.push(el("path", {
        class: "rate-max",
        d: `M${(cx - 4).toFixed(2)} ${cy.toFixed(2)} L${cx.toFixed(2)} ${(cy - 4).toFixed(2)} ` +
          `L${(cx + 4).toFixed(2)} ${cy.toFixed(2)} L${cx.toFixed(2)} ${(cy + 4).toFixed(2)} Z`,
        fill: "#ffffff",
        stroke: "#000000",
        "stroke-width": 1,
      }));
    }
  }

  return svgDocument(WIDTH, HEIGHT, [
    cells,
    markers.join("\n"),
    frame(),
    xAxis(layout, "t*m"),
    yAxis(layout, "e/m"),
  ]);
}
