export interface Scale {
  domain: [number, number];
  range: [number, number];
  apply(v: number): number;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  if (!(d1 > d0)) {
    throw new Error(`degenerate scale domain [${d0}, ${d1}]`);
  }
  return {
    domain,
    range,
    apply: (v: number) => r0 + ((v - d0) / (d1 - d0)) * (r1 - r0),
  };
}

/** Round tick positions covering [lo, hi], steps from the 1-2-5 ladder. */
export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const raw = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm > 5 ? 10 : norm > 2 ? 5 : norm > 1 ? 2 : 1) * mag;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  if (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3) return v.toExponential(1);
  const s = v.toFixed(3);
  return s.replace(/\.?0+$/, "");
}
