const TWO_PI = 2 * Math.PI;

/**
 * Cyclic colormap on the principal branch (-pi, pi].  The hue wheel is
 * itself periodic, so -pi and +pi land on the same color and branch
 * cuts in the data do not show up as false edges.
 */
export function cyclicColor(phase: number): string {
  let frac = (phase + Math.PI) / TWO_PI;
  frac = frac - Math.floor(frac);
  const hue = frac * 360;
  return `hsl(${hue.toFixed(1)},70%,52%)`;
}

/** Nodes where the amplitude vanishes carry no phase. */
export const SINGULAR_FILL = "#8c8c8c";

/** Cells a partial scan never produced. */
export const MISSING_FILL = "#e6e6e6";

const NU_PALETTE = [
  "#4269d0",
  "#efb118",
  "#ff725c",
  "#6cc5b0",
  "#3ca951",
  "#ff8ab7",
  "#a463f2",
  "#97bbf5",
  "#9c6b4e",
  "#9498a0",
  "#74452a",
];

/** Distinct fill per integer value of the order parameter.  The
 *  palette length is odd and coprime to the jump size 2, so the even
 *  ladders 0, 2, 4, ... that the quench produces never collide. */
export function nuColor(nu: number): string {
  const n = NU_PALETTE.length;
  return NU_PALETTE[((Math.round(nu) % n) + n) % n];
}
