/** Coordinate formatting: two decimals is a fiftieth of a pixel, plenty
 *  for 720-wide figures, and keeps repeated renders byte-identical. */
export function px(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export type Attrs = Record<string, string | number>;

export function el(tag: string, attrs: Attrs, children: string[] = []): string {
  const parts: string[] = [tag];
  for (const [key, value] of Object.entries(attrs)) {
    parts.push(`${key}="${typeof value === "number" ? px(value) : value}"`);
  }
  const open = parts.join(" ");
  return children.length > 0
    ? `<${open}>${children.join("")}</${tag}>`
    : `<${open}/>`;
}

export function textEl(x: number, y: number, attrs: Attrs, content: string): string {
  return el("text", { x, y, ...attrs }, [escapeText(content)]);
}

export function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function svgDocument(width: number, height: number, children: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    el("rect", { x: 0, y: 0, width, height, fill: "#ffffff" }),
    ...children,
    "</svg>",
    "",
  ].join("\n");
}
