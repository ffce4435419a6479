/** Deterministic component palette; mirrors the service's OBJ export colors
 * (golden-angle hue walk, fixed saturation/value) so screenshots match CLI
 * exports. */

const GOLDEN = 0.381966011250105;

export function componentColor(index: number): [number, number, number] {
  const hue = ((index * GOLDEN) % 1 + 1) % 1;
  const h = hue * 6;
  const i = Math.floor(h) % 6;
  const f = h - Math.floor(h);
  const v = 0.95;
  const s = 0.65;
  const p = v * (1 - s);
  const q = v * (1 - s * f);
  const t = v * (1 - s * (1 - f));
  const rgb: [number, number, number][] = [
    [v, t, p], [q, v, p], [p, v, t], [p, q, v], [t, p, v], [v, p, q],
  ];
  const [r, g, b] = rgb[i];
  return [round4(r), round4(g), round4(b)];
}

function round4(x: number): number {
  return Math.round(x * 10000) / 10000;
}

export function componentCss(index: number): string {
  const [r, g, b] = componentColor(index);
  return `rgb(${Math.round(r * 255)}, ${Math.round(g * 255)}, ${Math.round(b * 255)})`;
}

/** Twist-parity coloring for mesh edges. */
export function parityCss(t: number): string {
  if (t === 0) return "#9aa0a6";
  return t % 2 === 0 ? "#4285f4" : "#ea4335";
}

/** Edge-degree ("edge class") coloring for mesh edges. */
export function degreeCss(k: number): string {
  const classes = ["#9aa0a6", "#34a853", "#fbbc04", "#ea4335", "#a142f4"];
  return classes[Math.min(k, classes.length - 1)];
}
