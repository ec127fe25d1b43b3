/**
 * Minimal deterministic SVG chart primitives: linear/log axes, polylines,
 * heatmap cells and a legend.  No DOM, no canvas; the output is a plain
 * vector file that renders anywhere.
 */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

function makeScale(map: (v: number) => number, domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = [map(domain[0]), map(domain[1])];
  const scale = ((value: number) => {
    const t = (map(value) - d0) / (d1 - d0);
    return range[0] + t * (range[1] - range[0]);
  }) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  return makeScale((v) => v, domain, range);
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  if (domain[0] <= 0 || domain[1] <= 0) throw new Error("log scale needs positive domain");
  return makeScale(Math.log10, domain, range);
}

const fmt = (x: number) => (Math.abs(x) < 1e-12 ? "0" : x.toFixed(2));

export function polyline(
  xs: number[],
  ys: number[],
  sx: Scale,
  sy: Scale,
  stroke: string,
  extra = ""
): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) continue;
    pts.push(`${fmt(sx(xs[i]))},${fmt(sy(ys[i]))}`);
  }
  return `<polyline fill="none" stroke="${stroke}" stroke-width="1.5" ${extra} points="${pts.join(" ")}"/>`;
}

export function circles(xs: number[], ys: number[], sx: Scale, sy: Scale, fill: string, r = 2): string {
  const out: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) continue;
    out.push(`<circle cx="${fmt(sx(xs[i]))}" cy="${fmt(sy(ys[i]))}" r="${r}" fill="${fill}"/>`);
  }
  return out.join("");
}

export function rect(x: number, y: number, w: number, h: number, fill: string): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(Math.max(w, 0))}" height="${fmt(Math.max(h, 0))}" fill="${fill}"/>`;
}

export function text(x: number, y: number, content: string, anchor = "middle", size = 10): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" font-family="sans-serif" font-size="${size}" text-anchor="${anchor}">${escapeXml(content)}</text>`;
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function tickValues(lo: number, hi: number, n = 6): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= n) ?? 10 * step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12 * span; v += chosen) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

function logTickValues(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, e) <= hi * (1 + 1e-9); e++) {
    out.push(Math.pow(10, e));
  }
  return out;
}

function tickLabel(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-3 || Math.abs(v) >= 1e4)) return v.toExponential(0);
  return `${Number(v.toPrecision(6))}`;
}

export function axes(
  sx: Scale,
  sy: Scale,
  xLabel: string,
  yLabel: string,
  opts: { logX?: boolean; logY?: boolean } = {}
): string {
  const [x0, x1] = sx.range;
  const [y0, y1] = sy.range; // y0 is bottom (larger pixel value)
  const parts: string[] = [];
  parts.push(`<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x1)}" y2="${fmt(y0)}" stroke="black"/>`);
  parts.push(`<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x0)}" y2="${fmt(y1)}" stroke="black"/>`);
  const xt = opts.logX ? logTickValues(sx.domain[0], sx.domain[1]) : tickValues(sx.domain[0], sx.domain[1]);
  for (const v of xt) {
    const px = sx(v);
    parts.push(`<line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y0 + 4)}" stroke="black"/>`);
    parts.push(text(px, y0 + 15, tickLabel(v)));
  }
  const yt = opts.logY ? logTickValues(sy.domain[0], sy.domain[1]) : tickValues(sy.domain[0], sy.domain[1]);
  for (const v of yt) {
    const py = sy(v);
    parts.push(`<line x1="${fmt(x0 - 4)}" y1="${fmt(py)}" x2="${fmt(x0)}" y2="${fmt(py)}" stroke="black"/>`);
    parts.push(text(x0 - 6, py + 3, tickLabel(v), "end", 9));
  }
  parts.push(text((x0 + x1) / 2, y0 + 30, xLabel));
  const ly = (y0 + y1) / 2;
  parts.push(`<text x="12" y="${fmt(ly)}" font-family="sans-serif" font-size="10" text-anchor="middle" transform="rotate(-90 12 ${fmt(ly)})">${escapeXml(yLabel)}</text>`);
  return parts.join("\n");
}

export function legend(entries: Array<[string, string]>, x: number, y: number): string {
  const parts: string[] = [];
  entries.forEach(([label, color], i) => {
    const yy = y + 14 * i;
    parts.push(`<line x1="${fmt(x)}" y1="${fmt(yy)}" x2="${fmt(x + 18)}" y2="${fmt(yy)}" stroke="${color}" stroke-width="2"/>`);
    parts.push(text(x + 23, yy + 3, label, "start", 9));
  });
  return parts.join("\n");
}

/** Blue-to-yellow ramp for unit-interval values (clamped). */
export function colormap(t: number): string {
  const u = Math.min(1, Math.max(0, t));
  const r = Math.round(40 + 215 * u);
  const g = Math.round(50 + 180 * u);
  const b = Math.round(160 - 120 * u);
  return `rgb(${r},${g},${b})`;
}

export function svgDocument(width: number, height: number, title: string, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
    text(width / 2, 16, title, "middle", 12),
    body,
    "</svg>",
    "",
  ].join("\n");
}
