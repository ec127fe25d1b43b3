/**
 * Figure renderers: each consumes one documented CSV schema and writes a
 * static SVG.  Schema violations raise SchemaError with a column diff so the
 * CLI wrappers can exit non-zero with a useful message.
 */

import * as fs from "fs";
import * as path from "path";

import { CsvTable, SchemaError, metaNumber, numericColumn, readCsv, requireColumns, column } from "./csv";
import {
  axes,
  circles,
  colormap,
  legend,
  linearScale,
  logScale,
  polyline,
  rect,
  svgDocument,
  text,
} from "./svg";

export type FigureKind = "spectrum" | "jaccard_map" | "nmse" | "rate";

export interface PlotSpec {
  inputCsv: string;
  figureKind: FigureKind;
  outputImage: string;
}

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { left: 60, right: 20, top: 30, bottom: 45 };

const SCHEME_COLORS: Record<string, string> = {
  "perfect-csi": "#4daf4a",
  "wdsw-je": "#e41a1c",
  "asw-je": "#377eb8",
  exhaustive: "#984ea3",
};

const plotArea = () =>
  ({
    x: [MARGIN.left, WIDTH - MARGIN.right] as [number, number],
    y: [HEIGHT - MARGIN.bottom, MARGIN.top] as [number, number],
  });

function renderSpectrum(table: CsvTable, src: string): string {
  requireColumns(table, ["k_x", "abs_H_quadrature", "abs_H_posp", "abs_H_angular"], src);
  const k = numericColumn(table, "k_x");
  const quad = numericColumn(table, "abs_H_quadrature");
  const posp = numericColumn(table, "abs_H_posp");
  const ang = numericColumn(table, "abs_H_angular");
  const area = plotArea();
  const sx = linearScale([Math.min(...k), Math.max(...k)], area.x);
  const top = Math.max(...quad.filter(Number.isFinite), 1);
  const sy = linearScale([0, 1.05 * top], area.y);
  const body = [
    axes(sx, sy, "k_x (rad/m)", "normalized |H|"),
    polyline(k, quad, sx, sy, SCHEME_COLORS["wdsw-je"]),
    polyline(k, posp, sx, sy, "black", 'stroke-dasharray="5,3"'),
    circles(k, ang, sx, sy, SCHEME_COLORS["asw-je"]),
    legend(
      [
        ["numerical spectrum", SCHEME_COLORS["wdsw-je"]],
        ["stationary-phase model", "black"],
        ["angular samples", SCHEME_COLORS["asw-je"]],
      ],
      MARGIN.left + 10,
      MARGIN.top + 12
    ),
  ].join("\n");
  return svgDocument(WIDTH, HEIGHT, "Wave-number spectrum", body);
}

/** Dashed effective-Rayleigh contour r(omega) = 1.155*D^2*(1-omega^2)/lambda. */
export function effectiveRayleighContour(
  aperture: number,
  wavelength: number,
  omegaMin: number,
  omegaMax: number,
  n = 201
): { omega: number[]; r: number[] } {
  const omega: number[] = [];
  const r: number[] = [];
  for (let i = 0; i < n; i++) {
    const om = omegaMin + ((omegaMax - omegaMin) * i) / (n - 1);
    omega.push(om);
    r.push((1.155 * aperture * aperture * (1 - om * om)) / wavelength);
  }
  return { omega, r };
}

function renderJaccardMap(table: CsvTable, src: string): string {
  requireColumns(
    table,
    ["r0_m", "omega", "jaccard_exact", "jaccard_simplified", "inside_effective_rayleigh"],
    src
  );
  const r0 = numericColumn(table, "r0_m");
  const omega = numericColumn(table, "omega");
  const j = numericColumn(table, "jaccard_exact");
  const aperture = metaNumber(table, "array.aperture_m", src);
  const wavelength = metaNumber(table, "array.wavelength_m", src);

  const rVals = [...new Set(r0)].sort((a, b) => a - b);
  const oVals = [...new Set(omega)].sort((a, b) => a - b);
  const area = plotArea();
  const sx = linearScale([oVals[0], oVals[oVals.length - 1]], area.x);
  const sy = logScale([rVals[0], rVals[rVals.length - 1]], area.y);

  const cells: string[] = [];
  const edge = (vals: number[], i: number, lo: boolean) => {
    // geometric cell edges; clamp at the boundary of the sampled grid
    if (lo) return i === 0 ? vals[0] : Math.sqrt(vals[i - 1] * vals[i]);
    return i === vals.length - 1 ? vals[i] : Math.sqrt(vals[i] * vals[i + 1]);
  };
  const oEdge = (i: number, lo: boolean) => {
    if (lo) return i === 0 ? oVals[0] : (oVals[i - 1] + oVals[i]) / 2;
    return i === oVals.length - 1 ? oVals[i] : (oVals[i] + oVals[i + 1]) / 2;
  };
  for (let n = 0; n < r0.length; n++) {
    if (!Number.isFinite(j[n])) continue;
    const ri = rVals.indexOf(r0[n]);
    const oi = oVals.indexOf(omega[n]);
    const x0 = sx(oEdge(oi, true));
    const x1 = sx(oEdge(oi, false));
    const y0 = sy(edge(rVals, ri, true));
    const y1 = sy(edge(rVals, ri, false));
    cells.push(rect(Math.min(x0, x1), Math.min(y0, y1), Math.abs(x1 - x0), Math.abs(y1 - y0), colormap(j[n])));
  }

  const contour = effectiveRayleighContour(aperture, wavelength, oVals[0], oVals[oVals.length - 1]);
  const keep = contour.r.map((r) => r >= rVals[0] && r <= rVals[rVals.length - 1]);
  const contourLine = polyline(
    contour.omega.filter((_, i) => keep[i]),
    contour.r.filter((_, i) => keep[i]),
    sx,
    sy,
    "black",
    'stroke-dasharray="6,4" class="effective-rayleigh-contour"'
  );

  const bar: string[] = [];
  const barX = WIDTH - MARGIN.right - 12;
  for (let i = 0; i < 40; i++) {
    const t = i / 39;
    const y = area.y[0] + (area.y[1] - area.y[0]) * t;
    bar.push(rect(barX, y - 3, 10, 4, colormap(t)));
  }
  bar.push(text(barX + 5, area.y[0] + 14, "0", "middle", 8));
  bar.push(text(barX + 5, area.y[1] - 4, "1", "middle", 8));

  const body = [
    cells.join(""),
    contourLine,
    axes(sx, sy, "direction cosine", "distance r0 (m)", { logY: true }),
    bar.join(""),
  ].join("\n");
  return svgDocument(WIDTH, HEIGHT, "Interval accuracy (Jaccard index)", body);
}

interface SchemeSeries {
  scheme: string;
  snr: number[];
  values: number[];
}

function schemeSeries(table: CsvTable, col: string): SchemeSeries[] {
  const schemes = column(table, "scheme");
  const snr = numericColumn(table, "snr_db");
  const vals = numericColumn(table, col);
  const bySch = new Map<string, { snr: number[]; values: number[] }>();
  for (let i = 0; i < schemes.length; i++) {
    if (!bySch.has(schemes[i])) bySch.set(schemes[i], { snr: [], values: [] });
    const entry = bySch.get(schemes[i])!;
    entry.snr.push(snr[i]);
    entry.values.push(vals[i]);
  }
  return [...bySch.entries()].map(([scheme, s]) => ({ scheme, ...s }));
}

const BEAMTRAIN_COLUMNS = [
  "scheme",
  "snr_db",
  "nmse_angle",
  "nmse_distance",
  "mean_rate",
  "mean_eff_rate",
  "farfield_count",
  "t_train",
];

function renderCurves(
  table: CsvTable,
  src: string,
  cols: [string, string],
  titles: [string, string],
  yLabel: string,
  logY: boolean
): string {
  requireColumns(table, BEAMTRAIN_COLUMNS, src);
  const panels: string[] = [];
  const panelWidth = WIDTH;
  cols.forEach((colName, p) => {
    const series = schemeSeries(table, colName);
    const xOffset = p * panelWidth;
    const area = {
      x: [xOffset + MARGIN.left, xOffset + panelWidth - MARGIN.right] as [number, number],
      y: [HEIGHT - MARGIN.bottom, MARGIN.top] as [number, number],
    };
    const allSnr = series.flatMap((s) => s.snr);
    const finite = series.flatMap((s) => s.values).filter((v) => Number.isFinite(v) && (!logY || v > 0));
    if (finite.length === 0) throw new SchemaError(`${src}: no plottable values in ${colName}`);
    const sx = linearScale([Math.min(...allSnr), Math.max(...allSnr)], area.x);
    const lo = Math.min(...finite);
    const hi = Math.max(...finite);
    const sy = logY
      ? logScale([lo / 2, hi * 2], area.y)
      : linearScale([0, 1.1 * hi], area.y);
    const lines = series
      .map((s) => {
        const color = SCHEME_COLORS[s.scheme] ?? "#666666";
        const xs: number[] = [];
        const ys: number[] = [];
        for (let i = 0; i < s.snr.length; i++) {
          if (!Number.isFinite(s.values[i]) || (logY && s.values[i] <= 0)) continue;
          xs.push(s.snr[i]);
          ys.push(s.values[i]);
        }
        return xs.length ? polyline(xs, ys, sx, sy, color) + circles(xs, ys, sx, sy, color) : "";
      })
      .join("\n");
    panels.push(
      [
        axes(sx, sy, "reference SNR (dB)", yLabel, { logY }),
        lines,
        text((area.x[0] + area.x[1]) / 2, MARGIN.top - 4, titles[p], "middle", 11),
        legend(
          Object.entries(SCHEME_COLORS).map(([s, c]) => [s, c] as [string, string]),
          area.x[0] + 8,
          MARGIN.top + 12
        ),
      ].join("\n")
    );
  });
  return svgDocument(2 * WIDTH, HEIGHT, "", panels.join("\n"));
}

export function render(spec: PlotSpec): void {
  const table = readCsv(spec.inputCsv);
  let svg: string;
  switch (spec.figureKind) {
    case "spectrum":
      svg = renderSpectrum(table, spec.inputCsv);
      break;
    case "jaccard_map":
      svg = renderJaccardMap(table, spec.inputCsv);
      break;
    case "nmse":
      svg = renderCurves(
        table,
        spec.inputCsv,
        ["nmse_angle", "nmse_distance"],
        ["NMSE of direction cosine", "NMSE of distance"],
        "NMSE",
        true
      );
      break;
    case "rate":
      svg = renderCurves(
        table,
        spec.inputCsv,
        ["mean_rate", "mean_eff_rate"],
        ["Achievable rate", "Effective achievable rate"],
        "bits/s/Hz",
        false
      );
      break;
    default:
      throw new SchemaError(`unknown figure kind ${spec.figureKind}`);
  }
  fs.mkdirSync(path.dirname(path.resolve(spec.outputImage)), { recursive: true });
  fs.writeFileSync(spec.outputImage, svg);
}

/** Shared CLI entry for the per-figure scripts: --in <csv> --out <svg>. */
export function runCli(kind: FigureKind, argv: string[]): number {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) {
      process.stderr.write(`usage: plot_${kind} --in <csv> --out <svg>\n`);
      return 2;
    }
    args.set(argv[i].slice(2), argv[i + 1]);
  }
  const input = args.get("in");
  const output = args.get("out");
  if (!input || !output) {
    process.stderr.write(`usage: plot_${kind} --in <csv> --out <svg>\n`);
    return 2;
  }
  try {
    render({ inputCsv: input, figureKind: kind, outputImage: output });
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}
