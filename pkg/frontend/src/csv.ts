/**
 * Reader for the simulator's CSV artifacts: `# key=value` comment lines,
 * one header row, then comma-separated data rows (no quoting is used by the
 * writer).
 */

import * as fs from "fs";

export interface CsvTable {
  /** key=value pairs from the comment header (resolved config echo). */
  meta: Record<string, string>;
  columns: string[];
  rows: string[][];
}

export class SchemaError extends Error {}

export function readCsv(path: string): CsvTable {
  const text = fs.readFileSync(path, "utf8");
  const meta: Record<string, string> = {};
  let columns: string[] | null = null;
  const rows: string[][] = [];
  for (const rawLine of text.split("\n")) {
    const line = rawLine.trimEnd();
    if (line === "") continue;
    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const eq = body.indexOf("=");
      if (eq > 0) meta[body.slice(0, eq)] = body.slice(eq + 1);
      continue;
    }
    if (columns === null) {
      columns = line.split(",");
    } else {
      rows.push(line.split(","));
    }
  }
  if (columns === null) throw new SchemaError(`${path}: no header row found`);
  return { meta, columns, rows };
}

/** Throw with an explicit column diff when the table does not match. */
export function requireColumns(table: CsvTable, expected: string[], path: string): void {
  const missing = expected.filter((c) => !table.columns.includes(c));
  const extra = table.columns.filter((c) => !expected.includes(c));
  if (missing.length > 0 || extra.length > 0) {
    throw new SchemaError(
      `${path}: column mismatch` +
        (missing.length ? `; missing: ${missing.join(", ")}` : "") +
        (extra.length ? `; unexpected: ${extra.join(", ")}` : "")
    );
  }
}

export function column(table: CsvTable, name: string): string[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) throw new SchemaError(`column ${name} not present`);
  return table.rows.map((r) => r[idx] ?? "");
}

/** Numeric column; empty cells become NaN so callers can skip them. */
export function numericColumn(table: CsvTable, name: string): number[] {
  return column(table, name).map((v) => (v === "" ? NaN : Number(v)));
}

export function metaNumber(table: CsvTable, key: string, path: string): number {
  const raw = table.meta[key];
  const value = Number(raw);
  if (raw === undefined || !Number.isFinite(value)) {
    throw new SchemaError(`${path}: header is missing numeric ${key}`);
  }
  return value;
}
