/** Minimal CSV reading for the harness outputs: a header row plus plain
 * comma-separated values (no quoting is ever emitted by the producer). */

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(`row ${i + 2}: expected ${columns.length} fields, got ${parts.length}`);
    }
    const row: Record<string, string> = {};
    columns.forEach((c, j) => (row[c] = parts[j]));
    return row;
  });
  return { columns, rows };
}

/** Throws naming the first missing column. */
export function requireColumns(table: Table, needed: string[]): void {
  for (const col of needed) {
    if (!table.columns.includes(col)) {
      throw new Error(`missing column: ${col}`);
    }
  }
}

export function numericColumn(table: Table, col: string): number[] {
  requireColumns(table, [col]);
  return table.rows.map((r, i) => {
    const v = Number(r[col]);
    if (!Number.isFinite(v)) {
      throw new Error(`row ${i + 2}: column ${col} is not numeric: ${r[col]}`);
    }
    return v;
  });
}

export function median(values: number[]): number {
  if (values.length === 0) {
    throw new Error("median of empty list");
  }
  const sorted = [...values].sort((a, b) => a - b);
  const mid = Math.floor(sorted.length / 2);
  return sorted.length % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}

export function groupBy<T>(items: T[], key: (item: T) => string): Map<string, T[]> {
  const out = new Map<string, T[]>();
  for (const item of items) {
    const k = key(item);
    const bucket = out.get(k);
    if (bucket) {
      bucket.push(item);
    } else {
      out.set(k, [item]);
    }
  }
  return out;
}
