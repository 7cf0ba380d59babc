/** Parser for the simulator's line-oriented graph files: `# key value`
 * headers, `id r theta x y` vertex lines, `u v` edge lines. */

export interface GraphFile {
  meta: Record<string, string>;
  vertices: Array<{ r: number; theta: number; x: number; y: number }>;
  edges: Array<[number, number]>;
}

export function parseGraphFile(text: string): GraphFile {
  const meta: Record<string, string> = {};
  const vertices: GraphFile["vertices"] = [];
  const edges: GraphFile["edges"] = [];
  const lines = text.split(/\r?\n/);
  lines.forEach((raw, idx) => {
    const lineno = idx + 1;
    const line = raw.trim();
    if (!line) {
      return;
    }
    if (line.startsWith("#")) {
      const m = line.slice(1).trim().match(/^(\S+)\s+(.*)$/);
      if (!m) {
        throw new Error(`line ${lineno}: malformed header`);
      }
      meta[m[1]] = m[2];
      return;
    }
    const fields = line.split(/\s+/);
    if (fields.length === 5) {
      const id = Number(fields[0]);
      if (id !== vertices.length) {
        throw new Error(`line ${lineno}: vertex ids must be consecutive`);
      }
      vertices.push({
        r: Number(fields[1]),
        theta: Number(fields[2]),
        x: Number(fields[3]),
        y: Number(fields[4]),
      });
    } else if (fields.length === 2) {
      const u = Number(fields[0]);
      const v = Number(fields[1]);
      if (!(u >= 0 && v >= 0 && u < vertices.length && v < vertices.length)) {
        throw new Error(`line ${lineno}: edge endpoint out of range`);
      }
      edges.push([u, v]);
    } else {
      throw new Error(`line ${lineno}: unrecognized line`);
    }
  });
  return { meta, vertices, edges };
}

export function radiusOf(g: GraphFile): number {
  const raw = g.meta["R"];
  if (raw === undefined) {
    throw new Error("graph file is missing the R header");
  }
  const radius = Number(raw);
  if (!Number.isFinite(radius) || radius <= 0) {
    throw new Error(`bad R header: ${raw}`);
  }
  return radius;
}
