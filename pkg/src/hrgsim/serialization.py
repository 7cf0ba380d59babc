"""Line-oriented graph files.

Layout: `# key value` header lines (model, n, alpha, nu, R, seed, vertex and
edge counts), then one `id r theta x y` line per vertex, then one `u v` line
per edge. Floats carry 12 significant digits; identical graphs serialize to
identical bytes.
"""

from __future__ import annotations

from typing import TextIO

import numpy as np

from .generators import Graph, csr_from_edges

FORMAT_VERSION = 1

_HEADER_FLOATS = ("alpha", "nu", "R", "intensity")
_HEADER_INTS = ("version", "n", "seed", "vertices", "edges", "z")


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def write_graph(g: Graph, fh: TextIO) -> None:
    fh.write(f"# version {FORMAT_VERSION}\n")
    fh.write(f"# model {g.meta.get('model', 'unknown')}\n")
    fh.write(f"# n {g.meta.get('n', g.n)}\n")
    fh.write(f"# alpha {_fmt(g.meta['alpha'])}\n")
    if g.meta.get("nu") is not None:
        fh.write(f"# nu {_fmt(g.meta['nu'])}\n")
    if g.meta.get("intensity") is not None:
        fh.write(f"# intensity {_fmt(g.meta['intensity'])}\n")
    fh.write(f"# R {_fmt(g.meta['radius'])}\n")
    fh.write(f"# seed {g.meta.get('seed', 0)}\n")
    if g.meta.get("z") is not None:
        fh.write(f"# z {g.meta['z']}\n")
    fh.write(f"# vertices {g.n}\n")
    fh.write(f"# edges {g.edge_count}\n")
    for i in range(g.n):
        r, theta = g.polar[i]
        x, y = g.strip[i]
        fh.write(f"{i} {_fmt(r)} {_fmt(theta)} {_fmt(x)} {_fmt(y)}\n")
    for u, v in g.edge_array():
        fh.write(f"{u} {v}\n")


def write_graph_file(g: Graph, path) -> None:
    with open(path, "w") as fh:
        write_graph(g, fh)


def read_graph(fh: TextIO) -> Graph:
    meta: dict = {}
    vertices: list[tuple[float, float, float, float]] = []
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(fh, start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split(None, 1)
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: malformed header line {line!r}")
            key, value = parts[0], parts[1]
            if key in _HEADER_INTS:
                meta[key] = int(value)
            elif key in _HEADER_FLOATS:
                meta[key] = float(value)
            else:
                meta[key] = value
            continue
        fields = line.split()
        if len(fields) == 5:
            vid = int(fields[0])
            if vid != len(vertices):
                raise ValueError(f"line {lineno}: vertex ids must be consecutive")
            vertices.append(tuple(float(f) for f in fields[1:]))
        elif len(fields) == 2:
            edges.append((int(fields[0]), int(fields[1])))
        else:
            raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    n = len(vertices)
    if meta.get("vertices", n) != n:
        raise ValueError(f"header says {meta['vertices']} vertices, file has {n}")
    if meta.get("edges", len(edges)) != len(edges):
        raise ValueError(f"header says {meta['edges']} edges, file has {len(edges)}")
    coords = np.array(vertices, dtype=float).reshape(n, 4)
    edge_arr = np.array(edges, dtype=np.int64).reshape(len(edges), 2)
    if edge_arr.size:
        bad = (edge_arr < 0) | (edge_arr >= n)
        if bad.any():
            raise ValueError("edge endpoint out of range")
    indptr, indices = csr_from_edges(n, edge_arr)
    if "R" in meta:
        meta["radius"] = meta.pop("R")
    return Graph(
        n=n,
        indptr=indptr,
        indices=indices,
        polar=coords[:, 0:2].copy(),
        strip=coords[:, 2:4].copy(),
        meta=meta,
    )


def read_graph_file(path) -> Graph:
    with open(path) as fh:
        return read_graph(fh)
