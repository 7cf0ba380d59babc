"""Property suites for the verify command and the acceptance tests.

Each suite samples configurations from seeded instances, checks an exact
structural property, and returns (number checked, violation descriptions).
A violation record always carries the instance seed and the offending
indices so the case can be replayed.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .analysis import verify_path_bound, induced_subgraph
from .boxes import (
    BoxId,
    LN2,
    box_of_arrays,
    build_dissection,
    find_separating_red_walk,
    lattice_for,
    mark_active,
    neighbors_Bstar,
    bfs_mask,
)
from .generators import Graph, generate_idealized
from .geometry import ModelParams, circular_delta, circular_distance


def _strip_rule(strip: np.ndarray, radius: float, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    width = math.pi * math.exp(radius / 2.0)
    dist = circular_distance(strip[a, 0], strip[b, 0], width)
    return dist <= np.exp(0.5 * (strip[a, 1] + strip[b, 1]))


def check_above_segment_property(
    g: Graph, rng: np.random.Generator, n_triples: int
) -> tuple[int, list[dict]]:
    """For sampled edges xy and vertices z strictly above the segment [x,y]:
    at least one of xz, yz must be an edge. Returns (#triples, violations).

    "Above" is the vertical-projection sense: the segment straddles z's x
    coordinate and passes below it, after lifting x coordinates to the
    circular representatives nearest each other.
    """
    radius = g.radius
    edges = g.edge_array()
    if edges.shape[0] == 0 or g.n < 3:
        return 0, []
    width = math.pi * math.exp(radius / 2.0)
    checked = 0
    violations: list[dict] = []
    batch = max(4096, n_triples // 8)
    # z is drawn from the vertices whose x falls inside the edge's x window
    # (a uniform z almost never straddles a short edge); the window lookup
    # uses a period-extended sorted coordinate array
    order = np.argsort(g.strip[:, 0], kind="stable")
    xs_sorted = g.strip[order, 0]
    xs_ext = np.concatenate([xs_sorted - width, xs_sorted, xs_sorted + width])
    idx_ext = np.concatenate([order, order, order])
    guard = 0
    while checked < n_triples:
        guard += 1
        if guard > 10_000:
            break
        eidx = rng.integers(0, edges.shape[0], batch)
        u, v = edges[eidx, 0], edges[eidx, 1]
        x1 = g.strip[u, 0]
        y1 = g.strip[u, 1]
        x2 = x1 + circular_delta(g.strip[v, 0], x1, width)
        y2 = g.strip[v, 1]
        lo = np.minimum(x1, x2)
        hi = np.maximum(x1, x2)
        lo_i = np.searchsorted(xs_ext, lo, side="right")
        hi_i = np.searchsorted(xs_ext, hi, side="left")
        counts = hi_i - lo_i
        has_candidates = counts > 0
        pick = lo_i + np.floor(rng.random(batch) * np.maximum(counts, 1)).astype(np.int64)
        zidx = idx_ext[np.minimum(pick, xs_ext.size - 1)]
        distinct = has_candidates & (zidx != u) & (zidx != v)
        mid = (x1 + x2) / 2.0
        xz = mid + circular_delta(g.strip[zidx, 0], mid, width)
        yz = g.strip[zidx, 1]
        straddles = (xz > lo) & (xz < hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            y_seg = y1 + (y2 - y1) * (xz - x1) / (x2 - x1)
        above = distinct & straddles & (y_seg <= yz)
        take = np.flatnonzero(above)
        if take.size == 0:
            continue
        ok = _strip_rule(g.strip, radius, u[take], zidx[take]) | _strip_rule(
            g.strip, radius, v[take], zidx[take]
        )
        bad = take[~ok]
        for k in bad:
            violations.append(
                {"seed": g.meta.get("seed"), "edge": (int(u[k]), int(v[k])), "z": int(zidx[k])}
            )
        checked += int(take.size)
    return checked, violations


def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def check_crossing_edges_property(
    g: Graph, rng: np.random.Generator, n_pairs: int
) -> tuple[int, list[dict]]:
    """For sampled pairs of crossing edges xy, wz: at least one of the four
    cross connections must be an edge. Returns (#crossing pairs, violations)."""
    radius = g.radius
    edges = g.edge_array()
    if edges.shape[0] < 2:
        return 0, []
    width = math.pi * math.exp(radius / 2.0)
    checked = 0
    violations: list[dict] = []
    batch = max(4096, n_pairs // 8)
    while checked < n_pairs:
        e1 = rng.integers(0, edges.shape[0], batch)
        e2 = rng.integers(0, edges.shape[0], batch)
        a, b = edges[e1, 0], edges[e1, 1]
        c, dd = edges[e2, 0], edges[e2, 1]
        distinct = (a != c) & (a != dd) & (b != c) & (b != dd)
        ax = g.strip[a, 0]
        ay = g.strip[a, 1]
        bx = ax + circular_delta(g.strip[b, 0], ax, width)
        by = g.strip[b, 1]
        mid1 = (ax + bx) / 2.0
        cx0 = mid1 + circular_delta(g.strip[c, 0], mid1, width)
        cy = g.strip[c, 1]
        dx0 = cx0 + circular_delta(g.strip[dd, 0], cx0, width)
        dy = g.strip[dd, 1]
        crossing = np.zeros(batch, dtype=bool)
        for shift in (-width, 0.0, width):
            cx = cx0 + shift
            dx = dx0 + shift
            o1 = _orient(ax, ay, bx, by, cx, cy)
            o2 = _orient(ax, ay, bx, by, dx, dy)
            o3 = _orient(cx, cy, dx, dy, ax, ay)
            o4 = _orient(cx, cy, dx, dy, bx, by)
            crossing |= (o1 * o2 < 0) & (o3 * o4 < 0)
        take = np.flatnonzero(crossing & distinct)
        if take.size == 0:
            continue
        ok = (
            _strip_rule(g.strip, radius, a[take], c[take])
            | _strip_rule(g.strip, radius, a[take], dd[take])
            | _strip_rule(g.strip, radius, b[take], c[take])
            | _strip_rule(g.strip, radius, b[take], dd[take])
        )
        bad = take[~ok]
        for k in bad:
            violations.append(
                {
                    "seed": g.meta.get("seed"),
                    "edge1": (int(a[k]), int(b[k])),
                    "edge2": (int(c[k]), int(dd[k])),
                }
            )
        checked += int(take.size)
    return checked, violations


def check_box_edge_property(g: Graph, d) -> tuple[int, list[dict]]:
    """Vertices in the same or corner-adjacent boxes must be adjacent in the
    graph (exhaustive over the instance)."""
    lattice = lattice_for(d)
    edge_arr = g.edge_array()
    edge_codes = np.sort(edge_arr[:, 0] * np.int64(max(g.n, 1)) + edge_arr[:, 1])
    layers, indices = box_of_arrays(g.strip[:, 0], g.strip[:, 1], d)
    flats = lattice.flat_ids(layers, indices)
    order = np.argsort(flats, kind="stable")
    sorted_flats = flats[order]
    starts = np.searchsorted(sorted_flats, np.arange(lattice.total), side="left")
    ends = np.searchsorted(sorted_flats, np.arange(lattice.total), side="right")
    occupied = np.flatnonzero(ends > starts)
    indptr, csr_indices = lattice.csr_full
    checked = 0
    violations: list[dict] = []
    for flat in occupied:
        members = order[starts[flat] : ends[flat]]
        pair_u = []
        pair_v = []
        if members.size > 1:
            ia, ib = np.triu_indices(members.size, k=1)
            pair_u.append(members[ia])
            pair_v.append(members[ib])
        for nbr in csr_indices[indptr[flat] : indptr[flat + 1]]:
            if nbr > flat and ends[nbr] > starts[nbr]:
                others = order[starts[nbr] : ends[nbr]]
                uu, vv = np.meshgrid(members, others, indexing="ij")
                pair_u.append(uu.ravel())
                pair_v.append(vv.ravel())
        if not pair_u:
            continue
        uu = np.concatenate(pair_u)
        vv = np.concatenate(pair_v)
        codes = np.minimum(uu, vv) * np.int64(g.n) + np.maximum(uu, vv)
        pos = np.minimum(np.searchsorted(edge_codes, codes), max(edge_codes.size - 1, 0))
        ok = edge_codes.size > 0
        present = edge_codes[pos] == codes if ok else np.zeros(codes.size, dtype=bool)
        checked += int(uu.size)
        for k in np.flatnonzero(~present):
            violations.append(
                {"seed": g.meta.get("seed"), "pair": (int(uu[k]), int(vv[k]))}
            )
    return checked, violations


def check_duality(
    d, rng: np.random.Generator, n_colorings: int, p_red: Optional[float] = None
) -> tuple[int, list[dict]]:
    """Random-coloring check of the barrier property: no blue path iff a red
    edge-sharing walk comes back, and returned walks separate the endpoints."""
    lattice = lattice_for(d)
    indptr, indices = lattice.csr_full
    checked = 0
    violations: list[dict] = []
    for trial in range(n_colorings):
        density = p_red if p_red is not None else rng.uniform(0.25, 0.75)
        red = rng.random(lattice.total) < density
        blue = np.flatnonzero(~red)
        if blue.size < 2:
            continue
        fx, fy = rng.choice(blue, 2, replace=False)
        x = BoxId(int(lattice.layer_of[fx]), int(lattice.index_of[fx]))
        y = BoxId(int(lattice.layer_of[fy]), int(lattice.index_of[fy]))
        walk = find_separating_red_walk(red, x, y, d, lattice)
        reach = bfs_mask(indptr, indices, np.array([fx]), ~red)
        blue_path = bool(reach[fy])
        checked += 1
        if blue_path != (walk is None):
            violations.append({"trial": trial, "reason": "existence mismatch", "x": x, "y": y})
            continue
        if walk is None:
            continue
        for uu, vv in zip(walk, walk[1:]):
            if vv not in neighbors_Bstar(uu, d):
                violations.append({"trial": trial, "reason": "walk not edge-sharing", "at": uu})
                break
        allowed = np.ones(lattice.total, dtype=bool)
        for box in walk:
            allowed[d.flat_id(box)] = False
        sep = bfs_mask(indptr, indices, np.array([fx]), allowed)
        if sep[fy]:
            violations.append({"trial": trial, "reason": "walk fails to separate", "x": x, "y": y})
    return checked, violations


def check_path_bound(
    n: int, alpha: float, nu: float, seed, rng: np.random.Generator, n_pairs: int
) -> tuple[int, list[dict]]:
    """Distance bound check on a truncated strip instance."""
    params = ModelParams(n, alpha, nu)
    lam = params.intensity
    g = generate_idealized(alpha, lam, params.radius, seed=seed)
    d = build_dissection(params.radius)
    act = mark_active(d, g)
    keep = g.strip[:, 1] < (d.ell_tilde + 1) * LN2
    sub, _ = induced_subgraph(g, keep)
    violations = verify_path_bound(sub, act, d, n_pairs=n_pairs, rng=rng)
    for v in violations:
        v["seed"] = seed
    return n_pairs, violations


def run_suite(
    suite: str, n: int, seeds: int, alpha: float = 0.8, nu: float = 1.3
) -> dict:
    """Run the named suite; returns {checks: {...}, violations: [...]}."""
    if suite not in ("geometry", "boxes", "paths", "all"):
        raise ValueError(f"unknown suite {suite!r}")
    if seeds < 1:
        raise ValueError("need at least one seed")
    params = ModelParams(n, alpha, nu)
    lam = params.intensity
    result = {"checks": {}, "violations": []}

    def record(name, checked, violations):
        result["checks"][name] = {"checked": checked, "violations": len(violations)}
        for v in violations:
            result["violations"].append({"suite": name, **v})

    if suite in ("geometry", "all"):
        for s in range(seeds):
            g = generate_idealized(alpha, lam, params.radius, seed=1000 + s)
            rng = np.random.default_rng(7000 + s)
            c1, v1 = check_above_segment_property(g, rng, n_triples=20_000)
            c2, v2 = check_crossing_edges_property(g, rng, n_pairs=4_000)
            record(f"above-segment[seed={1000 + s}]", c1, v1)
            record(f"crossing-edges[seed={1000 + s}]", c2, v2)
    if suite in ("boxes", "all"):
        d = build_dissection(params.radius)
        for s in range(seeds):
            g = generate_idealized(alpha, lam, params.radius, seed=2000 + s)
            c, v = check_box_edge_property(g, d)
            record(f"box-edge[seed={2000 + s}]", c, v)
        small = build_dissection(8.0)
        rng = np.random.default_rng(4242)
        c, v = check_duality(small, rng, n_colorings=50 * seeds)
        record("duality", c, v)
    if suite in ("paths", "all"):
        for s in range(seeds):
            rng = np.random.default_rng(5000 + s)
            c, v = check_path_bound(n, alpha, nu, seed=3000 + s, rng=rng, n_pairs=200)
            record(f"path-bound[seed={3000 + s}]", c, v)
    return result
