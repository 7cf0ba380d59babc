"""Graph generators: the disk model with fixed or Poisson vertex count, the
strip model, and the coupled construction sharing one point sequence.

Connection rules: disk points are adjacent when their hyperbolic distance is
at most the disk radius R; strip points are adjacent when the circular
x-distance (mod pi*e^{R/2}) is at most e^{(y+y')/2}. Ties at the threshold
count as connected (both rules are "at most").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import (
    TWO_PI,
    ModelParams,
    PolarPoint,
    StripPoint,
    circular_distance,
    cosh_distance,
    from_strip_arrays,
    sample_quasi_uniform_batch,
    to_strip_arrays,
)

LN2 = math.log(2.0)

# cap on candidate pairs materialized per sweep chunk
_CHUNK_PAIRS = 4_000_000


@dataclass(frozen=True)
class Graph:
    """Immutable vertex-labelled graph with per-vertex coordinates.

    Adjacency is stored in CSR form; neighbor lists are sorted and
    duplicate-free, with no self-loops. Every vertex carries both polar
    (r, theta) and strip (x, y) coordinates.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    polar: np.ndarray
    strip: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for arr in (self.indptr, self.indices, self.polar, self.strip):
            arr.flags.writeable = False

    @property
    def edge_count(self) -> int:
        return int(self.indices.size // 2)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) array with u < v, ordered lexicographically."""
        rows = np.repeat(np.arange(self.n), self.degrees())
        mask = self.indices > rows
        return np.column_stack([rows[mask], self.indices[mask]])

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        pos = np.searchsorted(nbrs, v)
        return pos < nbrs.size and nbrs[pos] == v

    @property
    def radius(self) -> float:
        return float(self.meta["radius"])


def csr_from_edges(n: int, edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric CSR arrays from an (m, 2) edge list with u != v."""
    if edges.size == 0:
        return np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int64)
    u = edges[:, 0].astype(np.int64)
    v = edges[:, 1].astype(np.int64)
    rows = np.concatenate([u, v])
    cols = np.concatenate([v, u])
    order = np.lexsort((cols, rows))
    rows = rows[order]
    cols = cols[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    return indptr, cols


def hyperbolic_adjacent(p: PolarPoint, q: PolarPoint, radius: float) -> bool:
    """True iff the hyperbolic distance between p and q is at most R."""
    return bool(cosh_distance(p.r, p.theta, q.r, q.theta) <= math.cosh(radius))


def gamma_adjacent(p: StripPoint, q: StripPoint, radius: float) -> bool:
    """True iff |x - x'| mod pi*e^{R/2} is at most e^{(y+y')/2}."""
    width = math.pi * math.exp(radius / 2.0)
    return bool(circular_distance(p.x, q.x, width) <= math.exp(0.5 * (p.y + q.y)))


def _adjacent_mask(coords: np.ndarray, rule: str, radius: float, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorized connection predicate for index pairs (u, v)."""
    if rule == "hyperbolic":
        lhs = cosh_distance(coords[u, 0], coords[u, 1], coords[v, 0], coords[v, 1])
        return lhs <= math.cosh(radius)
    if rule == "strip":
        width = math.pi * math.exp(radius / 2.0)
        dist = circular_distance(coords[u, 0], coords[v, 0], width)
        return dist <= np.exp(0.5 * (coords[u, 1] + coords[v, 1]))
    raise ValueError(f"unknown rule {rule!r}")


def build_edges_naive(coords: np.ndarray, rule: str, radius: float) -> np.ndarray:
    """All-pairs edge builder; the reference for the accelerated one.

    Quadratic in the number of points; intended for oracle comparisons and
    small instances.
    """
    n = len(coords)
    out = []
    block = max(1, _CHUNK_PAIRS // max(n, 1))
    for start in range(0, n, block):
        stop = min(start + block, n)
        uu, vv = np.meshgrid(np.arange(start, stop), np.arange(n), indexing="ij")
        uu = uu.ravel()
        vv = vv.ravel()
        keep = uu < vv
        uu, vv = uu[keep], vv[keep]
        hit = _adjacent_mask(coords, rule, radius, uu, vv)
        out.append(np.column_stack([uu[hit], vv[hit]]))
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(out).astype(np.int64)


def _band_of(coords: np.ndarray, rule: str, radius: float) -> np.ndarray:
    """Height band per point: ln(2)-wide slabs of y (resp. R - r)."""
    y = radius - coords[:, 0] if rule == "hyperbolic" else coords[:, 1]
    return np.floor(y / LN2).astype(np.int64)


def _band_threshold(i: int, j: int, rule: str, radius: float) -> float:
    """Conservative maximal horizontal separation for an edge between bands.

    Derived from the monotonicity of the connection rules; every true edge
    between the bands has horizontal distance at most the returned value
    (negative means the band pair admits no edges).
    """
    if rule == "strip":
        return 2.0 ** (0.5 * (i + j) + 1.0)
    # disk rule: band k holds radii in [max(0, R-(k+1)ln2), R - k*ln2]
    r_lo_i = max(0.0, radius - (i + 1) * LN2)
    r_lo_j = max(0.0, radius - (j + 1) * LN2)
    r_hi_i = radius - i * LN2
    r_hi_j = radius - j * LN2
    dr_min = max(0.0, r_lo_j - r_hi_i, r_lo_i - r_hi_j)
    denom = math.sinh(r_lo_i) * math.sinh(r_lo_j)
    if denom == 0.0:
        return math.pi
    rhs = (math.cosh(radius) - math.cosh(dr_min)) / denom
    if rhs >= 2.0:
        return math.pi
    if rhs <= 0.0:
        return -1.0
    return math.acos(1.0 - rhs)


def _window_candidates(
    qpos: np.ndarray,
    qidx: np.ndarray,
    pos_ext: np.ndarray,
    idx_ext: np.ndarray,
    thr: float,
):
    """Candidate pairs (query, target) with |pos difference| <= thr, using a
    period-extended sorted target array."""
    lo = np.searchsorted(pos_ext, qpos - thr, side="left")
    hi = np.searchsorted(pos_ext, qpos + thr, side="right")
    counts = hi - lo
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    offsets = np.repeat(np.cumsum(counts) - counts, counts)
    flat = np.repeat(lo, counts) + (np.arange(total) - offsets)
    return np.repeat(qidx, counts), idx_ext[flat]


def build_edges_accelerated(coords: np.ndarray, rule: str, radius: float) -> np.ndarray:
    """Banded sweep edge builder; produces exactly the naive edge set.

    Points are bucketed into ln(2)-high bands sorted by the circular
    coordinate. For each band pair a conservative angular window is derived
    from the rule's monotonicity and only candidate pairs inside the window
    are checked exactly.
    """
    n = len(coords)
    if n <= 1:
        return np.empty((0, 2), dtype=np.int64)
    if rule == "hyperbolic":
        period = TWO_PI
        pos_all = np.remainder(coords[:, 1] + math.pi, TWO_PI) - math.pi
    elif rule == "strip":
        period = math.pi * math.exp(radius / 2.0)
        pos_all = coords[:, 0]
    else:
        raise ValueError(f"unknown rule {rule!r}")

    bands = _band_of(coords, rule, radius)
    band_ids = np.unique(bands)
    by_band = {}
    for b in band_ids:
        members = np.flatnonzero(bands == b)
        order = np.argsort(pos_all[members], kind="stable")
        members = members[order]
        by_band[int(b)] = (pos_all[members], members)

    chunks = []
    for ai, i in enumerate(band_ids):
        pos_i, idx_i = by_band[int(i)]
        for j in band_ids[ai:]:
            thr = _band_threshold(int(i), int(j), rule, radius)
            if thr < 0.0:
                continue
            pos_j, idx_j = by_band[int(j)]
            same = i == j
            if 2.0 * thr >= period:
                # window covers the whole circle: all pairs
                block = max(1, _CHUNK_PAIRS // max(len(idx_j), 1))
                for s in range(0, len(idx_i), block):
                    uu = np.repeat(idx_i[s : s + block], len(idx_j))
                    vv = np.tile(idx_j, min(block, len(idx_i) - s))
                    chunks.append((uu, vv, same))
                continue
            pos_ext = np.concatenate([pos_j - period, pos_j, pos_j + period])
            idx_ext = np.concatenate([idx_j, idx_j, idx_j])
            est = max(1, int(len(idx_j) * (2.0 * thr / period)) + 8)
            block = max(1, _CHUNK_PAIRS // est)
            for s in range(0, len(idx_i), block):
                uu, vv = _window_candidates(
                    pos_i[s : s + block], idx_i[s : s + block], pos_ext, idx_ext, thr
                )
                chunks.append((uu, vv, same))

    edges = []
    for uu, vv, same in chunks:
        if uu.size == 0:
            continue
        if same:
            keep = uu < vv
            uu, vv = uu[keep], vv[keep]
        else:
            uu, vv = np.minimum(uu, vv), np.maximum(uu, vv)
        if uu.size == 0:
            continue
        hit = _adjacent_mask(coords, rule, radius, uu, vv)
        edges.append(np.column_stack([uu[hit], vv[hit]]))
    if not edges:
        return np.empty((0, 2), dtype=np.int64)
    merged = np.concatenate(edges).astype(np.int64)
    order = np.lexsort((merged[:, 1], merged[:, 0]))
    return merged[order]


def _streams(seed) -> tuple[np.random.Generator, np.random.Generator]:
    """Two independent child streams: one for points, one for counts.

    Keeping the count draw on its own stream makes the point sequence a
    function of the seed alone, so conditioning on a forced vertex count
    reproduces the fixed-size construction exactly.
    """
    points_ss, count_ss = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(points_ss), np.random.default_rng(count_ss)


def poisson_count(rng: np.random.Generator, mean: float) -> int:
    """Poisson draw by counting unit-rate exponential inter-arrivals in
    [0, mean]; reproducible from the raw uniform stream."""
    if mean <= 0:
        return 0
    count = 0
    total = 0.0
    chunk = max(64, int(mean + 6.0 * math.sqrt(mean) + 16))
    while True:
        gaps = -np.log1p(-rng.random(chunk))
        arrivals = total + np.cumsum(gaps)
        k = int(np.searchsorted(arrivals, mean, side="right"))
        if k < chunk:
            return count + k
        count += chunk
        total = float(arrivals[-1])


def _graph_from_polar(r, theta, radius, meta) -> Graph:
    polar = np.column_stack([r, theta])
    edges = build_edges_accelerated(polar, "hyperbolic", radius)
    x, y = to_strip_arrays(r, theta, radius)
    indptr, indices = csr_from_edges(len(r), edges)
    return Graph(
        n=len(r),
        indptr=indptr,
        indices=indices,
        polar=polar,
        strip=np.column_stack([x, y]),
        meta=meta,
    )


def _graph_from_strip(x, y, radius, meta) -> Graph:
    strip = np.column_stack([x, y])
    edges = build_edges_accelerated(strip, "strip", radius)
    r, theta = from_strip_arrays(x, y, radius)
    indptr, indices = csr_from_edges(len(x), edges)
    return Graph(
        n=len(x),
        indptr=indptr,
        indices=indices,
        polar=np.column_stack([r, theta]),
        strip=strip,
        meta=meta,
    )


def generate_kpkvb(params: ModelParams, seed) -> Graph:
    """Fixed-size model: exactly n quasi-uniform points, disk rule edges."""
    rng_points, _ = _streams(seed)
    r, theta = sample_quasi_uniform_batch(params, rng_points, params.n_vertices)
    meta = {
        "model": "kpkvb",
        "n": params.n_vertices,
        "alpha": params.alpha,
        "nu": params.nu,
        "radius": params.radius,
        "seed": seed,
    }
    return _graph_from_polar(r, theta, params.radius, meta)


def generate_kpkvb_poisson(params: ModelParams, seed, force_z: Optional[int] = None) -> Graph:
    """Poissonized model: vertex count Z ~ Poisson(n) on the shared point
    sequence; force_z pins Z for conditioned runs."""
    rng_points, rng_count = _streams(seed)
    if force_z is not None:
        if force_z < 0:
            raise ValueError(f"force_z must be >= 0, got {force_z}")
        z = int(force_z)
    else:
        z = poisson_count(rng_count, float(params.n_vertices))
    r, theta = sample_quasi_uniform_batch(params, rng_points, z)
    meta = {
        "model": "poisson",
        "n": params.n_vertices,
        "alpha": params.alpha,
        "nu": params.nu,
        "radius": params.radius,
        "seed": seed,
        "z": z,
    }
    return _graph_from_polar(r, theta, params.radius, meta)


def strip_total_intensity(alpha: float, lam: float, radius: float) -> float:
    """Expected point count of the strip process: integral of lam*e^{-alpha y}
    over the strip."""
    width = math.pi * math.exp(radius / 2.0)
    return width * lam * (-math.expm1(-alpha * radius)) / alpha


def sample_strip_points(alpha: float, radius: float, rng: np.random.Generator, count: int):
    """Sample `count` points with x uniform on the strip width and y from the
    truncated exponential density e^{-alpha y} on [0, R]."""
    u = rng.random((count, 2))
    width = math.pi * math.exp(radius / 2.0)
    x = width / 2.0 - u[:, 0] * width  # lands in (-W/2, W/2]
    y = -np.log1p(u[:, 1] * math.expm1(-alpha * radius)) / alpha
    return x, y


def generate_idealized(alpha: float, lam: float, radius: float, seed) -> Graph:
    """Strip model: Poisson point process with intensity lam*e^{-alpha y},
    edges by the circular strip rule."""
    if alpha <= 0 or lam <= 0 or radius <= 0:
        raise ValueError("alpha, lam and radius must all be > 0")
    rng_points, rng_count = _streams(seed)
    count = poisson_count(rng_count, strip_total_intensity(alpha, lam, radius))
    x, y = sample_strip_points(alpha, radius, rng_points, count)
    meta = {
        "model": "idealized",
        "n": count,
        "alpha": alpha,
        "nu": lam * math.pi / alpha,
        "intensity": lam,
        "radius": radius,
        "seed": seed,
    }
    return _graph_from_strip(x, y, radius, meta)


@dataclass(frozen=True)
class CoupledPair:
    """Disk-rule and strip-rule graphs built on one shared point sequence."""

    shared_r: np.ndarray
    shared_theta: np.ndarray
    z_count: int
    kpkvb_graph: Graph
    idealized_graph: Graph


def couple_models(params: ModelParams, seed, force_z: Optional[int] = None) -> CoupledPair:
    """Build both models on the first Z points of one quasi-uniform sequence.

    The strip graph lives on the strip images of the same points, so vertex
    indices agree between the two graphs. force_z pins Z (force_z = n
    realizes conditioning on the event Z = n).
    """
    rng_points, rng_count = _streams(seed)
    if force_z is not None:
        if force_z < 0:
            raise ValueError(f"force_z must be >= 0, got {force_z}")
        z = int(force_z)
    else:
        z = poisson_count(rng_count, float(params.n_vertices))
    r, theta = sample_quasi_uniform_batch(params, rng_points, z)
    radius = params.radius
    meta_common = {
        "n": params.n_vertices,
        "alpha": params.alpha,
        "nu": params.nu,
        "radius": radius,
        "seed": seed,
        "z": z,
    }
    kpkvb = _graph_from_polar(r, theta, radius, {"model": "kpkvb-coupled", **meta_common})
    x, y = to_strip_arrays(r, theta, radius)
    strip = np.column_stack([x, y])
    edges = build_edges_accelerated(strip, "strip", radius)
    indptr, indices = csr_from_edges(z, edges)
    idealized = Graph(
        n=z,
        indptr=indptr,
        indices=indices,
        polar=np.column_stack([r, theta]),
        strip=strip,
        meta={"model": "idealized-coupled", "intensity": params.intensity, **meta_common},
    )
    return CoupledPair(
        shared_r=r, shared_theta=theta, z_count=z, kpkvb_graph=kpkvb, idealized_graph=idealized
    )


@dataclass(frozen=True)
class StratumStats:
    """Edge agreement counts for one radial stratum of a coupled pair."""

    r_threshold: float
    vertex_count: int
    pair_count: int
    strip_edges: int
    disk_edges: int
    union_edges: int
    strip_minus_disk: int
    symmetric_difference: int

    @property
    def fraction_strip_minus_disk(self) -> float:
        return self.strip_minus_disk / max(1, self.strip_edges)

    @property
    def fraction_symmetric_difference(self) -> float:
        return self.symmetric_difference / max(1, self.union_edges)


@dataclass(frozen=True)
class CouplingReport:
    """Stratified disagreement counts between the coupled graphs.

    disagreements_half counts strip-rule edges with both radii >= R/2 that
    the disk graph misses (the one-sided comparison); the three-quarter
    stratum counts any edge-presence difference.
    """

    vertex_set_match: bool
    z_count: int
    half: StratumStats
    threequarter: StratumStats

    @property
    def disagreements_half(self) -> int:
        return self.half.strip_minus_disk

    @property
    def disagreements_threequarter(self) -> int:
        return self.threequarter.symmetric_difference


def _encode_edges(graph: Graph) -> np.ndarray:
    edges = graph.edge_array()
    if edges.size == 0:
        return np.empty(0, dtype=np.int64)
    return edges[:, 0] * np.int64(graph.n) + edges[:, 1]


def _stratum_stats(pair: CoupledPair, r_threshold: float) -> StratumStats:
    z = pair.z_count
    in_stratum = pair.shared_r >= r_threshold
    k = int(in_stratum.sum())
    disk_codes = np.sort(_encode_edges(pair.kpkvb_graph))
    strip_codes = np.sort(_encode_edges(pair.idealized_graph))

    def restrict(codes: np.ndarray) -> np.ndarray:
        if codes.size == 0:
            return codes
        u = codes // z
        v = codes % z
        return codes[in_stratum[u] & in_stratum[v]]

    disk_s = restrict(disk_codes)
    strip_s = restrict(strip_codes)
    union = np.union1d(disk_s, strip_s)
    missing = np.setdiff1d(strip_s, disk_s, assume_unique=True)
    symdiff = union.size - np.intersect1d(disk_s, strip_s, assume_unique=True).size
    return StratumStats(
        r_threshold=r_threshold,
        vertex_count=k,
        pair_count=k * (k - 1) // 2,
        strip_edges=int(strip_s.size),
        disk_edges=int(disk_s.size),
        union_edges=int(union.size),
        strip_minus_disk=int(missing.size),
        symmetric_difference=int(symdiff),
    )


def coupling_report(pair: CoupledPair) -> CouplingReport:
    """Exact stratified disagreement counts for a coupled pair."""
    radius = pair.kpkvb_graph.radius
    x, y = to_strip_arrays(pair.shared_r, pair.shared_theta, radius)
    match = bool(
        np.array_equal(pair.idealized_graph.strip[:, 0], x)
        and np.array_equal(pair.idealized_graph.strip[:, 1], y)
    )
    half = _stratum_stats(pair, radius / 2.0)
    threequarter = _stratum_stats(pair, 3.0 * radius / 4.0)
    return CouplingReport(
        vertex_set_match=match, z_count=pair.z_count, half=half, threequarter=threequarter
    )
