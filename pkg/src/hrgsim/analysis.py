"""Components, exact diameters, degree statistics, clustering, and the
box-path distance-bound verifier.

Diameters are exact. Small components get all-sources BFS; large ones use a
certified narrowing scheme (double sweep for a lower bound, then descending
eccentricity sweeps from the midpoint's BFS levels) that terminates only
when the remaining pairs provably cannot beat the bound, so the result
equals the all-sources value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import zeta

from .boxes import ActivityMap, Dissection, InactiveComponents, BoxId, box_of_arrays, w_size
from .generators import Graph, csr_from_edges

PATH_BOUND_FACTOR = 37

_ALL_SOURCES_CUTOFF = 64


def bfs_distances(
    indptr: np.ndarray, indices: np.ndarray, source: int, n: int, parents: bool = False
):
    """BFS distance array from one source (-1 where unreachable)."""
    dist = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64) if parents else None
    frontier = np.array([source], dtype=np.int64)
    dist[source] = 0
    level = 0
    while frontier.size:
        counts = indptr[frontier + 1] - indptr[frontier]
        total = int(counts.sum())
        if total == 0:
            break
        offsets = np.repeat(np.cumsum(counts) - counts, counts)
        flat = np.repeat(indptr[frontier], counts) + (np.arange(total) - offsets)
        nbr = indices[flat]
        fresh = dist[nbr] < 0
        nbr = nbr[fresh]
        if parents:
            src = np.repeat(frontier, counts)[fresh]
            nxt, first = np.unique(nbr, return_index=True)
            parent[nxt] = src[first]
        else:
            nxt = np.unique(nbr)
        level += 1
        dist[nxt] = level
        frontier = nxt
    if parents:
        return dist, parent
    return dist


@dataclass(frozen=True)
class ComponentDecomposition:
    labels: np.ndarray
    sizes: np.ndarray

    @property
    def n_components(self) -> int:
        return int(self.sizes.size)

    @property
    def largest(self) -> int:
        return int(np.argmax(self.sizes)) if self.sizes.size else -1

    def members(self, comp: int) -> np.ndarray:
        return np.flatnonzero(self.labels == comp)


def connected_components(g: Graph) -> ComponentDecomposition:
    """BFS component labelling; labels are assigned in order of the lowest
    vertex id in each component."""
    labels = np.full(g.n, -1, dtype=np.int64)
    indptr, indices = g.indptr, g.indices
    sizes = []
    for v in range(g.n):
        if labels[v] >= 0:
            continue
        comp = len(sizes)
        labels[v] = comp
        if indptr[v + 1] == indptr[v]:
            sizes.append(1)
            continue
        count = 1
        frontier = np.array([v], dtype=np.int64)
        while frontier.size:
            counts = indptr[frontier + 1] - indptr[frontier]
            total = int(counts.sum())
            if total == 0:
                break
            offsets = np.repeat(np.cumsum(counts) - counts, counts)
            flat = np.repeat(indptr[frontier], counts) + (np.arange(total) - offsets)
            nbr = indices[flat]
            nbr = np.unique(nbr[labels[nbr] < 0])
            labels[nbr] = comp
            count += int(nbr.size)
            frontier = nbr
        sizes.append(count)
    return ComponentDecomposition(labels=labels, sizes=np.array(sizes, dtype=np.int64))


def graph_distance(g: Graph, u: int, v: int) -> Optional[int]:
    """BFS distance, or None when the vertices lie in different components."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex ids must lie in [0, {g.n})")
    if u == v:
        return 0
    dist = bfs_distances(g.indptr, g.indices, u, g.n)
    return int(dist[v]) if dist[v] >= 0 else None


@dataclass(frozen=True)
class DiameterReport:
    diameters: np.ndarray
    max_diameter: int
    method: str
    components: ComponentDecomposition

    def to_dict(self) -> dict:
        return {
            "max_diameter": int(self.max_diameter),
            "method": self.method,
            "n_components": self.components.n_components,
            "component_sizes": [int(s) for s in self.components.sizes],
            "component_diameters": [int(x) for x in self.diameters],
        }


def _eccentricities(indptr, indices, vertices, n) -> int:
    best = 0
    for v in vertices:
        dist = bfs_distances(indptr, indices, int(v), n)
        best = max(best, int(dist.max()))
    return best


def _diameter_all_sources(indptr, indices, members, n) -> int:
    return _eccentricities(indptr, indices, members, n)


def _diameter_certified(indptr, indices, members, n) -> int:
    """Exact diameter with few BFS calls.

    Lower-bounds via a double sweep, then sweeps BFS levels of the sweep
    midpoint downward; a level may be skipped only once every unprocessed
    pair is provably within the current bound.
    """
    degrees = indptr[members + 1] - indptr[members]
    start = int(members[int(np.argmax(degrees))])
    d0 = bfs_distances(indptr, indices, start, n)
    a = int(np.argmax(d0))
    da, pa = bfs_distances(indptr, indices, a, n, parents=True)
    lb = int(da.max())
    b = int(np.argmax(da))
    # midpoint of the a-b path
    mid = b
    for _ in range(lb // 2):
        mid = int(pa[mid])
    dm = bfs_distances(indptr, indices, mid, n)
    ecc_mid = int(dm.max())
    lb = max(lb, ecc_mid)
    for level in range(ecc_mid, 0, -1):
        if lb >= 2 * level:
            return lb
        fringe = np.flatnonzero(dm == level)
        lb = max(lb, _eccentricities(indptr, indices, fringe, n))
    return lb


def component_diameters(g: Graph, method: str = "auto") -> DiameterReport:
    """Exact per-component diameters and their maximum.

    method: "auto" picks the certified narrowing scheme for components above
    a small cutoff; "all-sources" forces BFS from every vertex.
    """
    if method not in ("auto", "all-sources"):
        raise ValueError(f"unknown method {method!r}")
    comps = connected_components(g)
    diams = np.zeros(comps.n_components, dtype=np.int64)
    for comp in range(comps.n_components):
        members = comps.members(comp)
        if members.size <= 2:
            diams[comp] = members.size - 1
            continue
        if method == "all-sources" or members.size <= _ALL_SOURCES_CUTOFF:
            diams[comp] = _diameter_all_sources(g.indptr, g.indices, members, g.n)
        else:
            diams[comp] = _diameter_certified(g.indptr, g.indices, members, g.n)
    max_d = int(diams.max()) if diams.size else 0
    return DiameterReport(
        diameters=diams, max_diameter=max_d, method=method, components=comps
    )


def merge_diameter_bound(d1: int, d2: int) -> int:
    """Diameter bound 2*d1 + d2 + 2 for a graph covered by a part with
    per-component diameter d1 and a connected part with diameter d2."""
    if d1 < 0 or d2 < 0:
        raise ValueError("diameters must be nonnegative")
    return 2 * d1 + d2 + 2


def induced_subgraph(g: Graph, keep_mask: np.ndarray) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the masked vertices, plus the old vertex ids."""
    old_ids = np.flatnonzero(keep_mask)
    new_of_old = np.full(g.n, -1, dtype=np.int64)
    new_of_old[old_ids] = np.arange(old_ids.size)
    edges = g.edge_array()
    if edges.size:
        keep = keep_mask[edges[:, 0]] & keep_mask[edges[:, 1]]
        edges = new_of_old[edges[keep]]
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    indptr, indices = csr_from_edges(old_ids.size, edges)
    sub = Graph(
        n=int(old_ids.size),
        indptr=indptr,
        indices=indices,
        polar=g.polar[old_ids].copy(),
        strip=g.strip[old_ids].copy(),
        meta={**g.meta, "induced_from": g.meta.get("model")},
    )
    return sub, old_ids


def verify_path_bound(
    g: Graph,
    act: ActivityMap,
    d: Dissection,
    n_pairs: int,
    rng: np.random.Generator,
    targets_per_source: int = 40,
) -> list[dict]:
    """Check sampled same-component pairs of a truncated strip graph against
    the distance bound 37*|W| of their boxes; returns the violations."""
    if g.n == 0:
        return []
    pre = InactiveComponents(act)
    layers, indices = box_of_arrays(g.strip[:, 0], g.strip[:, 1], d)
    violations: list[dict] = []
    comps = connected_components(g)
    eligible = np.flatnonzero(comps.sizes[comps.labels] >= 2)
    if eligible.size == 0:
        return []
    checked = 0
    while checked < n_pairs:
        src = int(rng.choice(eligible))
        dist = bfs_distances(g.indptr, g.indices, src, g.n)
        same = np.flatnonzero(dist >= 0)
        take = min(targets_per_source, n_pairs - checked)
        targets = rng.choice(same, size=take)
        for t in targets:
            t = int(t)
            box_a = BoxId(int(layers[src]), int(indices[src]))
            box_b = BoxId(int(layers[t]), int(indices[t]))
            bound = PATH_BOUND_FACTOR * w_size(box_a, box_b, act, d, pre)
            if dist[t] > bound:
                violations.append(
                    {
                        "source": src,
                        "target": t,
                        "distance": int(dist[t]),
                        "bound": int(bound),
                    }
                )
            checked += 1
    return violations


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    k_min: int
    ks_distance: float
    n_tail: int
    reliable: bool


@dataclass(frozen=True)
class DegreeStatistics:
    mean_degree: float
    histogram: np.ndarray
    fit: Optional[PowerLawFit]

    def to_dict(self) -> dict:
        out = {
            "mean_degree": self.mean_degree,
            "degree_histogram": [[int(k), int(c)] for k, c in enumerate(self.histogram) if c],
        }
        if self.fit is not None:
            out["power_law"] = {
                "exponent": self.fit.exponent,
                "k_min": self.fit.k_min,
                "ks_distance": self.fit.ks_distance,
                "n_tail": self.fit.n_tail,
                "reliable": self.fit.reliable,
            }
        return out


_MIN_TAIL = 50


def _discrete_mle_exponent(tail: np.ndarray, k_min: int) -> float:
    """Exponent maximizing the zeta-model likelihood on the tail."""
    from scipy.optimize import minimize_scalar

    log_sum = float(np.sum(np.log(tail)))
    n = tail.size

    def nll(alpha: float) -> float:
        return n * math.log(zeta(alpha, k_min)) + alpha * log_sum

    res = minimize_scalar(nll, bounds=(1.0001, 8.0), method="bounded")
    return float(res.x)


def fit_power_law_tail(degrees: np.ndarray) -> Optional[PowerLawFit]:
    """Discrete power-law tail fit: zeta-model maximum likelihood exponent
    per candidate cutoff, cutoff chosen by minimal Kolmogorov-Smirnov
    distance."""
    degrees = degrees[degrees >= 1]
    if degrees.size < _MIN_TAIL:
        return None
    uniq = np.unique(degrees)
    best: Optional[PowerLawFit] = None
    for k_min in uniq[:-1][:60]:
        tail = degrees[degrees >= k_min]
        if tail.size < _MIN_TAIL:
            break
        alpha = _discrete_mle_exponent(tail, int(k_min))
        if not math.isfinite(alpha) or alpha <= 1.0:
            continue
        ks = _ks_discrete(tail, float(alpha), int(k_min))
        if best is None or ks < best.ks_distance:
            best = PowerLawFit(
                exponent=float(alpha),
                k_min=int(k_min),
                ks_distance=float(ks),
                n_tail=int(tail.size),
                reliable=True,
            )
    if best is None:
        fallback = degrees[degrees >= uniq[0]]
        alpha = _discrete_mle_exponent(fallback, int(uniq[0]))
        return PowerLawFit(float(alpha), int(uniq[0]), 1.0, int(fallback.size), False)
    return best


def _ks_discrete(tail: np.ndarray, alpha: float, k_min: int) -> float:
    ks_values = np.arange(k_min, tail.max() + 1)
    denom = zeta(alpha, k_min)
    model_ccdf = zeta(alpha, ks_values) / denom
    counts = np.bincount(tail - k_min, minlength=ks_values.size)
    emp_ccdf = 1.0 - np.cumsum(counts) / tail.size + counts / tail.size
    return float(np.max(np.abs(emp_ccdf - model_ccdf)))


def degree_statistics(g: Graph) -> DegreeStatistics:
    """Mean degree, full histogram, and the tail exponent estimate (flagged
    unreliable below 50 tail samples)."""
    if g.n == 0:
        return DegreeStatistics(0.0, np.zeros(1, dtype=np.int64), None)
    degrees = g.degrees()
    hist = np.bincount(degrees)
    fit = fit_power_law_tail(degrees)
    return DegreeStatistics(float(degrees.mean()), hist, fit)


def clustering_coefficient(g: Graph) -> float:
    """Mean over vertices of degree >= 2 of the fraction of closed wedges."""
    degrees = g.degrees()
    eligible = np.flatnonzero(degrees >= 2)
    if eligible.size == 0:
        return 0.0
    edges = g.edge_array()
    codes = np.sort(edges[:, 0] * np.int64(g.n) + edges[:, 1])
    total = 0.0
    for v in eligible:
        nbrs = g.neighbors(int(v))
        a, b = np.triu_indices(nbrs.size, k=1)
        triangles = 0
        for s in range(0, a.size, 4_000_000):
            pair_codes = nbrs[a[s : s + 4_000_000]] * np.int64(g.n) + nbrs[b[s : s + 4_000_000]]
            pos = np.minimum(np.searchsorted(codes, pair_codes), codes.size - 1)
            triangles += int(np.sum(codes[pos] == pair_codes))
        total += triangles / (nbrs.size * (nbrs.size - 1) / 2)
    return total / eligible.size
