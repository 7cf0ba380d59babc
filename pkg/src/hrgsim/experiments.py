"""Declarative, seeded, persisted experiments.

Each experiment kind turns one of the model's probabilistic claims into a
desk-scale statistical check with pre-registered criteria: asymptotic
statements become trend-over-n tests or fixed-n thresholds with Monte Carlo
error bars. Every replicate's seed derives from (base seed, cell
coordinates, replicate index) through blake2b, so reruns are bit-identical.

Outputs: one CSV per kind (10 significant digits, '.' decimal separator)
plus a JSON summary with per-criterion pass/fail.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .analysis import component_diameters, degree_statistics
from .boxes import (
    Dissection,
    InactiveComponents,
    activity_from_points,
    build_dissection,
    h_block_partition,
    inactive_path_L0_to_K_exists,
    neighbors_Bstar,
    w_size,
)
from .generators import (
    couple_models,
    coupling_report,
    generate_kpkvb,
    poisson_count,
    sample_strip_points,
    strip_total_intensity,
    _streams,
)
from .geometry import ModelParams

EXPERIMENT_KINDS = (
    "diameter-scaling",
    "coupling",
    "crossing-recursion",
    "degree",
    "W-size",
    "L0-to-K",
    "activity-vs-formula",
)

# all-pairs W scan is only attempted below this box count
_W_ALL_PAIRS_LIMIT = 1 << 12

DEFAULT_TOLERANCES = {
    "diameter-scaling": {"ratio_spread_max": 3.0, "low_alpha_connected_fraction": 0.9},
    "coupling": {},
    "crossing-recursion": {"sigma_multiple": 3.0},
    "degree": {"mean_rel_err": 0.07, "exponent_abs_err": 0.3},
    "W-size": {"percentile": 95.0},
    "L0-to-K": {"max_fraction": 0.05, "threshold_n": 2**14},
    "activity-vs-formula": {"sigma_multiple": 3.0},
}


@dataclass
class ExperimentConfig:
    """One experiment: a kind, parameter grids, replicate count, seeds, and
    pre-registered tolerances."""

    kind: str
    n_values: list[int]
    alphas: list[float]
    nus: list[float]
    replicates: int
    base_seed: int
    h_values: list[int] = field(default_factory=list)
    pair_sample: int = 10_000
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.replicates < 1:
            raise ValueError("replicate count must be >= 1")
        if not self.n_values or not self.alphas or not self.nus:
            raise ValueError("parameter grids must be non-empty")
        if self.kind == "crossing-recursion" and not self.h_values:
            raise ValueError("crossing-recursion needs an h grid")
        merged = dict(DEFAULT_TOLERANCES[self.kind])
        merged.update(self.tolerances)
        self.tolerances = merged

    def cells(self):
        for n in self.n_values:
            for alpha in self.alphas:
                for nu in self.nus:
                    yield n, alpha, nu


def derive_seed(base_seed: int, *parts) -> int:
    """Stable 63-bit seed from the base seed and cell coordinates."""
    text = "|".join([str(base_seed)] + [repr(p) for p in parts])
    digest = hashlib.blake2b(text.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


@dataclass
class RunReport:
    """Per-replicate records, per-cell summaries, and criterion outcomes."""

    kind: str
    config: dict
    records: list[dict]
    summary: dict
    criteria: list[dict]

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.criteria)


def _config_dict(cfg: ExperimentConfig) -> dict:
    out = {
        "kind": cfg.kind,
        "n_values": cfg.n_values,
        "alphas": cfg.alphas,
        "nus": cfg.nus,
        "replicates": cfg.replicates,
        "base_seed": cfg.base_seed,
        "tolerances": cfg.tolerances,
        "intensities": [
            nu * alpha / math.pi for alpha in cfg.alphas for nu in cfg.nus
        ],
    }
    if cfg.h_values:
        out["h_values"] = cfg.h_values
    if cfg.kind == "W-size":
        out["pair_sample"] = cfg.pair_sample
    return out


def _map_replicates(fn: Callable, tasks: list, threads: int) -> list:
    if threads <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * threads))))


def _fit_slope(xs: np.ndarray, ys: np.ndarray) -> float:
    """Least-squares slope of ys against xs."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    xc = xs - xs.mean()
    denom = float(np.dot(xc, xc))
    if denom == 0.0:
        return 0.0
    return float(np.dot(xc, ys - ys.mean()) / denom)


# ----------------------------------------------------------------------
# diameter scaling


def _diameter_task(args):
    n, alpha, nu, rep, seed = args
    g = generate_kpkvb(ModelParams(n, alpha, nu), seed=seed)
    report = component_diameters(g)
    return {
        "n": n,
        "alpha": alpha,
        "nu": nu,
        "replicate": rep,
        "seed": seed,
        "max_diameter": report.max_diameter,
        "n_components": report.components.n_components,
        "largest_component": int(report.components.sizes.max()),
        "n_edges": g.edge_count,
    }


def run_diameter_scaling(cfg: ExperimentConfig, threads: int = 1) -> RunReport:
    tasks = [
        (n, alpha, nu, rep, derive_seed(cfg.base_seed, "diameter", n, alpha, nu, rep))
        for n, alpha, nu in cfg.cells()
        for rep in range(cfg.replicates)
    ]
    records = _map_replicates(_diameter_task, tasks, threads)
    summary: dict = {}
    criteria: list[dict] = []
    tol = cfg.tolerances
    for alpha in cfg.alphas:
        for nu in cfg.nus:
            group = [r for r in records if r["alpha"] == alpha and r["nu"] == nu]
            medians = {}
            ratios = {}
            for n in cfg.n_values:
                ds = [r["max_diameter"] for r in group if r["n"] == n]
                medians[n] = float(np.median(ds))
                ratios[n] = medians[n] / math.log(n)
            key = f"alpha={alpha:g},nu={nu:g}"
            summary[key] = {
                "median_max_diameter": {str(n): medians[n] for n in cfg.n_values},
                "median_ratio_to_log_n": {str(n): ratios[n] for n in cfg.n_values},
            }
            if alpha > 0.5:
                spread_ok = max(ratios.values()) <= tol["ratio_spread_max"] * min(
                    max(v, 1e-12) for v in ratios.values()
                )
                criteria.append(
                    {
                        "name": f"ratio-bounded[{key}]",
                        "passed": bool(spread_ok),
                        "detail": f"max/min of median(D)/ln(n) = "
                        f"{max(ratios.values()) / max(min(ratios.values()), 1e-12):.4g} "
                        f"(limit {tol['ratio_spread_max']:g})",
                    }
                )
                if len(cfg.n_values) >= 2:
                    slope = _fit_slope(
                        np.log([r["n"] for r in group]),
                        [r["max_diameter"] for r in group],
                    )
                    criteria.append(
                        {
                            "name": f"slope-positive[{key}]",
                            "passed": bool(slope > 0),
                            "detail": f"least-squares slope of D vs ln(n): {slope:.4g}",
                        }
                    )
            else:
                biggest = max(cfg.n_values)
                cell = [r for r in group if r["n"] == biggest]
                connected = sum(1 for r in cell if r["n_components"] == 1) / len(cell)
                criteria.append(
                    {
                        "name": f"low-alpha-connected[{key}]",
                        "passed": bool(connected >= tol["low_alpha_connected_fraction"]),
                        "detail": f"connected fraction {connected:.3g} at n={biggest}",
                    }
                )
    return RunReport("diameter-scaling", _config_dict(cfg), records, summary, criteria)


# ----------------------------------------------------------------------
# coupling


def _coupling_task(args):
    n, alpha, nu, rep, seed = args
    params = ModelParams(n, alpha, nu)
    rows = []
    for mode, force in (("free", None), ("forced", n)):
        pair = couple_models(params, seed=seed, force_z=force)
        report = coupling_report(pair)
        rows.append(
            {
                "n": n,
                "alpha": alpha,
                "nu": nu,
                "replicate": rep,
                "seed": seed,
                "mode": mode,
                "z": report.z_count,
                "vertex_set_match": int(report.vertex_set_match),
                "half_vertices": report.half.vertex_count,
                "half_strip_edges": report.half.strip_edges,
                "half_missing": report.half.strip_minus_disk,
                "half_fraction": report.half.fraction_strip_minus_disk,
                "tq_vertices": report.threequarter.vertex_count,
                "tq_union_edges": report.threequarter.union_edges,
                "tq_symdiff": report.threequarter.symmetric_difference,
                "tq_fraction": report.threequarter.fraction_symmetric_difference,
            }
        )
    return rows


def run_coupling_study(cfg: ExperimentConfig, threads: int = 1) -> RunReport:
    tasks = [
        (n, alpha, nu, rep, derive_seed(cfg.base_seed, "coupling", n, alpha, nu, rep))
        for n, alpha, nu in cfg.cells()
        for rep in range(cfg.replicates)
    ]
    nested = _map_replicates(_coupling_task, tasks, threads)
    records = [row for rows in nested for row in rows]
    summary: dict = {}
    criteria: list[dict] = []
    for alpha in cfg.alphas:
        for nu in cfg.nus:
            for mode in ("free", "forced"):
                key = f"alpha={alpha:g},nu={nu:g},mode={mode}"
                med_half, med_tq = [], []
                for n in cfg.n_values:
                    rows = [
                        r
                        for r in records
                        if r["n"] == n and r["alpha"] == alpha and r["nu"] == nu and r["mode"] == mode
                    ]
                    med_half.append(float(np.median([r["half_fraction"] for r in rows])))
                    med_tq.append(float(np.median([r["tq_fraction"] for r in rows])))
                summary[key] = {
                    "median_half_fraction": {str(n): v for n, v in zip(cfg.n_values, med_half)},
                    "median_threequarter_fraction": {
                        str(n): v for n, v in zip(cfg.n_values, med_tq)
                    },
                }
                for name, series in (("half", med_half), ("threequarter", med_tq)):
                    monotone = all(b <= a + 1e-12 for a, b in zip(series, series[1:]))
                    criteria.append(
                        {
                            "name": f"nonincreasing-{name}[{key}]",
                            "passed": bool(monotone),
                            "detail": f"medians across n: {series}",
                        }
                    )
    return RunReport("coupling", _config_dict(cfg), records, summary, criteria)


# ----------------------------------------------------------------------
# activity vs formula


def layer_box_mean(d: Dissection, alpha: float, lam: float, layer: int) -> float:
    """Expected point count of one box in the given layer."""
    return lam * d.box_width * (1.0 - 2.0**-alpha) / alpha * 2.0 ** ((1.0 - alpha) * layer)


def layer_activity_probability(d: Dissection, alpha: float, lam: float, layer: int) -> float:
    """Occupancy probability of one box: 1 - exp(-expected count)."""
    mean = lam * d.box_width * (1.0 - 2.0**-alpha) / alpha * 2.0 ** ((1.0 - alpha) * layer)
    return -math.expm1(-mean)


def activity_lower_bound(alpha: float, lam: float, layer: int) -> float:
    """The coarser bound 1 - exp(-lam * 2^{(1-alpha) i} / 12)."""
    return -math.expm1(-lam / 12.0 * 2.0 ** ((1.0 - alpha) * layer))


def run_activity_vs_formula(cfg: ExperimentConfig, threads: int = 1) -> RunReport:
    records: list[dict] = []
    criteria: list[dict] = []
    summary: dict = {}
    tol = cfg.tolerances
    for n, alpha, nu in cfg.cells():
        lam = nu * alpha / math.pi
        radius = ModelParams(n, alpha, nu).radius
        d = build_dissection(radius)
        active_counts = np.zeros(d.ell_tilde + 1, dtype=np.int64)
        for rep in range(cfg.replicates):
            seed = derive_seed(cfg.base_seed, "activity", n, alpha, nu, rep)
            rng_points, rng_count = _streams(seed)
            m = poisson_count(rng_count, strip_total_intensity(alpha, lam, radius))
            x, y = sample_strip_points(alpha, radius, rng_points, m)
            act = activity_from_points(d, x, y)
            active_counts += act.active_per_layer()[: d.ell_tilde + 1]
        cell_key = f"n={n},alpha={alpha:g},nu={nu:g}"
        all_within = True
        bound_holds = True
        worst = 0.0
        for layer in range(d.ell_tilde + 1):
            trials = cfg.replicates * d.boxes_in_layer(layer)
            p_model = layer_activity_probability(d, alpha, lam, layer)
            p_hat = active_counts[layer] / trials
            se = math.sqrt(max(p_model * (1 - p_model), 1e-300) / trials)
            dev = abs(p_hat - p_model) / se if se > 0 else 0.0
            worst = max(worst, dev)
            if dev > tol["sigma_multiple"]:
                all_within = False
            if p_model < activity_lower_bound(alpha, lam, layer) - 1e-12:
                bound_holds = False
            records.append(
                {
                    "n": n,
                    "alpha": alpha,
                    "nu": nu,
                    "layer": layer,
                    "trials": trials,
                    "active": int(active_counts[layer]),
                    "active_fraction": p_hat,
                    "model_probability": p_model,
                    "stderr": se,
                }
            )
        summary[cell_key] = {"worst_deviation_sigmas": worst}
        criteria.append(
            {
                "name": f"within-3se[{cell_key}]",
                "passed": bool(all_within),
                "detail": f"worst |p_hat - p| = {worst:.3g} standard errors",
            }
        )
        criteria.append(
            {
                "name": f"exceeds-twelfth-bound[{cell_key}]",
                "passed": bool(bound_holds),
                "detail": "closed form >= 1 - exp(-lam 2^{(1-alpha)i}/12) on all layers",
            }
        )
    return RunReport("activity-vs-formula", _config_dict(cfg), records, summary, criteria)


# ----------------------------------------------------------------------
# crossing recursion


class _BlockCrossing:
    """Batch evaluator for vertical active crossings of one block shape."""

    def __init__(self, d: Dissection, h: int):
        block = h_block_partition(d, h)[0]
        self.members = block.members()
        index = {box: i for i, box in enumerate(self.members)}
        self.top = index[block.top]
        self.bottom = [i for i, box in enumerate(self.members) if box.layer == 0]
        self.adjacency = [
            [index[nbr] for nbr in neighbors_Bstar(box, d) if nbr in index]
            for box in self.members
        ]
        self.means = np.zeros(len(self.members))

    def set_means(self, d: Dissection, alpha: float, lam: float) -> None:
        self.means = np.array(
            [layer_box_mean(d, alpha, lam, box.layer) for box in self.members]
        )

    def sample_active(self, rng: np.random.Generator, reps: int) -> np.ndarray:
        return rng.poisson(self.means, size=(reps, len(self.members))) > 0

    def crossing(self, active_row: np.ndarray) -> bool:
        if not active_row[self.top]:
            return False
        stack = [self.top]
        seen = {self.top}
        while stack:
            i = stack.pop()
            if self.members[i].layer == 0:
                return True
            for j in self.adjacency[i]:
                if active_row[j] and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return False

    def crossing_fraction(self, active: np.ndarray) -> float:
        return sum(self.crossing(row) for row in active) / active.shape[0]


def run_crossing_recursion(cfg: ExperimentConfig, threads: int = 1) -> RunReport:
    records: list[dict] = []
    criteria: list[dict] = []
    summary: dict = {}
    tol = cfg.tolerances
    m = cfg.replicates
    for n, alpha, nu in cfg.cells():
        lam = nu * alpha / math.pi
        radius = ModelParams(n, alpha, nu).radius
        d = build_dissection(radius)
        bad_h = [h for h in cfg.h_values if h + 1 > d.ell_tilde]
        if bad_h:
            raise ValueError(
                f"h values {bad_h} violate h+1 <= ell_tilde = {d.ell_tilde} at n={n}"
            )
        cell_key = f"n={n},alpha={alpha:g},nu={nu:g}"
        q_by_h = {}
        for h in sorted(set(cfg.h_values) | {h + 1 for h in cfg.h_values}):
            ev = _BlockCrossing(d, h)
            ev.set_means(d, alpha, lam)
            rng = np.random.default_rng(
                derive_seed(cfg.base_seed, "crossing-q", n, alpha, nu, h)
            )
            q_by_h[h] = ev.crossing_fraction(ev.sample_active(rng, m))
        for h in cfg.h_values:
            p_rng = np.random.default_rng(
                derive_seed(cfg.base_seed, "crossing-p", n, alpha, nu, h)
            )
            mean_h = lam * d.box_width * (1 - 2.0**-alpha) / alpha * 2.0 ** ((1 - alpha) * h)
            p_hat = float(np.mean(p_rng.poisson(mean_h, size=m) > 0))
            q_h, q_h1 = q_by_h[h], q_by_h[h + 1]
            rhs = p_hat * (2 * q_h - q_h * q_h)
            sig_p = math.sqrt(p_hat * (1 - p_hat) / m)
            sig_q = math.sqrt(q_h * (1 - q_h) / m)
            sig_q1 = math.sqrt(q_h1 * (1 - q_h1) / m)
            sigma = math.sqrt(
                sig_q1**2
                + ((2 * q_h - q_h * q_h) * sig_p) ** 2
                + (p_hat * (2 - 2 * q_h) * sig_q) ** 2
            )
            margin = q_h1 - (rhs - tol["sigma_multiple"] * sigma)
            records.append(
                {
                    "n": n,
                    "alpha": alpha,
                    "nu": nu,
                    "h": h,
                    "replicates": m,
                    "p_h": p_hat,
                    "q_h": q_h,
                    "q_h_plus_1": q_h1,
                    "rhs": rhs,
                    "sigma": sigma,
                    "margin": margin,
                }
            )
            criteria.append(
                {
                    "name": f"recursion[h={h},{cell_key}]",
                    "passed": bool(margin >= 0),
                    "detail": f"q_{h + 1}={q_h1:.4f} >= {rhs:.4f} - 3*{sigma:.4f}",
                }
            )
        # exact cross-check: a 1-block crossing is exactly its box being active
        rng = np.random.default_rng(derive_seed(cfg.base_seed, "crossing-x", n, alpha, nu))
        ev1 = _BlockCrossing(d, 1)
        ev1.set_means(d, alpha, lam)
        active = ev1.sample_active(rng, m)
        q1 = ev1.crossing_fraction(active)
        p0 = float(np.mean(active[:, 0]))
        criteria.append(
            {
                "name": f"q1-equals-p0[{cell_key}]",
                "passed": bool(q1 == p0),
                "detail": f"q1={q1:.6f} p0={p0:.6f} on one shared sample",
            }
        )
        summary[cell_key] = {
            "q_by_h": {str(h): q_by_h[h] for h in sorted(q_by_h)},
        }
        if m < 100:
            summary[cell_key]["flag"] = (
                f"only {m} replicates: sigma estimates are unreliable"
            )
    return RunReport("crossing-recursion", _config_dict(cfg), records, summary, criteria)


# ----------------------------------------------------------------------
# W size


def _w_size_task(args):
    n, alpha, nu, rep, seed, pair_sample = args
    lam = nu * alpha / math.pi
    radius = ModelParams(n, alpha, nu).radius
    d = build_dissection(radius)
    rng_points, rng_count = _streams(seed)
    m = poisson_count(rng_count, strip_total_intensity(alpha, lam, radius))
    x, y = sample_strip_points(alpha, radius, rng_points, m)
    act = activity_from_points(d, x, y)
    degenerate = act.active_count == 0
    pre = InactiveComponents(act)
    total = d.total_boxes
    rng = np.random.default_rng(derive_seed(seed, "pairs"))
    if total <= _W_ALL_PAIRS_LIMIT:
        ia, ib = np.triu_indices(total)
        pairs = np.column_stack([ia, ib])
    else:
        pairs = rng.integers(0, total, size=(pair_sample, 2))
    best = 0
    for fa, fb in pairs:
        size = w_size(d.unflatten(int(fa)), d.unflatten(int(fb)), act, d, pre)
        if size > best:
            best = size
    return {
        "n": n,
        "alpha": alpha,
        "nu": nu,
        "replicate": rep,
        "seed": seed,
        "pairs": len(pairs),
        "max_w": best,
        "max_w_over_R": best / radius,
        "degenerate": int(degenerate),
    }


def run_W_size_study(cfg: ExperimentConfig, threads: int = 1) -> RunReport:
    tasks = [
        (n, alpha, nu, rep, derive_seed(cfg.base_seed, "wsize", n, alpha, nu, rep), cfg.pair_sample)
        for n, alpha, nu in cfg.cells()
        for rep in range(cfg.replicates)
    ]
    records = _map_replicates(_w_size_task, tasks, threads)
    summary: dict = {}
    criteria: list[dict] = []
    pct = cfg.tolerances["percentile"]
    for alpha in cfg.alphas:
        for nu in cfg.nus:
            key = f"alpha={alpha:g},nu={nu:g}"
            series = []
            for n in cfg.n_values:
                rows = [
                    r
                    for r in records
                    if r["n"] == n and r["alpha"] == alpha and r["nu"] == nu and not r["degenerate"]
                ]
                series.append(float(np.percentile([r["max_w_over_R"] for r in rows], pct)))
            summary[key] = {
                "w_ratio_percentile": {str(n): v for n, v in zip(cfg.n_values, series)}
            }
            monotone = all(b <= a + 1e-9 for a, b in zip(series, series[1:]))
            criteria.append(
                {
                    "name": f"ratio-nonincreasing[{key}]",
                    "passed": bool(monotone),
                    "detail": f"{pct:g}th percentile of max|W|/R across n: {series}",
                }
            )
    return RunReport("W-size", _config_dict(cfg), records, summary, criteria)


# ----------------------------------------------------------------------
# L0 to K


def _l0k_task(args):
    n, alpha, nu, rep, seed = args
    lam = nu * alpha / math.pi
    radius = ModelParams(n, alpha, nu).radius
    d = build_dissection(radius)
    rng_points, rng_count = _streams(seed)
    m = poisson_count(rng_count, strip_total_intensity(alpha, lam, radius))
    x, y = sample_strip_points(alpha, radius, rng_points, m)
    act = activity_from_points(d, x, y)
    return {
        "n": n,
        "alpha": alpha,
        "nu": nu,
        "replicate": rep,
        "seed": seed,
        "exists": int(inactive_path_L0_to_K_exists(act, d)),
    }


def run_L0_to_K_study(cfg: ExperimentConfig, threads: int = 1) -> RunReport:
    tasks = [
        (n, alpha, nu, rep, derive_seed(cfg.base_seed, "l0k", n, alpha, nu, rep))
        for n, alpha, nu in cfg.cells()
        for rep in range(cfg.replicates)
    ]
    records = _map_replicates(_l0k_task, tasks, threads)
    summary: dict = {}
    criteria: list[dict] = []
    tol = cfg.tolerances
    for alpha in cfg.alphas:
        for nu in cfg.nus:
            key = f"alpha={alpha:g},nu={nu:g}"
            fractions = []
            for n in cfg.n_values:
                rows = [
                    r for r in records if r["n"] == n and r["alpha"] == alpha and r["nu"] == nu
                ]
                fractions.append(sum(r["exists"] for r in rows) / len(rows))
            summary[key] = {
                "path_fraction": {str(n): v for n, v in zip(cfg.n_values, fractions)}
            }
            monotone = all(b <= a + 1e-12 for a, b in zip(fractions, fractions[1:]))
            criteria.append(
                {
                    "name": f"fraction-decreasing[{key}]",
                    "passed": bool(monotone),
                    "detail": f"fractions across n: {fractions}",
                }
            )
            big = [
                (n, f)
                for n, f in zip(cfg.n_values, fractions)
                if n >= tol["threshold_n"]
            ]
            if big:
                ok = all(f <= tol["max_fraction"] for _, f in big)
                criteria.append(
                    {
                        "name": f"threshold[{key}]",
                        "passed": bool(ok),
                        "detail": f"fractions at n >= {tol['threshold_n']}: {big} "
                        f"(limit {tol['max_fraction']:g})",
                    }
                )
    return RunReport("L0-to-K", _config_dict(cfg), records, summary, criteria)


# ----------------------------------------------------------------------
# degree


def target_mean_degree(alpha: float, nu: float) -> float:
    """Limit mean degree 2 alpha^2 nu / (pi (alpha - 1/2)^2) for alpha > 1/2."""
    if alpha <= 0.5:
        raise ValueError("the limit formula needs alpha > 1/2")
    return 2.0 * alpha * alpha * nu / (math.pi * (alpha - 0.5) ** 2)


def _degree_task(args):
    n, alpha, nu, rep, seed = args
    g = generate_kpkvb(ModelParams(n, alpha, nu), seed=seed)
    stats = degree_statistics(g)
    return {
        "n": n,
        "alpha": alpha,
        "nu": nu,
        "replicate": rep,
        "seed": seed,
        "mean_degree": stats.mean_degree,
        "exponent": stats.fit.exponent if stats.fit else float("nan"),
        "exponent_reliable": int(bool(stats.fit and stats.fit.reliable)),
    }


def run_degree_study(cfg: ExperimentConfig, threads: int = 1) -> RunReport:
    tasks = [
        (n, alpha, nu, rep, derive_seed(cfg.base_seed, "degree", n, alpha, nu, rep))
        for n, alpha, nu in cfg.cells()
        for rep in range(cfg.replicates)
    ]
    records = _map_replicates(_degree_task, tasks, threads)
    summary: dict = {}
    criteria: list[dict] = []
    tol = cfg.tolerances
    for n, alpha, nu in cfg.cells():
        rows = [r for r in records if r["n"] == n and r["alpha"] == alpha and r["nu"] == nu]
        mean = float(np.mean([r["mean_degree"] for r in rows]))
        key = f"n={n},alpha={alpha:g},nu={nu:g}"
        cell_summary = {"mean_degree": mean}
        if alpha > 0.5:
            target = target_mean_degree(alpha, nu)
            rel = abs(mean - target) / target
            cell_summary["target_mean_degree"] = target
            cell_summary["relative_error"] = rel
            criteria.append(
                {
                    "name": f"mean-degree[{key}]",
                    "passed": bool(rel <= tol["mean_rel_err"]),
                    "detail": f"mean {mean:.4f} vs target {target:.4f} "
                    f"(rel err {rel:.3%}, limit {tol['mean_rel_err']:.0%})",
                }
            )
            reliable = [r["exponent"] for r in rows if r["exponent_reliable"]]
            if reliable:
                exponent = float(np.median(reliable))
                target_exp = 2 * alpha + 1
                cell_summary["exponent"] = exponent
                cell_summary["target_exponent"] = target_exp
                criteria.append(
                    {
                        "name": f"tail-exponent[{key}]",
                        "passed": bool(abs(exponent - target_exp) <= tol["exponent_abs_err"]),
                        "detail": f"median exponent {exponent:.3f} vs {target_exp:.2f} "
                        f"+- {tol['exponent_abs_err']:g}",
                    }
                )
        summary[key] = cell_summary
    return RunReport("degree", _config_dict(cfg), records, summary, criteria)


# ----------------------------------------------------------------------
# runner, config files, persistence

_RUNNERS = {
    "diameter-scaling": run_diameter_scaling,
    "coupling": run_coupling_study,
    "crossing-recursion": run_crossing_recursion,
    "degree": run_degree_study,
    "W-size": run_W_size_study,
    "L0-to-K": run_L0_to_K_study,
    "activity-vs-formula": run_activity_vs_formula,
}

_CSV_COLUMNS = {
    "diameter-scaling": [
        "n", "alpha", "nu", "replicate", "seed",
        "max_diameter", "n_components", "largest_component", "n_edges",
    ],
    "coupling": [
        "n", "alpha", "nu", "replicate", "seed", "mode", "z", "vertex_set_match",
        "half_vertices", "half_strip_edges", "half_missing", "half_fraction",
        "tq_vertices", "tq_union_edges", "tq_symdiff", "tq_fraction",
    ],
    "activity-vs-formula": [
        "n", "alpha", "nu", "layer", "trials", "active",
        "active_fraction", "model_probability", "stderr",
    ],
    "crossing-recursion": [
        "n", "alpha", "nu", "h", "replicates",
        "p_h", "q_h", "q_h_plus_1", "rhs", "sigma", "margin",
    ],
    "W-size": [
        "n", "alpha", "nu", "replicate", "seed",
        "pairs", "max_w", "max_w_over_R", "degenerate",
    ],
    "L0-to-K": ["n", "alpha", "nu", "replicate", "seed", "exists"],
    "degree": [
        "n", "alpha", "nu", "replicate", "seed",
        "mean_degree", "exponent", "exponent_reliable",
    ],
}


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> RunReport:
    return _RUNNERS[cfg.kind](cfg, threads=threads)


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def write_report_csv(report: RunReport, path) -> None:
    columns = _CSV_COLUMNS[report.kind]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for record in report.records:
            writer.writerow([_fmt_cell(record[c]) for c in columns])


def write_report_json(report: RunReport, path) -> None:
    from . import __version__

    payload = {
        "kind": report.kind,
        "version": __version__,
        "config": report.config,
        "summary": report.summary,
        "criteria": report.criteria,
        "passed": report.passed,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def persist_report(report: RunReport, out_dir) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = report.kind.lower().replace("-", "_")
    csv_path = out / f"{stem}.csv"
    json_path = out / f"{stem}_summary.json"
    write_report_csv(report, csv_path)
    write_report_json(report, json_path)
    return csv_path, json_path


def load_config_file(path) -> tuple[int, list[ExperimentConfig]]:
    """Parse the declarative JSON config: a base seed plus experiment list."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "experiments" not in data:
        raise ValueError("config must be an object with an 'experiments' list")
    base_seed = int(data.get("base_seed", 0))
    configs = []
    for entry in data["experiments"]:
        if "kind" not in entry:
            raise ValueError("every experiment entry needs a 'kind'")
        configs.append(
            ExperimentConfig(
                kind=entry["kind"],
                n_values=[int(v) for v in entry.get("n", [])],
                alphas=[float(v) for v in entry.get("alpha", [])],
                nus=[float(v) for v in entry.get("nu", [])],
                replicates=int(entry.get("replicates", 1)),
                base_seed=int(entry.get("base_seed", base_seed)),
                h_values=[int(v) for v in entry.get("h", [])],
                pair_sample=int(entry.get("pair_sample", 10_000)),
                tolerances=dict(entry.get("tolerances", {})),
            )
        )
    return base_seed, configs
