"""Hyperbolic-plane primitives: coordinates, distances, sampling, strip map.

The working representation is polar coordinates (r, theta) on a hyperbolic
disk of radius R, with R = 2*ln(n/nu) derived from the model parameters.
The strip map sends the disk to the rectangle
(-pi/2 * e^{R/2}, pi/2 * e^{R/2}] x [0, R] with the angle stretched onto the
x axis and the depth below the rim onto the y axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi

# Switch-over point above which acosh(z) is evaluated as log(2z); the
# correction term log((1 + sqrt(1 - z^-2))/2) is below double precision there.
_ACOSH_BIG = 1e8
# exp(40) is comfortably representable; log-domain handling starts above it.
_LOG_BIG = 40.0


class PolarPoint(NamedTuple):
    """Point in the disk: hyperbolic distance to the origin and angle."""

    r: float
    theta: float


class StripPoint(NamedTuple):
    """Point in the strip: circular x in (-W/2, W/2], height y in [0, R]."""

    x: float
    y: float


@dataclass(frozen=True)
class ModelParams:
    """Model parameters (n, alpha, nu) with the derived disk radius and
    strip intensity.

    radius = 2*ln(n/nu) and intensity = nu*alpha/pi; construction requires
    n > nu so the radius is positive.
    """

    n_vertices: int
    alpha: float
    nu: float

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise ValueError(f"n_vertices must be >= 1, got {self.n_vertices}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.nu <= 0:
            raise ValueError(f"nu must be > 0, got {self.nu}")
        if self.n_vertices <= self.nu:
            raise ValueError(
                f"need n > nu for a positive radius, got n={self.n_vertices} nu={self.nu}"
            )

    @property
    def radius(self) -> float:
        """Disk radius R = 2*ln(n/nu)."""
        return disk_radius(self.n_vertices, self.nu)

    @property
    def intensity(self) -> float:
        """Strip-process intensity scale lambda = nu*alpha/pi."""
        return self.nu * self.alpha / math.pi

    @property
    def strip_width(self) -> float:
        """Circumference pi*e^{R/2} of the strip's circular x axis."""
        return math.pi * math.exp(self.radius / 2.0)


def disk_radius(n: float, nu: float) -> float:
    """Disk radius 2*ln(n/nu); requires n > nu > 0.

    n may be fractional for analysis convenience; the graph generators
    always pass an integer.
    """
    if nu <= 0:
        raise ValueError(f"nu must be > 0, got {nu}")
    if n <= nu:
        raise ValueError(f"need n > nu, got n={n} nu={nu}")
    return 2.0 * math.log(n / nu)


def wrap_angle(theta):
    """Normalize angles to (-pi, pi]. Works on scalars and arrays."""
    wrapped = -np.remainder(-np.asarray(theta, dtype=float) + math.pi, TWO_PI) + math.pi
    if np.ndim(theta) == 0:
        return float(wrapped)
    return wrapped


def circular_distance(a, b, period):
    """Distance between a and b on a circle of the given period."""
    delta = np.remainder(np.asarray(a, dtype=float) - b, period)
    dist = np.minimum(delta, period - delta)
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(dist)
    return dist


def circular_delta(a, b, period):
    """Signed representative of a-b in (-period/2, period/2]."""
    delta = np.remainder(np.asarray(a, dtype=float) - b + period / 2.0, period) - period / 2.0
    # remainder lands in [-period/2, period/2); move the closed end to +period/2
    delta = np.where(delta == -period / 2.0, period / 2.0, delta)
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(delta)
    return delta


def acosh_stable(z):
    """acosh for z >= 1, evaluated as log(2z) once z is large enough that
    the exact correction term vanishes at double precision."""
    z = np.asarray(z, dtype=float)
    # tolerate tiny negatives of (z - 1) from rounding
    z = np.maximum(z, 1.0)
    small = np.arccosh(np.minimum(z, _ACOSH_BIG))
    big = np.log(2.0) + np.log(z)
    out = np.where(z > _ACOSH_BIG, big, small)
    if out.ndim == 0:
        return float(out)
    return out


def log_cosh_minus_1(t: float) -> float:
    """log(cosh(t) - 1) without overflow; t > 0."""
    if t < _LOG_BIG:
        return math.log(math.cosh(t) - 1.0)
    # cosh t - 1 = e^t (1 - e^{-t})^2 / 2
    return t - math.log(2.0) + 2.0 * math.log1p(-math.exp(-t))


def cosh_distance(r1, t1, r2, t2):
    """cosh of the hyperbolic distance, in the cancellation-free form
    cosh(r1-r2) + sinh(r1) sinh(r2) (1 - cos dt).

    The angle difference enters through |t1 - t2| (2 sin^2 is periodic), so
    swapping the arguments gives a bit-identical result.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    dt = np.abs(np.asarray(t1, dtype=float) - t2)
    half = np.sin(dt / 2.0)
    return np.cosh(r1 - r2) + np.sinh(r1) * np.sinh(r2) * 2.0 * half * half


def hyperbolic_distance(p: PolarPoint, q: PolarPoint) -> float:
    """Hyperbolic distance via the law of cosines; stable for r up to ~60."""
    return float(acosh_stable(cosh_distance(p.r, p.theta, q.r, q.theta)))


def hyperbolic_distance_arrays(r1, t1, r2, t2):
    """Vectorized hyperbolic distance on coordinate arrays."""
    return acosh_stable(cosh_distance(r1, t1, r2, t2))


def quasi_uniform_radius_cdf(r, alpha: float, radius: float):
    """CDF of the radial coordinate: (cosh(alpha r) - 1)/(cosh(alpha R) - 1)."""
    r = np.asarray(r, dtype=float)
    return (np.cosh(alpha * r) - 1.0) / (math.cosh(alpha * radius) - 1.0)


def quasi_uniform_radius_ppf(u, alpha: float, radius: float):
    """Inverse CDF of the radial density ~ sinh(alpha r) truncated to [0, R].

    r(u) = acosh(1 + u*(cosh(alpha R) - 1)) / alpha, evaluated in log space
    when the cosh would overflow.
    """
    u = np.asarray(u, dtype=float)
    t = alpha * radius
    logc = log_cosh_minus_1(t)
    with np.errstate(divide="ignore"):
        logw = np.log(u) + logc
    w = np.exp(np.minimum(logw, _LOG_BIG))
    moderate = acosh_stable(1.0 + w) / alpha
    large = (math.log(2.0) + logw) / alpha
    out = np.where(logw > _LOG_BIG, large, moderate)
    out = np.where(u == 0.0, 0.0, out)
    if out.ndim == 0:
        return float(out)
    return out


def sample_quasi_uniform_batch(params: ModelParams, rng: np.random.Generator, size: int):
    """Sample `size` points; returns (r, theta) arrays.

    Each point consumes two uniforms in a fixed order (theta first, then the
    radial inverse-CDF draw), so prefixes of the stream coincide for any
    batch split with the same seed.
    """
    u = rng.random((size, 2))
    theta = wrap_angle(u[:, 0] * TWO_PI - math.pi)
    r = quasi_uniform_radius_ppf(u[:, 1], params.alpha, params.radius)
    return np.asarray(r, dtype=float), np.asarray(theta, dtype=float)


def sample_quasi_uniform(params: ModelParams, rng: np.random.Generator) -> PolarPoint:
    """Sample one point from the quasi-uniform distribution on the disk."""
    r, theta = sample_quasi_uniform_batch(params, rng, 1)
    return PolarPoint(float(r[0]), float(theta[0]))


def to_strip(p: PolarPoint, radius: float) -> StripPoint:
    """Map (r, theta) to the strip point (theta * e^{R/2}/2, R - r)."""
    if p.r < 0 or p.r > radius:
        raise ValueError(f"point radius {p.r} outside the disk of radius {radius}")
    x, y = to_strip_arrays(p.r, p.theta, radius)
    return StripPoint(float(x), float(y))


def to_strip_arrays(r, theta, radius: float):
    """Vectorized strip map."""
    scale = 0.5 * math.exp(radius / 2.0)
    return np.asarray(theta, dtype=float) * scale, radius - np.asarray(r, dtype=float)


def from_strip(s: StripPoint, radius: float) -> PolarPoint:
    """Inverse strip map; raises if the point is outside the strip."""
    half_width = 0.5 * math.pi * math.exp(radius / 2.0)
    if not (-half_width < s.x <= half_width):
        raise ValueError(f"x={s.x} outside the strip of half-width {half_width}")
    if not (0.0 <= s.y <= radius):
        raise ValueError(f"y={s.y} outside [0, {radius}]")
    r, theta = from_strip_arrays(s.x, s.y, radius)
    return PolarPoint(float(r), float(theta))


def from_strip_arrays(x, y, radius: float):
    """Vectorized inverse strip map."""
    scale = 0.5 * math.exp(radius / 2.0)
    return radius - np.asarray(y, dtype=float), wrap_angle(np.asarray(x, dtype=float) / scale)
