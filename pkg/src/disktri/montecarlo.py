"""Monte Carlo sampling of triangles in a disk, reproducible by construction.

Sampling is organized in fixed-size blocks of 2**16 triangles.  Block j
draws from its own counter-based generator, Philox seeded with
SeedSequence(entropy=seed, spawn_key=(j,)), so the randomness consumed by
block j depends only on (seed, j).  A run over n samples uses blocks
0 .. ceil(n / 2**16) - 1, the last one truncated.  Chunks partition the
block list for threaded execution and nothing else; per-block partial sums
are merged in block order with math.fsum, which is exact, so the estimates
are bit-for-bit identical for every chunk count and thread schedule.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np

from .core import DomainError, Point, TriangleSample, check_radius

__all__ = [
    "BLOCK_SIZE",
    "RngStream",
    "Estimate",
    "MomentEstimates",
    "point_from_uniforms",
    "sample_point",
    "sample_triangle",
    "estimate_moments",
    "pair_histogram",
]

BLOCK_SIZE = 1 << 16

# Feature vector layout for one triangle with sides (a, b, c), perim p.
_A, _B, _AB, _A2, _B2, _P, _P2, _A2B2 = range(8)
_N_FEATURES = 8


@dataclass(frozen=True)
class RngStream:
    """Identifies one reproducible random stream.

    Streams with the same seed and different stream_index are statistically
    independent (distinct Philox spawn keys).
    """

    seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise DomainError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not isinstance(self.stream_index, (int, np.integer)) or self.stream_index < 0:
            raise DomainError(
                f"stream_index must be a nonnegative integer, got {self.stream_index!r}")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=int(self.seed),
                                    spawn_key=(int(self.stream_index),))
        return np.random.Generator(np.random.Philox(ss))


def _as_generator(rng: Union[RngStream, np.random.Generator]) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise DomainError(f"rng must be an RngStream or numpy Generator, got {type(rng)!r}")


def point_from_uniforms(u: float, v: float, radius: float = 1.0) -> Point:
    """Map two unit uniforms to a uniform point in the disk.

    r = R sqrt(u), theta = 2 pi v.  The sqrt makes the areal density
    uniform; (u, v) = (0.25, 0.5) lands at (-R/2, 0).
    """
    r = check_radius(radius)
    if not (0.0 <= u <= 1.0 and 0.0 <= v <= 1.0):
        raise DomainError(f"uniform drivers must lie in [0, 1], got ({u!r}, {v!r})")
    rho = r * math.sqrt(u)
    theta = 2.0 * math.pi * v
    return Point(rho * math.cos(theta), rho * math.sin(theta))


def sample_point(rng: Union[RngStream, np.random.Generator],
                 radius: float = 1.0) -> Point:
    """One uniform point in the disk, consuming two uniforms from rng."""
    gen = _as_generator(rng)
    u = gen.random(2)
    return point_from_uniforms(float(u[0]), float(u[1]), radius)


def sample_triangle(rng: Union[RngStream, np.random.Generator],
                    radius: float = 1.0) -> TriangleSample:
    """Side lengths of one triangle on three i.i.d. uniform disk points.

    Consumes exactly six uniforms, two per vertex in vertex order.  Side a
    is opposite the first vertex, b the second, c the third.
    """
    gen = _as_generator(rng)
    u = gen.random(6)
    pts = [point_from_uniforms(float(u[2 * k]), float(u[2 * k + 1]), radius)
           for k in range(3)]
    a = math.dist(pts[1], pts[2])
    b = math.dist(pts[2], pts[0])
    c = math.dist(pts[0], pts[1])
    return TriangleSample(a, b, c)


def _block_vertices(gen: np.random.Generator, m: int, radius: float):
    u = gen.random((m, 6))
    coords = []
    for k in range(3):
        rho = radius * np.sqrt(u[:, 2 * k])
        theta = (2.0 * math.pi) * u[:, 2 * k + 1]
        coords.append((rho * np.cos(theta), rho * np.sin(theta)))
    return coords


def _block_sides(gen: np.random.Generator, m: int, radius: float):
    (ax, ay), (bx, by), (cx, cy) = _block_vertices(gen, m, radius)
    a = np.hypot(bx - cx, by - cy)
    b = np.hypot(cx - ax, cy - ay)
    c = np.hypot(ax - bx, ay - by)
    return a, b, c


def _block_partials(seed: int, block: int, m: int, radius: float):
    gen = RngStream(seed, block).generator()
    a, b, c = _block_sides(gen, m, radius)
    p = a + b + c
    y = np.empty((_N_FEATURES, m))
    y[_A] = a
    y[_B] = b
    y[_AB] = a * b
    y[_A2] = a * a
    y[_B2] = b * b
    y[_P] = p
    y[_P2] = p * p
    y[_A2B2] = y[_A2] * y[_B2]
    s1 = y.sum(axis=1)
    # einsum keeps the accumulation single-threaded and order-stable, which
    # the bitwise reproducibility guarantee leans on.
    s2 = np.einsum("ik,jk->ij", y, y)
    return s1, s2


def _block_sizes(n: int) -> Sequence[int]:
    full, rem = divmod(n, BLOCK_SIZE)
    sizes = [BLOCK_SIZE] * full
    if rem:
        sizes.append(rem)
    return sizes


class Estimate(NamedTuple):
    value: float
    std_error: float


@dataclass(frozen=True)
class MomentEstimates:
    """Monte Carlo estimates with delta-method standard errors."""

    mean_side: Estimate
    mean_pair_product: Estimate
    mean_perimeter: Estimate
    var_perimeter: Estimate
    mean_sq_pair_product: Estimate
    corr_sides: Estimate
    n: int
    seed: int
    chunks: int
    radius: float


def _validate_run(n: int, seed: int, chunks: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise DomainError(f"sample count must be an integer >= 2, got {n!r}")
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise DomainError(f"seed must be a nonnegative integer, got {seed!r}")
    if not isinstance(chunks, (int, np.integer)) or chunks < 1:
        raise DomainError(f"chunks must be an integer >= 1, got {chunks!r}")


def _run_blocks(worker, n_blocks: int, chunks: int):
    if chunks == 1 or n_blocks == 1:
        return [worker(j) for j in range(n_blocks)]
    with ThreadPoolExecutor(max_workers=min(chunks, n_blocks)) as pool:
        return list(pool.map(worker, range(n_blocks)))


def estimate_moments(n: int, seed: int, chunks: int = 1,
                     radius: float = 1.0) -> MomentEstimates:
    """Estimate the headline moments from n sampled triangles.

    Args:
        n: sample count, >= 2.
        seed: stream seed; same seed, same estimates, always.
        chunks: parallelism hint.  Has no effect on the values.
        radius: disk radius.

    Returns:
        MomentEstimates; each field carries (value, std_error).  The
        perimeter variance uses the n/(n-1) correction.
    """
    _validate_run(n, seed, chunks)
    r = check_radius(radius)
    sizes = _block_sizes(n)

    def worker(j: int):
        return _block_partials(int(seed), j, sizes[j], r)

    partials = _run_blocks(worker, len(sizes), int(chunks))

    s1 = np.array([math.fsum(p[0][i] for p in partials)
                   for i in range(_N_FEATURES)])
    s2 = np.array([[math.fsum(p[1][i, j] for p in partials)
                    for j in range(_N_FEATURES)] for i in range(_N_FEATURES)])

    mu = s1 / n
    second = s2 / n
    cov = (second - np.outer(mu, mu)) * (n / (n - 1.0))

    bessel = n / (n - 1.0)

    def est(g, value=None) -> Estimate:
        grad = np.zeros(_N_FEATURES)
        for i in range(_N_FEATURES):
            h = 1e-6 * max(1.0, abs(mu[i]))
            up = mu.copy(); up[i] += h
            dn = mu.copy(); dn[i] -= h
            grad[i] = (g(up) - g(dn)) / (2.0 * h)
        var = float(grad @ cov @ grad) / n
        v = g(mu) if value is None else value
        return Estimate(float(v), math.sqrt(max(var, 0.0)))

    def g_var_perim(m):
        return m[_P2] - m[_P] ** 2

    def g_corr(m):
        va = m[_A2] - m[_A] ** 2
        vb = m[_B2] - m[_B] ** 2
        return (m[_AB] - m[_A] * m[_B]) / math.sqrt(va * vb)

    return MomentEstimates(
        mean_side=est(lambda m: m[_A]),
        mean_pair_product=est(lambda m: m[_AB]),
        mean_perimeter=est(lambda m: m[_P]),
        var_perimeter=est(g_var_perim, value=g_var_perim(mu) * bessel),
        mean_sq_pair_product=est(lambda m: m[_A2B2]),
        corr_sides=est(g_corr),
        n=int(n), seed=int(seed), chunks=int(chunks), radius=r,
    )


def pair_histogram(n: int, seed: int, bins: int, radius: float = 1.0,
                   chunks: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """2-D histogram of (a, b) over [0, 2R]^2 on the shared block streams.

    Returns:
        (counts, edges): counts is a bins x bins int64 array with first
        index binning a, second binning b; edges the common bin edges.
        counts.sum() == n, since both sides always lie in [0, 2R].
    """
    _validate_run(n, seed, chunks)
    if not isinstance(bins, (int, np.integer)) or bins < 1:
        raise DomainError(f"bins must be an integer >= 1, got {bins!r}")
    r = check_radius(radius)
    sizes = _block_sizes(n)
    edges = np.linspace(0.0, 2.0 * r, int(bins) + 1)

    def worker(j: int):
        gen = RngStream(int(seed), j).generator()
        a, b, _ = _block_sides(gen, sizes[j], r)
        h, _, _ = np.histogram2d(a, b, bins=(edges, edges))
        return h.astype(np.int64)

    counts = sum(_run_blocks(worker, len(sizes), int(chunks)))
    return counts, edges
