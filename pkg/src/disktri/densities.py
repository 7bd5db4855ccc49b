"""Side-length densities for a uniform random triangle in a disk.

Let three points be drawn i.i.d. uniformly from a disk of radius R and let
x, y be the lengths of two chosen sides.  This module evaluates:

  side_density             f(x), one side, supported on (0, 2R)
  side_sq_density          density of the squared side length on (0, 4R^2)
  conditional_side_density f(x | t), side to a vertex at distance t from
                           the center
  phi, psi                 the two closed-form branches of the joint density
                           f(x, y), below and above the fold x + y = 2R
  pair_density             f(x, y) anywhere in the plane (0 off support)
  pair_density_subcase_oracle
                           the same f(x, y) assembled instead from products
                           of conditional densities, integrated over the
                           vertex radius; an independent route used to
                           cross-check phi and psi

All formulas are homogeneous in R; internally everything is evaluated at
unit radius and rescaled by the appropriate degree (-1 for univariate
densities, -2 for the pair density).

The closed forms contain arccos applied to expressions that reach +-1
exactly on the support edges and on the lines y = x and x + y = 2R.
Floating-point rounding can push those arguments slightly past +-1; the
ClampPolicy snaps arguments within a small slack back to the endpoint and
treats anything worse as a genuine error (NumericDomainError), since a
large excursion means a wrong branch, not rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    DomainError,
    NumericDomainError,
    RegionError,
    RegionTag,
    check_radius,
    classify_region,
)
from .core import ConvergenceError
from .quadrature import IntegrationSpec, gauss_legendre_nodes, integrate_1d

__all__ = [
    "ClampPolicy",
    "DEFAULT_CLAMP",
    "side_density",
    "side_sq_density",
    "conditional_side_density",
    "inner_kernel",
    "phi",
    "psi",
    "pair_density",
    "pair_density_subcase_oracle",
]


@dataclass(frozen=True)
class ClampPolicy:
    """How far past +-1 an arccos argument may stray before it is an error."""

    slack: float = 1e-9

    def __post_init__(self):
        if not (0.0 < self.slack <= 1e-3):
            raise DomainError(f"slack must be in (0, 1e-3], got {self.slack!r}")


DEFAULT_CLAMP = ClampPolicy()

# Region membership slack, in units of R.  phi and psi accept their closed
# regions (both include the fold line, where they agree), padded by this so
# points constructed as y = 2R - x stay admissible under rounding.
_REGION_SLACK = 1e-9

_KERNEL_LEVELS = (48, 96, 192, 384, 768, 1536)


def _acos_clamped(a: float, clamp: ClampPolicy, context: str) -> float:
    if a > 1.0 or a < -1.0:
        if abs(a) - 1.0 > clamp.slack:
            raise NumericDomainError(
                f"arccos argument {a!r} beyond clamp slack in {context}",
                value=a, context=context)
        a = 1.0 if a > 1.0 else -1.0
    return math.acos(a)


def _acos_clamped_array(a: np.ndarray, clamp: ClampPolicy, context: str) -> np.ndarray:
    amax = float(np.max(np.abs(a)))
    if amax > 1.0:
        if amax - 1.0 > clamp.slack:
            raise NumericDomainError(
                f"arccos argument magnitude {amax!r} beyond clamp slack in {context}",
                value=amax, context=context)
        a = np.clip(a, -1.0, 1.0)
    return np.arccos(a)


def side_density(x: float, radius: float = 1.0) -> float:
    """Density of one side length, f(x) on (0, 2R), zero elsewhere.

    f(x) = (4x / (pi R^2)) arccos(x / 2R) - (x^2 / (pi R^4)) sqrt(4R^2 - x^2)
    """
    r = check_radius(radius)
    xs = x / r
    if not math.isfinite(xs) or xs <= 0.0 or xs >= 2.0:
        return 0.0
    val = (4.0 * xs / math.pi) * math.acos(0.5 * xs) \
        - (xs * xs / math.pi) * math.sqrt(4.0 - xs * xs)
    return val / r


def side_sq_density(x: float, radius: float = 1.0) -> float:
    """Density of the squared side length, supported on (0, 4R^2).

    Change of variables from side_density: g(x) = f(sqrt(x)) / (2 sqrt(x)).
    """
    r = check_radius(radius)
    if not math.isfinite(x) or x <= 0.0 or x >= 4.0 * r * r:
        return 0.0
    s = math.sqrt(x)
    return side_density(s, r) / (2.0 * s)


def conditional_side_density(x: float, t: float, radius: float = 1.0,
                             clamp: ClampPolicy = DEFAULT_CLAMP) -> float:
    """Density of the distance from a fixed point to a uniform point.

    The fixed point sits at distance t from the disk center, 0 <= t < R.
    The distance x is supported on (0, t + R):

      2x / R^2                                        if x + t <= R
      (2x / (pi R^2)) arccos((t^2 + x^2 - R^2)/(2tx)) if R - t < x < R + t
      0                                               otherwise
    """
    r = check_radius(radius)
    t = float(t)
    if not math.isfinite(t) or t < 0.0 or t >= r:
        raise DomainError(f"need 0 <= t < R, got t={t!r}, R={r}")
    xs, ts = x / r, t / r
    if not math.isfinite(xs) or xs <= 0.0 or xs >= ts + 1.0:
        return 0.0
    if xs + ts <= 1.0:
        return (2.0 * xs) / r
    arg = (ts * ts + xs * xs - 1.0) / (2.0 * ts * xs)
    val = (2.0 * xs / math.pi) * _acos_clamped(
        arg, clamp, f"conditional_side_density(x={x}, t={t})")
    return val / r


def _inner_kernel_unit(x: float, y: float, lower: float,
                       clamp: ClampPolicy, spec: IntegrationSpec) -> float:
    # Integral over t in [lower, 1] of
    #   t * arccos((t^2+x^2-1)/(2tx)) * arccos((t^2+y^2-1)/(2ty)).
    # Substituting t = lower + u^2 makes the integrand analytic in u (the
    # arccos arguments reach +-1 quadratically at the endpoints), so
    # Gauss-Legendre with node doubling converges geometrically.
    if lower >= 1.0:
        return 0.0
    u_max = math.sqrt(1.0 - lower)
    ctx = f"inner_kernel(x={x}, y={y}, lower={lower})"

    def level(n: int) -> float:
        nodes, weights = gauss_legendre_nodes(n)
        u = 0.5 * u_max * (nodes + 1.0)
        w = 0.5 * u_max * weights
        t = lower + u * u
        ax = _acos_clamped_array((t * t + x * x - 1.0) / (2.0 * t * x), clamp, ctx)
        ay = _acos_clamped_array((t * t + y * y - 1.0) / (2.0 * t * y), clamp, ctx)
        return float(np.sum(w * 2.0 * u * t * ax * ay))

    prev = None
    val = 0.0
    for n in _KERNEL_LEVELS:
        val = level(n)
        if prev is not None and abs(val - prev) <= max(spec.abs_tol,
                                                       spec.rel_tol * abs(val)):
            return val
        prev = val
    raise ConvergenceError(
        f"inner kernel did not stabilize by {_KERNEL_LEVELS[-1]} nodes for {ctx}",
        partial=val)


def inner_kernel(x: float, y: float, lower: float, radius: float = 1.0,
                 clamp: ClampPolicy = DEFAULT_CLAMP,
                 spec: Optional[IntegrationSpec] = None) -> float:
    """The shared double-arccos integral of the joint-density closed forms.

    integral_{lower}^{R} t arccos((t^2+x^2-R^2)/(2tx))
                           arccos((t^2+y^2-R^2)/(2ty)) dt

    Args:
        x, y: side lengths, 0 < x, y <= 2R.
        lower: lower limit, 0 <= lower <= R.
        radius: disk radius.
        clamp: arccos endpoint policy.
        spec: convergence tolerances for the node-doubling rule.

    Returns:
        The integral value (0 when lower == R).
    """
    r = check_radius(radius)
    if spec is None:
        spec = IntegrationSpec()
    x, y, lower = float(x), float(y), float(lower)
    if not (0.0 < x <= 2.0 * r) or not (0.0 < y <= 2.0 * r):
        raise DomainError(f"need 0 < x, y <= 2R, got x={x!r}, y={y!r}, R={r}")
    if not (0.0 <= lower <= r):
        raise DomainError(f"need 0 <= lower <= R, got lower={lower!r}, R={r}")
    val = _inner_kernel_unit(x / r, y / r, lower / r, clamp, spec)
    return val * r * r


def _phi_unit(x: float, y: float, clamp: ClampPolicy,
              spec: IntegrationSpec) -> float:
    if x <= 0.0 or y <= 0.0:
        return 0.0
    f1 = 2.0 - x - y
    f2 = x - y
    root = math.sqrt(max(f1, 0.0) * max(f2, 0.0) * (2.0 + x - y) * (x + y))
    ctx = f"phi(x={x}, y={y})"
    if 1.0 - y < 1e-12:
        # (R-y)^2 arccos(...) has a removable zero at y = R; the arccos
        # argument itself diverges there, so skip before clamping.
        term1 = 0.0
    else:
        a1 = (x * x - 2.0 * y + y * y) / (2.0 * x * (1.0 - y))
        term1 = 2.0 * (1.0 - y) ** 2 * _acos_clamped(a1, clamp, ctx)
    a2 = (x * x + 2.0 * y - y * y) / (2.0 * x)
    term2 = 2.0 * _acos_clamped(a2, clamp, ctx)
    bracket = -root + term1 + term2
    lower = min(max(1.0 - y, 0.0), 1.0)
    kern = _inner_kernel_unit(x, y, lower, clamp, spec)
    val = (2.0 * x * y / math.pi) * bracket \
        + (8.0 * x * y / (math.pi * math.pi)) * kern
    return max(val, 0.0)


def _psi_unit(x: float, y: float, clamp: ClampPolicy,
              spec: IntegrationSpec) -> float:
    if x <= 0.0 or y <= 0.0 or x >= 2.0:
        return 0.0
    lower = min(max(x - 1.0, 0.0), 1.0)
    kern = _inner_kernel_unit(x, y, lower, clamp, spec)
    return (8.0 * x * y / (math.pi * math.pi)) * kern


def phi(x: float, y: float, radius: float = 1.0,
        clamp: ClampPolicy = DEFAULT_CLAMP,
        spec: Optional[IntegrationSpec] = None) -> float:
    """Joint side-length density branch for y <= x, x + y <= 2R.

    The region is closed: the fold line x + y = 2R belongs to phi and psi
    alike (the two branches agree there), and membership is tested with a
    small slack so points constructed as y = 2R - x are admissible.
    """
    r = check_radius(radius)
    if spec is None:
        spec = IntegrationSpec()
    s = _REGION_SLACK * r
    if not (-s <= y <= x + s and x + y <= 2.0 * r + s):
        tag = classify_region(x, y, r)
        raise RegionError(
            f"phi needs 0 <= y <= x and x + y <= 2R, got (x={x}, y={y}, "
            f"R={r}) which classifies {tag.value}")
    return _phi_unit(x / r, y / r, clamp, spec) / (r * r)


def psi(x: float, y: float, radius: float = 1.0,
        clamp: ClampPolicy = DEFAULT_CLAMP,
        spec: Optional[IntegrationSpec] = None) -> float:
    """Joint side-length density branch for y <= x, x + y >= 2R.

    psi(x, y) = (8xy / (pi^2 R^6)) * inner_kernel(x, y, x - R); closed
    region, fold line included (see phi).
    """
    r = check_radius(radius)
    if spec is None:
        spec = IntegrationSpec()
    s = _REGION_SLACK * r
    if not (-s <= y <= x + s and x + y >= 2.0 * r - s and x <= 2.0 * r + s):
        tag = classify_region(x, y, r)
        raise RegionError(
            f"psi needs 0 <= y <= x <= 2R and x + y >= 2R, got (x={x}, "
            f"y={y}, R={r}) which classifies {tag.value}")
    return _psi_unit(x / r, y / r, clamp, spec) / (r * r)


def pair_density(x: float, y: float, radius: float = 1.0,
                 clamp: ClampPolicy = DEFAULT_CLAMP,
                 spec: Optional[IntegrationSpec] = None) -> float:
    """Joint density f(x, y) of two side lengths, anywhere in the plane.

    Dispatches on the support region: phi below the fold x + y = 2R, psi
    above it, arguments swapped for y > x (the density is symmetric), and
    0 off the support square [0, 2R]^2.
    """
    r = check_radius(radius)
    if spec is None:
        spec = IntegrationSpec()
    tag = classify_region(x, y, r)
    if tag is RegionTag.OUT_OF_SUPPORT:
        return 0.0
    if tag is RegionTag.PHI_LOWER:
        return _phi_unit(x / r, y / r, clamp, spec) / (r * r)
    if tag is RegionTag.PSI_LOWER:
        return _psi_unit(x / r, y / r, clamp, spec) / (r * r)
    if tag is RegionTag.PHI_UPPER:
        return _phi_unit(y / r, x / r, clamp, spec) / (r * r)
    return _psi_unit(y / r, x / r, clamp, spec) / (r * r)


_ORACLE_SPEC = IntegrationSpec(abs_tol=1e-13, rel_tol=1e-11)


def pair_density_subcase_oracle(x: float, y: float, radius: float = 1.0,
                                spec: Optional[IntegrationSpec] = None) -> float:
    """f(x, y) assembled from conditional densities, no closed forms.

    Conditions on the vertex shared by the two sides sitting at radius t
    (density 2t/R^2) and multiplies the two conditional side densities,
    then integrates over t.  Each combination of the conditional density's
    pieces (full 2x/R^2 regime vs arccos regime) gives one smooth piece of
    the t-integral; the pieces are integrated separately and summed.  This
    route never touches phi, psi, or inner_kernel, which is what makes it
    an independent oracle for them.
    """
    r = check_radius(radius)
    if spec is None:
        spec = _ORACLE_SPEC
    tag = classify_region(x, y, r)
    if tag is RegionTag.OUT_OF_SUPPORT:
        raise DomainError(f"point (x={x!r}, y={y!r}) is outside [0, 2R]^2")
    return _subcase_unit(x / r, y / r, spec) / (r * r)


def _subcase_unit(x: float, y: float, spec: IntegrationSpec) -> float:
    clamp = DEFAULT_CLAMP

    def full(z):
        return lambda t: 2.0 * z

    def arc(z):
        def g(t):
            arg = (t * t + z * z - 1.0) / (2.0 * t * z)
            return (2.0 * z / math.pi) * _acos_clamped(
                arg, clamp, f"subcase_oracle(z={z}, t={t})")
        return g

    hi, lo = (x, y) if x >= y else (y, x)
    if lo <= 0.0 or hi >= 2.0:
        return 0.0
    if hi <= 1.0:
        pieces = [
            (0.0, 1.0 - hi, full(hi), full(lo)),
            (1.0 - hi, 1.0 - lo, arc(hi), full(lo)),
            (1.0 - lo, 1.0, arc(hi), arc(lo)),
        ]
    elif hi + lo <= 2.0:
        pieces = [
            (hi - 1.0, 1.0 - lo, arc(hi), full(lo)),
            (1.0 - lo, 1.0, arc(hi), arc(lo)),
        ]
    else:
        pieces = [
            (hi - 1.0, 1.0, arc(hi), arc(lo)),
        ]
    total = 0.0
    for t_lo, t_hi, g_hi, g_lo in pieces:
        if t_hi - t_lo <= 1e-15:
            continue
        res = integrate_1d(lambda t: 2.0 * t * g_hi(t) * g_lo(t),
                           t_lo, t_hi, spec)
        total += res.value
    return total
