"""Characteristic functions of the squared side lengths.

For a triangle on three i.i.d. uniform points in the unit disk, with a, b
two sides sharing a vertex, this module evaluates:

  h_closed, h_series   h(t) = exp(2it)(J0(2t) - i J1(2t)), whose Taylor
                       coefficients are Catalan numbers over factorials
  charfun_a2           E exp(i t a^2) three independent ways
  inner_integral_*     B(t, v) = integral_0^1 exp(itu) J0(2t sqrt(uv)) du,
                       by a rapidly convergent Bessel series and by direct
                       quadrature
  charfun_pair         E exp(i(s a^2 + t b^2)) as a conditioned product of
                       inner integrals
  mixed_sq_pair_moment E(a^2 b^2) recovered from charfun_pair by a central
                       difference, closing the loop against the moment
                       routes

Everything here is at unit radius; the characteristic functions of the
scaled quantities follow by rescaling the frequency, which callers can do
themselves (E exp(it (Ra)^2) = charfun_a2(t R^2)).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy import special

from .core import ConvergenceError, DomainError, QuadratureResult
from .quadrature import (
    DEFAULT_SPEC_1D,
    IntegrationSpec,
    integrate_1d,
    oscillation_splits,
)
from .specfun import DEFAULT_TRUNCATION, SeriesTruncation

__all__ = [
    "MAX_FREQ",
    "MAX_PAIR_FREQ",
    "h_closed",
    "h_series",
    "h_series_coefficient",
    "charfun_a2",
    "inner_integral_series",
    "inner_integral_quad",
    "charfun_pair",
    "mixed_sq_pair_moment",
]

MAX_FREQ = 50.0
MAX_PAIR_FREQ = 10.0
# Below this |t| the closed form (i/t)(1 - h) is evaluated by its series to
# dodge the 0/0; above, directly.
_SMALL_T = 1e-3
# Below this frequency the inner integral goes by quadrature; the series
# needs a few hundred near-cancelling terms as t -> 0 while the integrand
# is barely oscillatory there.
_SERIES_MIN_T = 0.5


def _check_freq(t: float, bound: float = MAX_FREQ) -> float:
    t = float(t)
    if not math.isfinite(t) or abs(t) > bound:
        raise DomainError(f"frequency must satisfy |t| <= {bound}, got {t!r}")
    return t


def h_closed(t: float) -> complex:
    """h(t) = exp(2it)(J0(2t) - i J1(2t)), |t| <= 50."""
    t = _check_freq(t)
    z = 2.0 * t
    return complex(math.cos(z), math.sin(z)) * complex(special.j0(z), -special.j1(z))


def h_series(t: float, truncation: SeriesTruncation = DEFAULT_TRUNCATION) -> complex:
    """h(t) as sum_n C_n (it)^n / n!, with Catalan numbers C_n.

    Terms follow the ratio recurrence term_{n+1} = term_n * it * 2(2n+1) /
    ((n+2)(n+1)).  Valid for |t| <= 5, where the default truncation budget
    converges comfortably.
    """
    t = _check_freq(t, bound=5.0)
    it = complex(0.0, t)
    total = complex(0.0, 0.0)
    term = complex(1.0, 0.0)
    for n in range(truncation.max_terms):
        total += term
        nxt = term * it * (2.0 * (2 * n + 1)) / ((n + 2) * (n + 1))
        if abs(nxt) <= truncation.term_tolerance * max(1.0, abs(total)):
            return total + nxt
        term = nxt
    raise ConvergenceError(
        f"h_series({t}) did not converge in {truncation.max_terms} terms",
        partial=total)


def h_series_coefficient(n: int) -> Fraction:
    """Exact Taylor coefficient of (it)^n in h: C_n / n!."""
    if not isinstance(n, int) or not 0 <= n <= 30:
        raise DomainError(f"index must be an integer in [0, 30], got {n!r}")
    catalan_n = math.comb(2 * n, n) // (n + 1)
    return Fraction(catalan_n, math.factorial(n))


def _charfun_a2_closed(t: float) -> complex:
    if t == 0.0:
        return complex(1.0, 0.0)
    if abs(t) < _SMALL_T:
        # (i/t)(1 - h(t)) = sum_k C_{k+1} (it)^k / (k+1)!; a dozen terms
        # dwarf double precision at |t| < 1e-3.
        it = complex(0.0, t)
        total = complex(0.0, 0.0)
        term = complex(1.0, 0.0)  # k = 0: C_1 / 1! = 1
        for k in range(16):
            total += term
            term = term * it * (2.0 * (2 * k + 3)) / ((k + 3) * (k + 2))
        return total
    return (1j / t) * (1.0 - h_closed(t))


def _memoized(f: Callable[[float], complex]) -> Callable[[float], complex]:
    cache: dict = {}

    def g(x: float) -> complex:
        v = cache.get(x)
        if v is None:
            v = f(x)
            cache[x] = v
        return v

    return g


def _charfun_a2_density(t: float, spec: IntegrationSpec) -> QuadratureResult:
    from .densities import side_sq_density

    sp = IntegrationSpec(
        abs_tol=spec.abs_tol, rel_tol=spec.rel_tol, max_depth=spec.max_depth,
        split_points=spec.split_points + oscillation_splits(0.0, 4.0, t))
    return integrate_1d(
        lambda x: complex(math.cos(t * x), math.sin(t * x)) * side_sq_density(x),
        0.0, 4.0, sp)


def _charfun_a2_double(t: float, spec: IntegrationSpec) -> QuadratureResult:
    inner_spec = IntegrationSpec(
        abs_tol=max(spec.abs_tol / 10.0, 1e-14),
        rel_tol=max(spec.rel_tol / 10.0, 1e-12),
        max_depth=spec.max_depth,
        split_points=oscillation_splits(0.0, 1.0, t))
    stats = {"n": 0, "ok": True}

    def inner(u: float) -> complex:
        tu = 2.0 * t * math.sqrt(u) if u > 0.0 else 0.0

        def f(v: float) -> complex:
            bessel = special.j0(tu * math.sqrt(v)) if tu != 0.0 else 1.0
            return complex(math.cos(t * v), math.sin(t * v)) * bessel

        res = integrate_1d(f, 0.0, 1.0, inner_spec)
        stats["n"] += res.n_evals
        stats["ok"] = stats["ok"] and res.converged
        return res.value

    inner = _memoized(inner)
    outer_spec = IntegrationSpec(
        abs_tol=spec.abs_tol, rel_tol=spec.rel_tol, max_depth=spec.max_depth,
        split_points=spec.split_points + oscillation_splits(0.0, 1.0, t))
    res = integrate_1d(
        lambda u: complex(math.cos(t * u), math.sin(t * u)) * inner(u),
        0.0, 1.0, outer_spec)
    return QuadratureResult(
        value=res.value, err_estimate=res.err_estimate,
        n_evals=res.n_evals + stats["n"],
        converged=res.converged and stats["ok"], detail=res.detail)


def charfun_a2(t: float, route: str = "closed",
               spec: Optional[IntegrationSpec] = None) -> QuadratureResult:
    """E exp(i t a^2) for one squared side, unit radius, |t| <= 50.

    Routes:
      "closed":           (i/t)(1 - h(t)), series-continued through t = 0.
      "density":          integral of exp(itx) against side_sq_density.
      "double_integral":  conditioning on the two vertex radii, reducing to
                          a J0 kernel over the unit square.

    Returns:
        QuadratureResult with a complex value.  The closed route reports a
        zero error estimate and no evaluations.
    """
    t = _check_freq(t)
    if spec is None:
        spec = DEFAULT_SPEC_1D
    if route == "closed":
        return QuadratureResult(value=_charfun_a2_closed(t), err_estimate=0.0,
                                n_evals=0)
    if route == "density":
        return _charfun_a2_density(t, spec)
    if route == "double_integral":
        return _charfun_a2_double(t, spec)
    raise DomainError(
        f"route must be 'closed', 'density', or 'double_integral', got {route!r}")


def inner_integral_series(t: float, v: float,
                          truncation: SeriesTruncation = DEFAULT_TRUNCATION
                          ) -> complex:
    """B(t, v) = integral_0^1 exp(itu) J0(2t sqrt(uv)) du by Bessel series.

    B(t, v) = sqrt(pi) / (t^{3/2} v^{1/2}) exp(it/2)
              sum_n (-i)^n (2n+1) J_{n+1/2}(t/2) J_{2n+1}(2t sqrt(v)),
    which converges fast once 2n+1 passes the Bessel turning point.

    Args:
        t: frequency, 0 < t <= 50.
        v: conditioning parameter, 0 < v <= 1.
        truncation: stopping rule; two consecutive negligible terms end the
            sum (a single J_{2n+1} zero must not).

    Raises:
        ConvergenceError: truncation budget exhausted (partial attached).
    """
    t = float(t)
    v = float(v)
    if not (0.0 < t <= MAX_FREQ):
        raise DomainError(f"need 0 < t <= {MAX_FREQ}, got t={t!r}")
    if not (0.0 < v <= 1.0):
        raise DomainError(f"need 0 < v <= 1, got v={v!r}")
    sv = math.sqrt(v)
    prefac = (math.sqrt(math.pi) / (t ** 1.5 * sv)) \
        * complex(math.cos(0.5 * t), math.sin(0.5 * t))
    half = 0.5 * t
    big = 2.0 * t * sv
    total = complex(0.0, 0.0)
    small_run = 0
    batch = 32
    n0 = 0
    while n0 < truncation.max_terms:
        ns = np.arange(n0, min(n0 + batch, truncation.max_terms))
        j_half = np.sqrt(2.0 * half / math.pi) * special.spherical_jn(ns, half)
        j_big = special.jv(2 * ns + 1, big)
        mags = (2 * ns + 1) * j_half * j_big
        for k, n in enumerate(ns):
            term = prefac * (-1j) ** int(n % 4) * float(mags[k])
            total += term
            if abs(term) <= truncation.term_tolerance * max(1.0, abs(total)):
                small_run += 1
                if small_run >= 2:
                    return total
            else:
                small_run = 0
        n0 += batch
    raise ConvergenceError(
        f"inner integral series at (t={t}, v={v}) did not converge in "
        f"{truncation.max_terms} terms", partial=total)


def inner_integral_quad(t: float, v: float,
                        spec: Optional[IntegrationSpec] = None
                        ) -> QuadratureResult:
    """B(t, v) by direct quadrature; the slow, dumb route the series is
    checked against."""
    t = float(t)
    v = float(v)
    if not (0.0 < t <= MAX_FREQ):
        raise DomainError(f"need 0 < t <= {MAX_FREQ}, got t={t!r}")
    if not (0.0 < v <= 1.0):
        raise DomainError(f"need 0 < v <= 1, got v={v!r}")
    if spec is None:
        spec = DEFAULT_SPEC_1D
    sv = math.sqrt(v)
    sp = IntegrationSpec(
        abs_tol=spec.abs_tol, rel_tol=spec.rel_tol, max_depth=spec.max_depth,
        split_points=spec.split_points + oscillation_splits(0.0, 1.0, t))

    def f(u: float) -> complex:
        bessel = special.j0(2.0 * t * sv * math.sqrt(u)) if u > 0.0 else 1.0
        return complex(math.cos(t * u), math.sin(t * u)) * bessel

    return integrate_1d(f, 0.0, 1.0, sp)


def _inner_b(tau: float, u: float, spec: IntegrationSpec,
             truncation: SeriesTruncation) -> complex:
    if tau == 0.0:
        return complex(1.0, 0.0)
    if tau < 0.0:
        return _inner_b(-tau, u, spec, truncation).conjugate()
    if tau >= _SERIES_MIN_T:
        return inner_integral_series(tau, u, truncation)
    return inner_integral_quad(tau, u, spec).value


def charfun_pair(s: float, t: float,
                 spec: Optional[IntegrationSpec] = None,
                 truncation: SeriesTruncation = DEFAULT_TRUNCATION
                 ) -> QuadratureResult:
    """E exp(i(s a^2 + t b^2)) for two sides sharing a vertex, |s|,|t| <= 10.

    Conditioning on the shared vertex's squared radius u factors the
    expectation into inner integrals:

        integral_0^1 exp(i(s+t)u) B(s, u) B(t, u) du.

    B goes by the Bessel series where the frequency is large enough for it
    to converge briskly and by quadrature otherwise.  charfun_pair(0, t)
    collapses to charfun_a2(t) since B(0, u) = 1.
    """
    s = _check_freq(s, bound=MAX_PAIR_FREQ)
    t = _check_freq(t, bound=MAX_PAIR_FREQ)
    if spec is None:
        spec = DEFAULT_SPEC_1D
    if s == 0.0 and t == 0.0:
        return QuadratureResult(value=complex(1.0, 0.0), err_estimate=0.0,
                                n_evals=0)
    inner_spec = IntegrationSpec(
        abs_tol=max(spec.abs_tol / 10.0, 1e-14),
        rel_tol=max(spec.rel_tol / 10.0, 1e-12),
        max_depth=spec.max_depth)

    @_memoized
    def both(u: float) -> complex:
        return _inner_b(t, u, inner_spec, truncation) \
            * _inner_b(s, u, inner_spec, truncation)

    w = s + t
    outer_spec = IntegrationSpec(
        abs_tol=spec.abs_tol, rel_tol=spec.rel_tol, max_depth=spec.max_depth,
        split_points=spec.split_points + oscillation_splits(0.0, 1.0, w))
    return integrate_1d(
        lambda u: complex(math.cos(w * u), math.sin(w * u)) * both(u),
        0.0, 1.0, outer_spec)


def mixed_sq_pair_moment(delta: float = 0.005,
                         spec: Optional[IntegrationSpec] = None) -> float:
    """E(a^2 b^2) from charfun_pair by a mixed central difference.

    The four-point stencil for d^2/ds dt at the origin collapses to two
    evaluations by conjugate symmetry:

        E(a^2 b^2) = [Re f(d, -d) - Re f(d, d)] / (2 d^2) + O(d^2).

    delta = 5e-3 keeps the O(d^2) bias near 5e-5 while leaving the
    cancellation noise far below it at the default tolerances.
    """
    delta = float(delta)
    if not (0.0 < delta <= 0.1):
        raise DomainError(f"delta must be in (0, 0.1], got {delta!r}")
    if spec is None:
        spec = IntegrationSpec(abs_tol=1e-12, rel_tol=1e-11)
    f_pp = charfun_pair(delta, delta, spec).value
    f_pm = charfun_pair(delta, -delta, spec).value
    return (f_pm.real - f_pp.real) / (2.0 * delta * delta)
