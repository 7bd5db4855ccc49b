"""Special functions used by the density and characteristic-function work.

Bessel J of integer and half-integer order, modified Bessel I0/I1, Catalan
numbers, and the Catalan exponential generating function.  The Bessel
evaluations delegate to scipy.special behind the range checks documented
here; the Catalan operations and the series evaluator are local.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special

from .core import ConvergenceError, DomainError

__all__ = [
    "SeriesTruncation",
    "DEFAULT_TRUNCATION",
    "bessel_j",
    "bessel_j_half",
    "bessel_j_half_orders",
    "bessel_i",
    "catalan",
    "catalan_egf",
]

MAX_ORDER_J = 300
MAX_ARG_J = 200.0
MAX_ORDER_J_HALF = 200
MAX_ARG_I = 200.0
MAX_CATALAN_N = 30
MAX_EGF_ARG = 20.0


@dataclass(frozen=True)
class SeriesTruncation:
    """Stopping rule for series summation.

    Summation stops once the next term is below term_tolerance relative to
    the running partial sum (with a floor of 1 to keep near-zero sums from
    demanding absolute perfection).  Exhausting max_terms without meeting
    that raises ConvergenceError carrying the partial sum.
    """

    max_terms: int = 200
    term_tolerance: float = 1e-15

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        if not (0.0 < self.term_tolerance < 1.0):
            raise DomainError(
                f"term_tolerance must be in (0, 1), got {self.term_tolerance}"
            )


DEFAULT_TRUNCATION = SeriesTruncation()


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind, integer order.

    Args:
        n: order, 0 <= n <= 300.
        x: argument, |x| <= 200.

    Returns:
        J_n(x).
    """
    if not isinstance(n, (int, np.integer)):
        raise DomainError(f"order must be an integer, got {n!r}")
    if not 0 <= n <= MAX_ORDER_J:
        raise DomainError(f"order must be in [0, {MAX_ORDER_J}], got {n}")
    x = float(x)
    if not math.isfinite(x) or abs(x) > MAX_ARG_J:
        raise DomainError(f"argument must satisfy |x| <= {MAX_ARG_J}, got {x!r}")
    return float(special.jv(n, x))


def bessel_j_half(n: int, x: float) -> float:
    """Bessel J of half-integer order n + 1/2 via spherical Bessel functions.

    J_{n+1/2}(x) = sqrt(2x/pi) * j_n(x), valid for x > 0.

    Args:
        n: 0 <= n <= 200, giving order n + 1/2.
        x: argument, 0 < x <= 200.
    """
    if not isinstance(n, (int, np.integer)):
        raise DomainError(f"order index must be an integer, got {n!r}")
    if not 0 <= n <= MAX_ORDER_J_HALF:
        raise DomainError(f"order index must be in [0, {MAX_ORDER_J_HALF}], got {n}")
    x = float(x)
    if not math.isfinite(x) or x <= 0.0 or x > MAX_ARG_J:
        raise DomainError(f"argument must satisfy 0 < x <= {MAX_ARG_J}, got {x!r}")
    return math.sqrt(2.0 * x / math.pi) * float(special.spherical_jn(n, x))


def bessel_j_half_orders(n_max: int, x: float) -> np.ndarray:
    """All of J_{1/2}(x) .. J_{n_max+1/2}(x) at once, as an array.

    Same domain as bessel_j_half; used by series that sweep the order.
    """
    if not isinstance(n_max, (int, np.integer)) or not 0 <= n_max <= MAX_ORDER_J_HALF:
        raise DomainError(f"order index must be in [0, {MAX_ORDER_J_HALF}], got {n_max!r}")
    x = float(x)
    if not math.isfinite(x) or x <= 0.0 or x > MAX_ARG_J:
        raise DomainError(f"argument must satisfy 0 < x <= {MAX_ARG_J}, got {x!r}")
    orders = np.arange(n_max + 1)
    return np.sqrt(2.0 * x / math.pi) * special.spherical_jn(orders, x)


def bessel_i(k: int, x: float) -> float:
    """Modified Bessel function I_k for k in {0, 1}, |x| <= 200."""
    if k not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {k!r}")
    x = float(x)
    if not math.isfinite(x) or abs(x) > MAX_ARG_I:
        raise DomainError(f"argument must satisfy |x| <= {MAX_ARG_I}, got {x!r}")
    if k == 0:
        return float(special.i0(x))
    # I1 is odd; scipy's i1 already honors that, kept explicit for clarity.
    return float(special.i1(x))


def catalan(n: int) -> int:
    """n-th Catalan number, exact integer arithmetic.

    C_n = binom(2n, n) / (n + 1), for 0 <= n <= 30.
    """
    if not isinstance(n, (int, np.integer)):
        raise DomainError(f"index must be an integer, got {n!r}")
    if not 0 <= n <= MAX_CATALAN_N:
        raise DomainError(f"index must be in [0, {MAX_CATALAN_N}], got {n}")
    n = int(n)
    return math.comb(2 * n, n) // (n + 1)


def catalan_egf(t: float, truncation: SeriesTruncation = DEFAULT_TRUNCATION) -> float:
    """Exponential generating function of the Catalan numbers.

    Sums sum_n C_n t^n / n! with the term recurrence
    term_{n+1} = term_n * t * 2(2n+1) / ((n+2)(n+1)),
    which follows from C_{n+1}/C_n = 2(2n+1)/(n+2).  Equals
    exp(2t) (I0(2t) - I1(2t)); the identity is exercised in the tests
    rather than assumed here.

    Terms are accumulated as exact rationals (the input is an exact binary
    fraction), so for negative t, where the alternating terms overshoot the
    sum by several orders of magnitude, the cancellation happens exactly
    and only the final conversion rounds.

    Args:
        t: argument, |t| <= 20.
        truncation: stopping rule.

    Returns:
        The series value.

    Raises:
        ConvergenceError: max_terms exhausted before the stopping rule met;
            the partial sum is attached.
    """
    t = float(t)
    if not math.isfinite(t) or abs(t) > MAX_EGF_ARG:
        raise DomainError(f"argument must satisfy |t| <= {MAX_EGF_ARG}, got {t!r}")
    tf = Fraction(t)
    total = Fraction(0)
    term = Fraction(1)
    for n in range(truncation.max_terms):
        total += term
        term = term * tf * (2 * (2 * n + 1)) / ((n + 2) * (n + 1))
        if abs(term) <= Fraction(truncation.term_tolerance) * max(1, abs(total)):
            # One more term so the quoted tolerance bounds the remainder.
            return float(total + term)
    raise ConvergenceError(
        f"catalan_egf({t}) did not converge in {truncation.max_terms} terms",
        partial=float(total),
    )
