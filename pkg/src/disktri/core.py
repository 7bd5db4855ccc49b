"""Shared types for triangle-in-disk computations.

Everything downstream (densities, moments, characteristic functions) works on
three i.i.d. uniform points in a disk of radius R.  This module holds the
domain vocabulary those modules share: the support-region classification for
the bivariate side-length density, radius rescaling by homogeneity degree,
the exception hierarchy, and the result record returned by the quadrature
routines.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

__all__ = [
    "DiskTriangleError",
    "DomainError",
    "RegionError",
    "NumericDomainError",
    "IntegrandError",
    "ConvergenceError",
    "RegionTag",
    "Point",
    "TriangleSample",
    "QuadratureResult",
    "check_radius",
    "classify_region",
    "scale_by_homogeneity",
]


class DiskTriangleError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DiskTriangleError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class RegionError(DomainError):
    """A branch of the bivariate density was called outside its region."""


class NumericDomainError(DiskTriangleError, ArithmeticError):
    """A computed intermediate left its mathematically guaranteed range.

    Raised when an arccos argument exceeds [-1, 1] by more than the clamp
    slack.  That indicates a wrong branch or formula, never rounding, so it
    is an error rather than a clamp.  Carries the offending value and the
    evaluation context.
    """

    def __init__(self, message: str, value: float, context: str = ""):
        super().__init__(message)
        self.value = value
        self.context = context


class IntegrandError(DiskTriangleError, ArithmeticError):
    """An integrand returned NaN.  Carries the evaluation point."""

    def __init__(self, message: str, location: float):
        super().__init__(message)
        self.location = location


class ConvergenceError(DiskTriangleError, RuntimeError):
    """An iteration hit its budget before meeting tolerance.

    The partial result is attached so callers can inspect how far the
    computation got.
    """

    def __init__(self, message: str, partial: Union[float, complex, None] = None):
        super().__init__(message)
        self.partial = partial


class RegionTag(enum.Enum):
    """Support region of a point (x, y) for the bivariate side density.

    The support is the square [0, 2R]^2.  The density has one closed form
    below the fold line x + y = 2R and another above it, and is symmetric
    under swapping x and y.  LOWER means y <= x, UPPER means y > x; PHI
    and PSI name the below-fold and above-fold branches.  Ties go to the
    PHI / LOWER side, so every in-support point gets exactly one tag.
    """

    PHI_LOWER = "phi_lower"
    PSI_LOWER = "psi_lower"
    PHI_UPPER = "phi_upper"
    PSI_UPPER = "psi_upper"
    OUT_OF_SUPPORT = "out_of_support"


class Point(NamedTuple):
    xi: float
    eta: float


class TriangleSample(NamedTuple):
    """Side lengths of one sampled triangle.

    a is the side opposite the first vertex, b the second, c the third.
    """

    a: float
    b: float
    c: float


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of a numerical integration.

    value may be real or complex.  err_estimate is the integrator's own
    absolute error estimate (for complex values, the sum of the real and
    imaginary part estimates).  converged is False when the integrator
    reported trouble; detail then says what went wrong and where.
    """

    value: Union[float, complex]
    err_estimate: float
    n_evals: int
    converged: bool = True
    detail: str = ""


def check_radius(radius: float) -> float:
    """Validate a disk radius and return it as a float."""
    r = float(radius)
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"radius must be a positive finite real, got {radius!r}")
    return r


def classify_region(x: float, y: float, radius: float = 1.0) -> RegionTag:
    """Classify (x, y) into the support region of the bivariate density.

    Args:
        x: first side length candidate.
        y: second side length candidate.
        radius: disk radius R.

    Returns:
        The RegionTag for the point.  Points outside [0, 2R]^2 (including
        negative or non-finite coordinates) classify OUT_OF_SUPPORT.
    """
    r = check_radius(radius)
    if not (math.isfinite(x) and math.isfinite(y)):
        return RegionTag.OUT_OF_SUPPORT
    if x < 0.0 or y < 0.0 or x > 2.0 * r or y > 2.0 * r:
        return RegionTag.OUT_OF_SUPPORT
    below_fold = (x + y) <= 2.0 * r
    lower = y <= x
    if below_fold:
        return RegionTag.PHI_LOWER if lower else RegionTag.PHI_UPPER
    return RegionTag.PSI_LOWER if lower else RegionTag.PSI_UPPER


def scale_by_homogeneity(value_at_unit_radius: float, radius: float, degree: int) -> float:
    """Rescale a unit-radius quantity to radius R.

    Every quantity in this package is homogeneous in R with an integer
    degree: a moment E(a^k) has degree k, a univariate density has degree
    -1, a bivariate density -2, a characteristic-function value 0.

    Args:
        value_at_unit_radius: the quantity computed at R = 1.
        radius: target disk radius.
        degree: homogeneity degree (may be negative).

    Returns:
        value_at_unit_radius * radius**degree.
    """
    r = check_radius(radius)
    if degree == 0:
        return value_at_unit_radius
    return value_at_unit_radius * r**degree
