"""Self-verification: every published number checked by two or more routes.

AcceptanceSuite runs the package's cross-checks at one of two levels:

  "full":  the tolerances the constants are published at.
  "quick": thresholds and quadrature tolerances relaxed tenfold and the
           Monte Carlo budget cut to 10^6 samples; same checks, same grids.

Each check compares independent computational routes (closed form vs
quadrature vs sampling vs series) rather than re-deriving one route twice,
so a transcription error in any single formula shows up as a failure here.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import charfun, densities, moments, montecarlo
from .core import DomainError
from .quadrature import IntegrationSpec, integrate_1d, integrate_2d, KinkLines
from .specfun import catalan

__all__ = ["CheckResult", "AcceptanceSuite", "format_table"]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check.

    value is the measured figure of merit (usually a worst-case absolute
    deviation), target the threshold it must stay under.
    """

    name: str
    passed: bool
    value: float
    target: float
    seconds: float
    detail: str = ""


def _result(name: str, value: float, target: float, t0: float,
            detail: str = "", extra_pass: bool = True) -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(value <= target) and extra_pass,
        value=float(value),
        target=float(target),
        seconds=time.perf_counter() - t0,
        detail=detail,
    )


class AcceptanceSuite:
    """The sixteen cross-checks behind the published constants."""

    def __init__(self, level: str = "full"):
        if level not in ("quick", "full"):
            raise DomainError(f"level must be 'quick' or 'full', got {level!r}")
        self.level = level
        self.factor = 1.0 if level == "full" else 10.0
        self.mc_n = 10_000_000 if level == "full" else 1_000_000
        self.spec_2d = IntegrationSpec(abs_tol=1e-10 * self.factor,
                                       rel_tol=1e-8 * self.factor)
        self.spec_1d = IntegrationSpec(abs_tol=1e-12 * self.factor,
                                       rel_tol=1e-10 * self.factor)
        self._kinks = KinkLines(diagonal=True, antidiagonal=True, radius=1.0)
        self._cache: Dict[str, object] = {}

    # Shared intermediates

    def _pair_product(self) -> moments.MomentReport:
        if "pair_product" not in self._cache:
            self._cache["pair_product"] = moments.expected_pair_product(
                1.0, self.spec_2d)
        return self._cache["pair_product"]

    def _mc(self) -> montecarlo.MomentEstimates:
        if "mc" not in self._cache:
            self._cache["mc"] = montecarlo.estimate_moments(self.mc_n, seed=1)
        return self._cache["mc"]

    # Checks, in the published order

    def check_01_side_density_normalization(self) -> CheckResult:
        t0 = time.perf_counter()
        res = integrate_1d(densities.side_density, 0.0, 2.0, self.spec_1d)
        dev = abs(res.value - 1.0)
        return _result("side_density_normalization", dev, 1e-10 * self.factor,
                       t0, f"integral={res.value!r}", extra_pass=res.converged)

    def check_02_side_mean(self) -> CheckResult:
        t0 = time.perf_counter()
        rep = moments.expected_side(1.0, self.spec_1d)
        return _result("side_mean", rep.deviation, 1e-10 * self.factor, t0,
                       f"value={rep.value!r} ref={rep.reference!r}",
                       extra_pass=rep.converged)

    def check_03_side_second_moment(self) -> CheckResult:
        t0 = time.perf_counter()
        rep = moments.even_moment_side(1, 1.0, self.spec_1d)
        return _result("side_second_moment", rep.deviation,
                       1e-10 * self.factor, t0,
                       f"value={rep.value!r} ref=1",
                       extra_pass=rep.converged)

    def check_04_pair_density_normalization(self) -> CheckResult:
        t0 = time.perf_counter()
        res = integrate_2d(lambda x, y: densities.pair_density(x, y),
                           (0.0, 2.0), (0.0, 2.0), self.spec_2d, self._kinks)
        dev = abs(res.value - 1.0)
        return _result("pair_density_normalization", dev, 1e-8 * self.factor,
                       t0, f"integral={res.value!r}", extra_pass=res.converged)

    def check_05_pair_product_mean(self) -> CheckResult:
        t0 = time.perf_counter()
        rep = self._pair_product()
        return _result("pair_product_mean", rep.deviation, 1e-8 * self.factor,
                       t0, f"value={rep.value!r} ref={rep.reference!r}",
                       extra_pass=rep.converged)

    def check_06_side_correlation(self) -> CheckResult:
        t0 = time.perf_counter()
        stats = moments.perimeter_stats(1.0, self.spec_2d,
                                        pair_product=self._pair_product())
        rep = stats["correlation"]
        return _result("side_correlation", rep.deviation, 1e-7 * self.factor,
                       t0, f"value={rep.value!r} ref={rep.reference!r}",
                       extra_pass=rep.converged)

    def check_07_perimeter_moments(self) -> CheckResult:
        t0 = time.perf_counter()
        stats = moments.perimeter_stats(1.0, self.spec_2d,
                                        pair_product=self._pair_product())
        dev2 = stats["second_moment"].deviation
        devv = stats["variance"].deviation
        passed = dev2 <= 6e-8 * self.factor and devv <= 1e-7 * self.factor
        return CheckResult(
            name="perimeter_moments",
            passed=passed,
            value=max(dev2, devv),
            target=1e-7 * self.factor,
            seconds=time.perf_counter() - t0,
            detail=(f"second_moment dev={dev2:.3e} (tol {6e-8 * self.factor:.0e}), "
                    f"variance dev={devv:.3e} (tol {1e-7 * self.factor:.0e})"),
        )

    def check_08_sq_pair_product_routes(self) -> CheckResult:
        t0 = time.perf_counter()
        quad_rep, exact_rep = moments.expected_sq_pair_product(1.0, self.spec_2d)
        exact_ok = moments.sq_pair_product_exact() == Fraction(13, 12)
        return _result(
            "sq_pair_product_routes", quad_rep.deviation, 1e-8 * self.factor,
            t0,
            f"quadrature={quad_rep.value!r}, exact 13/12 identity: {exact_ok}",
            extra_pass=exact_ok and quad_rep.converged)

    def check_09_pair_density_vs_subcase_oracle(self) -> CheckResult:
        t0 = time.perf_counter()
        worst = 0.0
        seen = set()
        for i in range(20):
            x = (i + 0.5) * 0.1
            for j in range(20):
                y = (j + 0.5) * 0.1
                hi, lo = max(x, y), min(x, y)
                if hi <= 1.0:
                    branch = "inside"
                elif hi + lo <= 2.0:
                    branch = "straddle"
                else:
                    branch = "outside"
                seen.add((x >= y, branch))
                d = abs(densities.pair_density(x, y)
                        - densities.pair_density_subcase_oracle(x, y))
                worst = max(worst, d)
        all_six = len(seen) == 6
        return _result("pair_density_vs_subcase_oracle", worst,
                       1e-8 * self.factor, t0,
                       f"20x20 grid, subcase combinations hit: {len(seen)}/6",
                       extra_pass=all_six)

    def check_10_fold_continuity(self) -> CheckResult:
        t0 = time.perf_counter()
        worst = 0.0
        for x in (1.05, 1.2, 1.5, 1.8):
            y = 2.0 - x
            worst = max(worst, abs(densities.phi(x, y) - densities.psi(x, y)))
        return _result("fold_continuity", worst, 1e-8 * self.factor, t0,
                       "phi vs psi on x + y = 2")

    def check_11_marginalization(self) -> CheckResult:
        t0 = time.perf_counter()
        worst = 0.0
        for x in (0.25, 0.75, 1.0, 1.5, 1.9):
            splits = tuple(p for p in (x, 2.0 - x) if 0.0 < p < 2.0)
            spec = IntegrationSpec(abs_tol=1e-11 * self.factor,
                                   rel_tol=1e-9 * self.factor,
                                   split_points=splits)
            res = integrate_1d(lambda y: densities.pair_density(x, y),
                               0.0, 2.0, spec)
            worst = max(worst, abs(res.value - densities.side_density(x)))
        return _result("marginalization", worst, 1e-7 * self.factor, t0,
                       "integral of pair_density over y vs side_density")

    def check_12_charfun_routes(self) -> CheckResult:
        t0 = time.perf_counter()
        worst = 0.0
        ok = True
        for t in (0.25, 0.5, 1.0, 2.0, 5.0, 10.0):
            vals = []
            for route in ("closed", "density", "double_integral"):
                res = charfun.charfun_a2(t, route, self.spec_1d)
                ok = ok and res.converged
                vals.append(res.value)
            for i in range(3):
                for j in range(i + 1, 3):
                    worst = max(worst, abs(vals[i] - vals[j]))
        return _result("charfun_routes", worst, 1e-8 * self.factor, t0,
                       "closed vs density vs double integral", extra_pass=ok)

    def check_13_h_series_vs_closed(self) -> CheckResult:
        t0 = time.perf_counter()
        worst = 0.0
        for t in np.linspace(-3.0, 3.0, 25):
            worst = max(worst, abs(charfun.h_series(float(t))
                                   - charfun.h_closed(float(t))))
        coeffs_ok = all(
            charfun.h_series_coefficient(n)
            == Fraction(catalan(n), math.factorial(n))
            for n in range(21))
        return _result("h_series_vs_closed", worst, 1e-12 * self.factor, t0,
                       f"25-point grid on [-3, 3]; exact coefficients "
                       f"n<=20: {coeffs_ok}", extra_pass=coeffs_ok)

    def check_14_inner_integral_routes(self) -> CheckResult:
        t0 = time.perf_counter()
        worst = 0.0
        ok = True
        for t in (0.5, 1.0, 2.0, 5.0):
            for v in (0.1, 0.5, 0.9, 1.0):
                res = charfun.inner_integral_quad(t, v, self.spec_1d)
                ok = ok and res.converged
                worst = max(worst,
                            abs(charfun.inner_integral_series(t, v) - res.value))
        return _result("inner_integral_routes", worst, 1e-10 * self.factor,
                       t0, "Bessel series vs direct quadrature, 4x4 grid",
                       extra_pass=ok)

    def check_15_monte_carlo(self) -> CheckResult:
        t0 = time.perf_counter()
        est = self._mc()
        targets = [
            ("mean_side", moments.E_SIDE_UNIT),
            ("mean_pair_product", moments.E_PAIR_PRODUCT_UNIT),
            ("var_perimeter", moments.VAR_PERIM_UNIT),
            ("mean_sq_pair_product", float(Fraction(13, 12))),
            ("corr_sides", moments.CORR_SIDES),
        ]
        worst_z = 0.0
        for field, ref in targets:
            e: montecarlo.Estimate = getattr(est, field)
            worst_z = max(worst_z, abs(e.value - ref) / e.std_error)
        other = montecarlo.estimate_moments(self.mc_n, seed=1, chunks=5)
        fields = ("mean_side", "mean_pair_product", "mean_perimeter",
                  "var_perimeter", "mean_sq_pair_product", "corr_sides")
        bitwise = all(getattr(est, f) == getattr(other, f) for f in fields)
        return _result("monte_carlo", worst_z, 3.0, t0,
                       f"n={self.mc_n}, worst |z|={worst_z:.2f}, "
                       f"chunk-count invariance: {bitwise}",
                       extra_pass=bitwise)

    def check_16_charfun_mixed_moment(self) -> CheckResult:
        t0 = time.perf_counter()
        est = charfun.mixed_sq_pair_moment(delta=0.005)
        dev = abs(est - 13.0 / 12.0)
        return _result("charfun_mixed_moment", dev, 1e-4 * self.factor, t0,
                       f"central difference gives {est!r}")

    def checks(self) -> Sequence[Callable[[], CheckResult]]:
        return (
            self.check_01_side_density_normalization,
            self.check_02_side_mean,
            self.check_03_side_second_moment,
            self.check_04_pair_density_normalization,
            self.check_05_pair_product_mean,
            self.check_06_side_correlation,
            self.check_07_perimeter_moments,
            self.check_08_sq_pair_product_routes,
            self.check_09_pair_density_vs_subcase_oracle,
            self.check_10_fold_continuity,
            self.check_11_marginalization,
            self.check_12_charfun_routes,
            self.check_13_h_series_vs_closed,
            self.check_14_inner_integral_routes,
            self.check_15_monte_carlo,
            self.check_16_charfun_mixed_moment,
        )

    def check_names(self) -> List[str]:
        return [fn.__name__.split("check_", 1)[1].split("_", 1)[1]
                for fn in self.checks()]

    def run(self, names: Optional[Sequence[str]] = None) -> List[CheckResult]:
        """Run all checks, or the named subset, in order.

        Args:
            names: check names as listed by check_names(); None runs all.
        """
        selected = self.checks()
        if names is not None:
            known = self.check_names()
            unknown = [n for n in names if n not in known]
            if unknown:
                raise DomainError(
                    f"unknown checks {unknown}; available: {known}")
            selected = [fn for fn, name in zip(self.checks(), known)
                        if name in names]
        return [fn() for fn in selected]


def format_table(results: Sequence[CheckResult]) -> str:
    """Fixed-width pass/fail table, one line per check."""
    width = max((len(r.name) for r in results), default=4)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{status}  {r.name:<{width}}  measured={r.value:.3e}  "
            f"tol={r.target:.0e}  {r.seconds:6.2f}s  {r.detail}")
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    return "\n".join(lines)
