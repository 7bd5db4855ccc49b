import math

import pytest
from hypothesis import given, settings, strategies as st

from disktri.core import (
    ConvergenceError,
    DomainError,
    NumericDomainError,
    RegionError,
)
from disktri.densities import (
    ClampPolicy,
    conditional_side_density,
    inner_kernel,
    pair_density,
    pair_density_subcase_oracle,
    phi,
    psi,
    side_density,
    side_sq_density,
)
from disktri.quadrature import IntegrationSpec, integrate_1d


class TestSideDensity:
    def test_support_edges(self):
        assert side_density(0.0) == 0.0
        assert side_density(2.0) == 0.0
        assert side_density(-0.5) == 0.0
        assert side_density(2.5) == 0.0

    def test_value_at_one_against_hand_formula(self):
        # f(1) = (4/pi) arccos(1/2) - sqrt(3)/pi = 4/3 - sqrt(3)/pi
        expected = 4.0 / 3.0 - math.sqrt(3.0) / math.pi
        assert side_density(1.0) == pytest.approx(expected, abs=1e-15)
        assert side_density(1.0) == pytest.approx(0.7820044379115413, abs=1e-13)

    def test_normalization(self):
        res = integrate_1d(side_density, 0.0, 2.0)
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_radius_rescaling(self):
        # f_R(x) = f_1(x/R) / R
        assert side_density(2.4, 2.0) == pytest.approx(
            side_density(1.2) / 2.0, abs=1e-15)

    @given(x=st.floats(0.0, 2.0))
    def test_nonnegative(self, x):
        assert side_density(x) >= 0.0


class TestSideSqDensity:
    def test_support_edges(self):
        assert side_sq_density(0.0) == 0.0
        assert side_sq_density(4.0, 1.0) == 0.0

    def test_change_of_variables(self):
        # g(x) = f(sqrt(x)) / (2 sqrt(x))
        for x in (0.2, 1.0, 2.7, 3.9):
            s = math.sqrt(x)
            assert side_sq_density(x) == pytest.approx(
                side_density(s) / (2.0 * s), abs=1e-15)
        assert side_sq_density(1.0) == pytest.approx(
            0.39100221895577064, abs=1e-13)

    def test_normalization(self):
        res = integrate_1d(side_sq_density, 0.0, 4.0)
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_finite_limit_at_zero(self):
        # g(0+) = 1: the sqrt in the change of variables cancels
        assert side_sq_density(1e-12) == pytest.approx(1.0, abs=1e-5)


class TestConditionalSideDensity:
    def test_full_regime(self):
        assert conditional_side_density(0.3, 0.2) == pytest.approx(0.6, abs=1e-15)

    def test_vanishes_beyond_reach(self):
        assert conditional_side_density(1.4, 0.4) == 0.0
        assert conditional_side_density(0.0, 0.4) == 0.0

    def test_arc_regime_against_hand_formula(self):
        x, t = 1.2, 0.5
        expected = (2.0 * x / math.pi) * math.acos(
            (t * t + x * x - 1.0) / (2.0 * t * x))
        assert conditional_side_density(x, t) == pytest.approx(expected, abs=1e-15)
        assert conditional_side_density(x, t) == pytest.approx(
            0.73200490406141984, abs=1e-13)

    def test_continuous_across_regime_boundary(self):
        # at x = R - t the arccos argument reaches -1, so the arc regime
        # meets the linear regime continuously but only at a sqrt rate:
        # arccos(-1 + c d) ~ pi - sqrt(2 c d)
        t = 0.35
        x = 1.0 - t
        assert conditional_side_density(x, t) == pytest.approx(
            2.0 * x, abs=1e-12)
        gap = [abs(conditional_side_density(x + d, t) - 2.0 * x)
               for d in (1e-6, 1e-8, 1e-10)]
        assert gap[0] < 2e-3
        # each 100x shrink in d shrinks the gap by about 10x
        assert 5.0 < gap[0] / gap[1] < 20.0
        assert 5.0 < gap[1] / gap[2] < 20.0

    def test_center_placement_is_the_pure_linear_law(self):
        assert conditional_side_density(0.7, 0.0) == pytest.approx(1.4, abs=1e-15)
        assert conditional_side_density(1.0, 0.0) == 0.0

    @pytest.mark.parametrize("t", [-0.1, 1.0, 1.5])
    def test_vertex_radius_domain(self, t):
        with pytest.raises(DomainError):
            conditional_side_density(0.5, t)

    @pytest.mark.parametrize("x", [0.5, 1.0, 1.5])
    def test_mixture_over_vertex_radius_recovers_marginal(self, x):
        # integral of f(x | t) 2t dt over [0, 1] is the side density
        splits = tuple(p for p in (abs(1.0 - x),) if 0.0 < p < 1.0)
        spec = IntegrationSpec(split_points=splits)
        res = integrate_1d(
            lambda t: conditional_side_density(x, t) * 2.0 * t, 0.0, 1.0, spec)
        assert res.value == pytest.approx(side_density(x), abs=1e-9)

    def test_radius_rescaling(self):
        assert conditional_side_density(2.4, 1.0, 2.0) == pytest.approx(
            conditional_side_density(1.2, 0.5) / 2.0, abs=1e-15)


class TestInnerKernel:
    def test_frozen_value(self):
        assert inner_kernel(1.0, 1.0, 0.0) == pytest.approx(
            0.76219006253915525, abs=1e-12)

    def test_empty_interval(self):
        assert inner_kernel(0.7, 0.9, 1.0) == 0.0

    def test_symmetric_in_x_and_y(self):
        a = inner_kernel(1.3, 0.6, 0.4)
        b = inner_kernel(0.6, 1.3, 0.4)
        assert a == pytest.approx(b, abs=1e-15)

    def test_radius_rescaling(self):
        # the kernel scales like R^2
        a = inner_kernel(2.0, 2.0, 0.0, radius=2.0)
        b = inner_kernel(1.0, 1.0, 0.0)
        assert a == pytest.approx(4.0 * b, abs=1e-12)

    def test_monotone_in_lower_limit(self):
        # integrand is nonnegative, so shrinking the interval shrinks it
        vals = [inner_kernel(1.0, 1.0, lo) for lo in (0.0, 0.3, 0.6, 0.9)]
        assert all(v0 > v1 for v0, v1 in zip(vals, vals[1:]))
        assert all(v > 0.0 for v in vals)

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            inner_kernel(0.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            inner_kernel(1.0, 2.5, 0.0)
        with pytest.raises(DomainError):
            inner_kernel(1.0, 1.0, -0.1)
        with pytest.raises(DomainError):
            inner_kernel(1.0, 1.0, 1.1)

    def test_wild_arccos_argument_is_an_error_not_a_clamp(self):
        # lower = 0 with x far from the rim sends the arccos argument to
        # infinity as t -> 0; that must surface, not silently clamp
        with pytest.raises(NumericDomainError) as info:
            inner_kernel(0.5, 0.5, 0.0)
        assert abs(info.value.value) > 1.0 + 1e-3

    def test_clamp_policy_validation(self):
        with pytest.raises(DomainError):
            ClampPolicy(slack=0.0)
        with pytest.raises(DomainError):
            ClampPolicy(slack=0.1)

    def test_unreachable_tolerance_raises_convergence_error(self):
        with pytest.raises(ConvergenceError) as info:
            inner_kernel(1.0, 1.0, 0.0,
                         spec=IntegrationSpec(abs_tol=1e-300, rel_tol=1e-300))
        assert info.value.partial == pytest.approx(0.76219006253915525,
                                                   abs=1e-12)


class TestPhiPsi:
    def test_phi_frozen_value(self):
        assert phi(0.8, 0.5) == pytest.approx(0.59290349369128787, abs=1e-12)

    def test_psi_frozen_value(self):
        assert psi(1.5, 0.7) == pytest.approx(0.28121702861670267, abs=1e-12)

    def test_phi_rejects_the_wrong_region(self):
        with pytest.raises(RegionError):
            phi(0.5, 0.8)
        with pytest.raises(RegionError):
            phi(1.5, 0.9)

    def test_psi_rejects_the_wrong_region(self):
        with pytest.raises(RegionError):
            psi(0.8, 0.5)
        with pytest.raises(RegionError):
            psi(0.7, 1.5)

    @pytest.mark.parametrize("x", [1.05, 1.2, 1.5, 1.8])
    def test_fold_continuity(self, x):
        y = 2.0 - x
        assert abs(phi(x, y) - psi(x, y)) < 1e-8

    def test_phi_vanishing_edges(self):
        assert phi(0.5, 0.0) == 0.0
        assert phi(0.0, 0.0) == 0.0

    def test_psi_vanishes_at_the_far_corner(self):
        assert psi(2.0, 1.7) == 0.0

    def test_phi_handles_the_rim_distance_singularity(self):
        # y = R makes (R-y)^2 arccos(...) a 0 * inf product that must
        # resolve to 0; the point is interior to the support
        val = phi(1.0, 1.0)
        assert val == pytest.approx(0.61780799437515728, abs=1e-12)

    def test_diagonal_values_match_between_formulas(self):
        # on y = x below the fold the bracket reduces to 4x^2(1-x)^2/R^6
        x = 0.6
        kern = inner_kernel(x, x, 1.0 - x)
        expected = 4.0 * x * x * (1.0 - x) ** 2 \
            + (8.0 * x * x / math.pi ** 2) * kern
        assert phi(x, x) == pytest.approx(expected, abs=1e-13)


class TestPairDensity:
    def test_frozen_center_value(self):
        assert pair_density(1.0, 1.0) == pytest.approx(
            0.61780799437515728, abs=1e-12)

    def test_out_of_support_is_zero(self):
        assert pair_density(2.1, 0.5) == 0.0
        assert pair_density(-0.1, 0.5) == 0.0
        assert pair_density(0.5, 2.4) == 0.0

    def test_symmetry_is_exact_by_dispatch(self):
        assert pair_density(0.3, 0.5) == pair_density(0.5, 0.3)
        assert pair_density(1.7, 0.6) == pair_density(0.6, 1.7)

    def test_radius_rescaling(self):
        assert pair_density(0.6, 0.8, 2.0) == pytest.approx(
            pair_density(0.3, 0.4) / 4.0, abs=1e-15)

    def test_nonnegative_on_a_grid(self):
        for i in range(41):
            for j in range(41):
                x = 2.0 * i / 40.0
                y = 2.0 * j / 40.0
                assert pair_density(x, y) >= 0.0

    @pytest.mark.parametrize("x", [0.75, 1.5])
    def test_marginalizes_to_side_density(self, x):
        splits = tuple(p for p in (x, 2.0 - x) if 0.0 < p < 2.0)
        res = integrate_1d(lambda y: pair_density(x, y), 0.0, 2.0,
                           IntegrationSpec(split_points=splits))
        assert res.value == pytest.approx(side_density(x), abs=1e-7)


class TestSubcaseOracle:
    # each point exercises one of the six conditional-density subcases
    POINTS = [
        (0.75, 0.25), (1.45, 0.35), (1.55, 0.95),
        (0.25, 0.75), (0.35, 1.45), (0.95, 1.55),
    ]

    @pytest.mark.parametrize("x,y", POINTS)
    def test_agrees_with_closed_forms(self, x, y):
        assert pair_density_subcase_oracle(x, y) == pytest.approx(
            pair_density(x, y), abs=1e-9)

    def test_oracle_frozen_values(self):
        assert pair_density_subcase_oracle(0.8, 0.5) == pytest.approx(
            0.59290349369128787, abs=1e-10)
        assert pair_density_subcase_oracle(1.5, 0.7) == pytest.approx(
            0.28121702861670267, abs=1e-10)

    def test_rejects_out_of_support(self):
        with pytest.raises(DomainError):
            pair_density_subcase_oracle(2.3, 0.5)

    def test_radius_rescaling(self):
        assert pair_density_subcase_oracle(1.6, 1.0, 2.0) == pytest.approx(
            pair_density_subcase_oracle(0.8, 0.5) / 4.0, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(x=st.floats(0.01, 1.99), y=st.floats(0.01, 1.99))
def test_pair_density_is_finite_and_nonnegative(x, y):
    v = pair_density(x, y)
    assert v >= 0.0
    assert math.isfinite(v)
