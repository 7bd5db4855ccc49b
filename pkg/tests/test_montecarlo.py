import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from disktri.core import DomainError
from disktri.densities import pair_density
from disktri.montecarlo import (
    BLOCK_SIZE,
    RngStream,
    estimate_moments,
    pair_histogram,
    point_from_uniforms,
    sample_point,
    sample_triangle,
)

E_SIDE = 128.0 / (45.0 * math.pi)


class TestPointFromUniforms:
    def test_quarter_half_lands_on_negative_axis(self):
        x, y = point_from_uniforms(0.25, 0.5)
        assert x == pytest.approx(-0.5, abs=1e-15)
        assert y == pytest.approx(0.0, abs=1e-15)

    def test_zero_radius_driver_is_the_center(self):
        assert point_from_uniforms(0.0, 0.37) == (0.0, 0.0)

    def test_unit_drivers_hit_the_rim(self):
        p = point_from_uniforms(1.0, 0.0)
        assert p == (1.0, 0.0)

    def test_radius_scales_coordinates(self):
        p1 = point_from_uniforms(0.6, 0.3)
        p3 = point_from_uniforms(0.6, 0.3, radius=3.0)
        assert p3[0] == pytest.approx(3.0 * p1[0], rel=1e-15)
        assert p3[1] == pytest.approx(3.0 * p1[1], rel=1e-15)

    @pytest.mark.parametrize("u,v", [(-0.1, 0.5), (1.1, 0.5), (0.5, -0.01), (0.5, 1.5)])
    def test_rejects_drivers_outside_unit_square(self, u, v):
        with pytest.raises(DomainError):
            point_from_uniforms(u, v)

    @given(u=st.floats(0.0, 1.0), v=st.floats(0.0, 1.0),
           radius=st.floats(0.5, 4.0))
    def test_stays_inside_the_disk(self, u, v, radius):
        x, y = point_from_uniforms(u, v, radius)
        assert math.hypot(x, y) <= radius * (1.0 + 1e-12)


class TestRngStream:
    @pytest.mark.parametrize("seed,idx", [(-1, 0), (0, -1), (1.5, 0), (0, 2.5)])
    def test_rejects_bad_identity(self, seed, idx):
        with pytest.raises(DomainError):
            RngStream(seed, idx)

    def test_generator_is_a_fresh_identical_stream_each_time(self):
        s = RngStream(123, 4)
        d1 = s.generator().random(8)
        d2 = s.generator().random(8)
        assert np.array_equal(d1, d2)

    def test_stream_index_changes_the_draws(self):
        d0 = RngStream(5, 0).generator().random(8)
        d1 = RngStream(5, 1).generator().random(8)
        assert not np.array_equal(d0, d1)


class TestSampling:
    def test_triangle_frozen_draw(self):
        tri = sample_triangle(RngStream(42, 0))
        assert tri.a == pytest.approx(0.2971630920199595, rel=1e-12)
        assert tri.b == pytest.approx(0.31008304137091447, rel=1e-12)
        assert tri.c == pytest.approx(0.04876577349391886, rel=1e-12)

    def test_point_frozen_draw(self):
        x, y = sample_point(RngStream(7, 3), radius=2.0)
        assert x == pytest.approx(0.623970819414214, rel=1e-12)
        assert y == pytest.approx(0.37824032421465903, rel=1e-12)

    def test_triangle_matches_manual_reconstruction(self):
        # six uniforms, two per vertex in vertex order, side a opposite
        # the first vertex
        u = RngStream(42, 0).generator().random(6)
        pts = [point_from_uniforms(u[0], u[1]), point_from_uniforms(u[2], u[3]),
               point_from_uniforms(u[4], u[5])]
        tri = sample_triangle(RngStream(42, 0))
        assert tri.a == math.dist(pts[1], pts[2])
        assert tri.b == math.dist(pts[2], pts[0])
        assert tri.c == math.dist(pts[0], pts[1])

    def test_triangle_inequality_and_range(self):
        gen = RngStream(2024, 0).generator()
        for _ in range(300):
            a, b, c = sample_triangle(gen)
            assert 0.0 <= a <= 2.0 and 0.0 <= b <= 2.0 and 0.0 <= c <= 2.0
            assert a <= b + c + 1e-12
            assert b <= a + c + 1e-12
            assert c <= a + b + 1e-12

    def test_sides_scale_with_radius(self):
        t1 = sample_triangle(RngStream(9, 0))
        t2 = sample_triangle(RngStream(9, 0), radius=2.0)
        assert t2.a == pytest.approx(2.0 * t1.a, rel=1e-15)
        assert t2.b == pytest.approx(2.0 * t1.b, rel=1e-15)
        assert t2.c == pytest.approx(2.0 * t1.c, rel=1e-15)


def _estimates_equal(e1, e2):
    fields = ("mean_side", "mean_pair_product", "mean_perimeter",
              "var_perimeter", "mean_sq_pair_product", "corr_sides")
    return all(getattr(e1, f) == getattr(e2, f) for f in fields)


class TestEstimateMoments:
    def test_frozen_mean_side(self):
        est = estimate_moments(50_000, seed=11)
        assert est.mean_side.value == pytest.approx(
            0.9075446756977379, rel=1e-12)
        assert est.mean_side.std_error == pytest.approx(
            0.0019020102213960898, rel=1e-9)
        assert est.n == 50_000 and est.seed == 11 and est.chunks == 1

    def test_chunk_count_never_changes_the_numbers(self):
        base = estimate_moments(150_000, seed=5, chunks=1)
        for chunks in (2, 3, 7):
            other = estimate_moments(150_000, seed=5, chunks=chunks)
            assert _estimates_equal(base, other)
            assert other.chunks == chunks

    def test_partial_last_block(self):
        est = estimate_moments(BLOCK_SIZE + 1, seed=3)
        assert est.n == BLOCK_SIZE + 1
        assert math.isfinite(est.mean_side.std_error)
        assert est.mean_side.std_error > 0.0

    def test_estimates_agree_with_theory_at_five_sigma(self):
        est = estimate_moments(200_000, seed=3)
        targets = [
            (est.mean_side, E_SIDE),
            (est.mean_pair_product, 0.8378520652962219),
            (est.mean_perimeter, 3.0 * E_SIDE),
            (est.var_perimeter, 0.6491289571281668),
            (est.mean_sq_pair_product, 13.0 / 12.0),
            (est.corr_sides, 0.1002980835659002),
        ]
        for got, want in targets:
            assert got.std_error > 0.0
            assert abs(got.value - want) < 5.0 * got.std_error

    def test_standard_error_shrinks_like_root_n(self):
        se_small = estimate_moments(20_000, seed=21).mean_side.std_error
        se_large = estimate_moments(80_000, seed=21).mean_side.std_error
        assert 1.7 < se_small / se_large < 2.3

    def test_mean_scales_with_radius(self):
        e1 = estimate_moments(5_000, seed=9)
        e2 = estimate_moments(5_000, seed=9, radius=2.0)
        assert e2.mean_side.value == pytest.approx(
            2.0 * e1.mean_side.value, rel=1e-14)
        assert e2.var_perimeter.value == pytest.approx(
            4.0 * e1.var_perimeter.value, rel=1e-12)
        assert e2.corr_sides.value == pytest.approx(
            e1.corr_sides.value, rel=1e-12)

    @pytest.mark.parametrize("kwargs", [
        dict(n=1, seed=0), dict(n=100.5, seed=0), dict(n=100, seed=-1),
        dict(n=100, seed=0, chunks=0),
    ])
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            estimate_moments(**kwargs)


class TestPairHistogram:
    def test_counts_and_edges_shape(self):
        counts, edges = pair_histogram(10_000, seed=1, bins=8)
        assert counts.shape == (8, 8)
        assert counts.dtype == np.int64
        assert counts.sum() == 10_000
        assert edges.shape == (9,)
        assert edges[0] == 0.0 and edges[-1] == 2.0

    def test_edges_follow_radius(self):
        _, edges = pair_histogram(1_000, seed=1, bins=4, radius=1.5)
        assert edges[-1] == 3.0

    def test_chunks_do_not_change_counts(self):
        c1, _ = pair_histogram(140_000, seed=6, bins=10, chunks=1)
        c4, _ = pair_histogram(140_000, seed=6, bins=10, chunks=4)
        assert np.array_equal(c1, c4)

    def test_near_symmetric_in_the_two_sides(self):
        n = 200_000
        counts, _ = pair_histogram(n, seed=8, bins=10)
        asym = np.abs(counts - counts.T).sum() / n
        # the two sides are exchangeable, so the asymmetry is pure noise
        assert asym < 8.0 * 10.0 / math.sqrt(n)

    def test_matches_the_closed_form_density(self):
        n, bins = 1_000_000, 20
        counts, edges = pair_histogram(n, seed=12, bins=bins)
        width = edges[1] - edges[0]
        mids = 0.5 * (edges[:-1] + edges[1:])
        l1 = 0.0
        for i, x in enumerate(mids):
            for j, y in enumerate(mids):
                model = pair_density(x, y) * width * width
                l1 += abs(counts[i, j] / n - model)
        assert l1 < 4.0 * bins / math.sqrt(n)

    def test_validation(self):
        with pytest.raises(DomainError):
            pair_histogram(1_000, seed=1, bins=0)
        with pytest.raises(DomainError):
            pair_histogram(1, seed=1, bins=4)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_triangle_sides_always_in_range(seed):
    tri = sample_triangle(RngStream(seed, 0))
    assert all(0.0 < s < 2.0 for s in tri)
