"""The acceptance gate: every published tolerance, exercised end to end.

Each test runs one named cross-check from the verification suite at the
full level and prints a single PASS/FAIL line with the measured figure
against its tolerance (run with -s to see them).  The suite object is
shared across the session so expensive intermediates (the pair-product
quadrature, the Monte Carlo sweep) are computed once.
"""

import pytest

from disktri.verification import AcceptanceSuite


@pytest.fixture(scope="session")
def suite():
    return AcceptanceSuite(level="full")


def _run(suite, name):
    (res,) = suite.run([name])
    status = "PASS" if res.passed else "FAIL"
    print(f"{status} - {res.name}: measured={res.value:.3e} "
          f"tolerance={res.target:.0e} ({res.seconds:.2f}s) {res.detail}")
    assert res.passed, (
        f"{res.name}: measured {res.value!r} vs tolerance {res.target!r}; "
        f"{res.detail}")


def test_01_side_density_normalization(suite):
    _run(suite, "side_density_normalization")


def test_02_side_mean(suite):
    _run(suite, "side_mean")


def test_03_side_second_moment(suite):
    _run(suite, "side_second_moment")


def test_04_pair_density_normalization(suite):
    _run(suite, "pair_density_normalization")


def test_05_pair_product_mean(suite):
    _run(suite, "pair_product_mean")


def test_06_side_correlation(suite):
    _run(suite, "side_correlation")


def test_07_perimeter_moments(suite):
    _run(suite, "perimeter_moments")


def test_08_sq_pair_product_routes(suite):
    _run(suite, "sq_pair_product_routes")


def test_09_pair_density_vs_subcase_oracle(suite):
    _run(suite, "pair_density_vs_subcase_oracle")


def test_10_fold_continuity(suite):
    _run(suite, "fold_continuity")


def test_11_marginalization(suite):
    _run(suite, "marginalization")


def test_12_charfun_routes(suite):
    _run(suite, "charfun_routes")


def test_13_h_series_vs_closed(suite):
    _run(suite, "h_series_vs_closed")


def test_14_inner_integral_routes(suite):
    _run(suite, "inner_integral_routes")


def test_15_monte_carlo(suite):
    _run(suite, "monte_carlo")


def test_16_charfun_mixed_moment(suite):
    _run(suite, "charfun_mixed_moment")


def test_every_check_is_covered(suite):
    # the sixteen tests above must stay in lockstep with the suite
    import re
    names = suite.check_names()
    covered = []
    with open(__file__) as fh:
        for line in fh:
            m = re.search(r'_run\(suite, "([a-z_0-9]+)"\)', line)
            if m:
                covered.append(m.group(1))
    assert covered == names
