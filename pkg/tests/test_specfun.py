import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catoverlap.specfun import (
    bessel_j0,
    j0_integral_reference,
    j0_root,
    log_factorial,
)

FIRST_ROOT = 2.404825557695773


def test_j0_at_zero():
    assert bessel_j0(0.0) == 1.0


def test_j0_first_root_value():
    assert abs(bessel_j0(FIRST_ROOT)) < 1e-12


def test_j0_matches_quadrature_at_6():
    assert bessel_j0(6.0) == pytest.approx(j0_integral_reference(6.0), abs=1e-10)


def test_j0_quadrature_identity_dense():
    worst = max(
        abs(bessel_j0(x) - j0_integral_reference(x))
        for x in [k * 0.25 for k in range(241)]
    )
    assert worst <= 1e-10


def test_j0_series_asymptotic_crossover_consistency():
    # both branches must agree with the quadrature oracle around the crossover
    for x in (15.0, 15.9, 16.0, 16.1, 17.0):
        assert bessel_j0(x) == pytest.approx(j0_integral_reference(x), abs=1e-12)


def test_j0_rejects_non_finite():
    with pytest.raises(ValueError):
        bessel_j0(math.nan)
    with pytest.raises(ValueError):
        bessel_j0(math.inf)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-60.0, max_value=60.0, allow_nan=False))
def test_j0_parity_and_bound(x):
    assert bessel_j0(-x) == bessel_j0(x)
    assert abs(bessel_j0(x)) <= 1.0 + 1e-15


def test_j0_root_first():
    root = j0_root(1)
    assert root.value == pytest.approx(FIRST_ROOT, abs=1e-10)
    assert root.residual <= 1e-12
    assert root.bracket_width <= 1e-12


def test_j0_root_second_bracket():
    root = j0_root(2)
    assert 5.0 < root.value < 6.0
    assert root.residual <= 1e-12


def test_j0_roots_increasing_with_pi_spacing():
    roots = [j0_root(k).value for k in range(1, 41)]
    assert all(b > a for a, b in zip(roots, roots[1:]))
    spacings = [b - a for a, b in zip(roots, roots[1:])]
    for k, spacing in enumerate(spacings, start=2):
        if k >= 10:
            assert abs(spacing - math.pi) < 0.05


def test_j0_root_residuals_and_sign_change():
    for k in range(1, 41):
        root = j0_root(k)
        assert root.residual <= 1e-12
        assert bessel_j0(root.value - 1e-9) * bessel_j0(root.value + 1e-9) < 0.0


@pytest.mark.parametrize("bad", [0, 41, -3])
def test_j0_root_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        j0_root(bad)


def test_log_factorial_small_values():
    assert log_factorial(0) == 0.0
    assert log_factorial(1) == 0.0
    assert log_factorial(10) == pytest.approx(math.log(3628800), abs=1e-13)


def test_log_factorial_against_exact_integer_factorial():
    # moderate m: absolute agreement; large m: relative (representation limit)
    for m in (2, 5, 17, 60, 120, 170):
        assert log_factorial(m) == pytest.approx(
            math.log(math.factorial(m)), abs=1e-12
        )
    for m in (500, 1999, 5000):
        assert log_factorial(m) == pytest.approx(
            math.log(math.factorial(m)), rel=1e-14
        )


def test_log_factorial_ratio_identity():
    for m in (1, 2, 10, 137, 800, 2500, 5000):
        ratio = math.exp(log_factorial(m) - log_factorial(m - 1))
        assert ratio == pytest.approx(m, rel=1e-10)


def test_log_factorial_rejects_negative():
    with pytest.raises(ValueError):
        log_factorial(-1)
