import cmath
import math

import numpy as np
import pytest

from catoverlap.overlap import exact_overlap, first_orthogonality_displacement
from catoverlap.phasespace import (
    COVERAGE_MARGIN,
    CoverageError,
    FieldKind,
    GridSpec,
    cross_wigner_kernel,
    husimi_q,
    husimi_q_at,
    wigner,
    wigner_overlap_integral,
)
from catoverlap.states import CatState, components

RNG = np.random.default_rng(20260810)


def polar(mag, ang):
    return mag * cmath.exp(1j * ang)


def small_grid(points, nx=256):
    return GridSpec.covering(points, nx=nx, np_=nx)


# ---------------------------------------------------------------- Husimi-Q


def test_single_component_q_is_gaussian_bump():
    alpha = 1.5 + 0.5j
    cat = CatState(n=1, alpha=alpha)
    assert husimi_q_at(cat, np.array(alpha)) == pytest.approx(1 / math.pi, rel=1e-12)
    for _ in range(10):
        gamma = complex(RNG.normal(scale=2), RNG.normal(scale=2)) + alpha
        expected = math.exp(-abs(gamma - alpha) ** 2) / math.pi
        assert husimi_q_at(cat, np.array(gamma)) == pytest.approx(
            expected, rel=1e-10, abs=1e-300
        )


def test_q_field_positive_bounded_normalized():
    cat = CatState(n=3, alpha=2 + 0j)
    field = husimi_q(cat, small_grid(components(cat), nx=512))
    assert field.kind is FieldKind.HUSIMI_Q
    assert field.values.min() >= -1e-14
    assert field.values.max() <= 1 / math.pi + 1e-12
    assert field.norm_estimate == pytest.approx(1.0, abs=1e-3)


def test_q_ring_of_touching_lobes():
    # frontier geometry: n lobes along the ring at the Q-peak radius
    cat = CatState(n=20, alpha=9.9 + 0j)
    radii = np.linspace(0.8 * 9.9, 1.2 * 9.9, 300)
    radial = husimi_q_at(cat, radii * np.exp(2j * math.pi / 20))
    peak_radius = radii[int(np.argmax(radial))]
    angles = np.linspace(0.0, 2 * math.pi, 32 * 20, endpoint=False)
    profile = husimi_q_at(cat, peak_radius * np.exp(1j * angles))
    left, right = np.roll(profile, 1), np.roll(profile, -1)
    assert int(np.sum((profile > left) & (profile >= right))) == 20


# ------------------------------------------------------------------ Wigner


def test_single_component_wigner_gaussian():
    alpha = 1 + 1j
    cat = CatState(n=1, alpha=alpha)
    spec = small_grid([alpha], nx=384)
    field = wigner(cat, spec)
    assert field.kind is FieldKind.WIGNER
    assert field.norm_estimate == pytest.approx(1.0, abs=1e-3)
    gamma = spec.gamma_grid()
    expected = (2 / math.pi) * np.exp(-2 * np.abs(gamma - alpha) ** 2)
    assert np.max(np.abs(field.values - expected)) <= 1e-12


def test_pair_wigner_lobes_and_interference():
    cat = CatState(n=2, alpha=3 + 0j)
    spec = small_grid(components(cat), nx=512)
    field = wigner(cat, spec)
    # central interference fringe peaks at the global maximum 2/pi
    center = husimi_center_value(field, spec)
    assert center == pytest.approx(2 / math.pi, abs=1e-6)
    assert field.values.min() < -0.5
    # coherent lobes at gamma = +/-3, i.e. (x, p) = (+/-3 sqrt(2), 0)
    lobe = value_at(field, spec, 3 * math.sqrt(2), 0.0)
    assert lobe == pytest.approx(1 / math.pi, abs=1e-3)
    assert field.norm_estimate == pytest.approx(1.0, abs=1e-3)


def husimi_center_value(field, spec):
    return value_at(field, spec, 0.0, 0.0)


def value_at(field, spec, x, p):
    i = int(np.argmin(np.abs(spec.x_coords() - x)))
    j = int(np.argmin(np.abs(spec.p_coords() - p)))
    return float(field.values[i, j])


def test_four_component_wigner_central_chessboard():
    cat = CatState(n=4, alpha=3 + 0j)
    spec = small_grid(components(cat), nx=512)
    field = wigner(cat, spec)
    xs, ps = spec.x_coords(), spec.p_coords()
    central = field.values[np.ix_(np.abs(xs) < 1.5, np.abs(ps) < 1.5)]
    assert central.max() > 0.3
    assert central.min() < -0.3


def test_cross_wigner_kernel_diagonal_reduction():
    for _ in range(10):
        a = complex(RNG.normal(scale=2), RNG.normal(scale=2))
        gamma = complex(RNG.normal(scale=2), RNG.normal(scale=2))
        expected = (2 / math.pi) * math.exp(-2 * abs(gamma - a) ** 2)
        got = complex(cross_wigner_kernel(np.array(gamma), a, a))
        assert got.real == pytest.approx(expected, rel=1e-12, abs=1e-300)
        assert abs(got.imag) <= 1e-15 * max(1.0, expected)


def test_cross_wigner_kernel_trace():
    from catoverlap.states import coherent_overlap

    for a, b in [(1 + 0.5j, -0.5 + 1j), (2 + 0j, 1j), (3 + 1j, 2 - 1j)]:
        spec = GridSpec.covering([a, b], margin=6.0, nx=384, np_=384)
        gamma = spec.gamma_grid()
        kernel = cross_wigner_kernel(gamma, a, b)
        weights = np.outer(*(trap_w(n) for n in (spec.nx, spec.np)))
        integral = complex(np.sum(weights * kernel) * spec.cell_area() / 2)
        assert integral == pytest.approx(coherent_overlap(b, a), abs=1e-6)


def trap_w(m):
    w = np.ones(m)
    w[0] = w[-1] = 0.5
    return w


# -------------------------------------------------------- overlap integral


def test_purity_at_zero_displacement():
    cat = CatState(n=2, alpha=2 + 0j)
    assert wigner_overlap_integral(cat, 0j) == pytest.approx(1.0, abs=1e-3)


def test_overlap_integral_matches_exact():
    cat = CatState(n=4, alpha=3 + 0j)
    delta = 0.1 + 0j
    integral = wigner_overlap_integral(cat, delta)
    assert integral == pytest.approx(abs(exact_overlap(cat, delta)) ** 2, abs=1e-3)


def test_overlap_integral_fringe_minimum():
    # quarter-period displacement (same 1/|alpha| scale as the
    # first-orthogonality value) sits at the pair's cos^2 minimum
    cat = CatState(n=2, alpha=3 + 0j)
    delta = 1j * math.pi / (4 * 3)
    assert abs(delta) == pytest.approx(
        first_orthogonality_displacement(3.0), rel=0.4
    )
    integral = wigner_overlap_integral(cat, delta)
    assert integral == pytest.approx(0.0, abs=1e-3)


def test_overlap_integral_coverage_error():
    cat = CatState(n=2, alpha=3 + 0j)
    tight = GridSpec((-4, 4), (-4, 4), 64, 64)
    with pytest.raises(CoverageError):
        wigner_overlap_integral(cat, 0.1j, tight)


def test_q_is_gaussian_smoothing_of_wigner():
    alpha = 1 + 0j
    cat = CatState(n=1, alpha=alpha)
    spec = GridSpec.covering([alpha], margin=6.0, nx=384, np_=384)
    field = wigner(cat, spec)
    gamma = spec.gamma_grid()
    weights = np.outer(trap_w(spec.nx), trap_w(spec.np))
    for probe in (alpha, alpha + 0.5, alpha + 0.3j - 0.2):
        smoothing = (2 / math.pi) * np.exp(-2 * np.abs(probe - gamma) ** 2)
        convolved = float(
            np.sum(weights * field.values * smoothing) * spec.cell_area() / 2
        )
        assert convolved == pytest.approx(
            float(husimi_q_at(cat, np.array(probe))), abs=1e-4
        )


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec((0, 0), (-1, 1), 16, 16)
    with pytest.raises(ValueError):
        GridSpec((-1, 1), (-1, 1), 1, 16)
    spec = GridSpec.covering([3 + 0j, -3 + 0j])
    assert spec.covers([3 + 0j, -3 + 0j], margin=COVERAGE_MARGIN)
    assert not spec.covers([10 + 0j])
