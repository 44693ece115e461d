import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catoverlap.fockcheck import superposition_fock_vector
from catoverlap.states import (
    CatState,
    DegenerateSuperpositionError,
    Displacement,
    Normalization,
    coherent_overlap,
    components,
    normalization_constant,
)

EXP_MINUS_18 = 1.522997974471263e-08  # exp(-18), magnitude of <3|-3>
N_4_1 = 1.2380902648552885  # brute-force norm of the n=4, alpha=1 superposition

finite_angles = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
moduli = st.floats(min_value=0.05, max_value=20.0, allow_nan=False)


def polar(mag, ang):
    return mag * cmath.exp(1j * ang)


def test_components_single():
    assert components(CatState(n=1, alpha=3 + 0j)) == [pytest.approx(3 + 0j)]


def test_components_pair_order():
    comps = components(CatState(n=2, alpha=3 + 0j))
    assert comps[0] == pytest.approx(-3 + 0j)
    assert comps[1] == pytest.approx(3 + 0j)


def test_components_four_on_circle():
    comps = components(CatState(n=4, alpha=2.1 + 0j))
    expected = [math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi]
    for got, want in zip(comps, expected):
        assert got == pytest.approx(2.1 * cmath.exp(1j * want), abs=1e-12)
    assert all(abs(c) == pytest.approx(2.1, rel=1e-12) for c in comps)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=16), moduli, finite_angles)
def test_components_preserve_modulus(n, mag, ang):
    cat = CatState(n=n, alpha=polar(mag, ang))
    for c in components(cat):
        assert abs(c) == pytest.approx(mag, rel=1e-12)


def test_coherent_overlap_identical_is_one():
    for z in (0.5 + 0.2j, 3 + 0j, -2j, polar(7, 1.3)):
        assert coherent_overlap(z, z) == pytest.approx(1.0, abs=1e-14)


def test_coherent_overlap_vacuum():
    b = 1.5 - 0.5j
    assert coherent_overlap(0, b) == pytest.approx(
        math.exp(-abs(b) ** 2 / 2), rel=1e-14
    )


def test_coherent_overlap_antipodal_magnitude():
    assert abs(coherent_overlap(3 + 0j, -3 + 0j)) == pytest.approx(
        EXP_MINUS_18, rel=1e-12
    )


@settings(max_examples=80, deadline=None)
@given(moduli, finite_angles, moduli, finite_angles)
def test_coherent_overlap_magnitude_and_conjugation(ma, aa, mb, ab):
    a, b = polar(ma, aa), polar(mb, ab)
    ov = coherent_overlap(a, b)
    assert abs(ov) == pytest.approx(math.exp(-abs(a - b) ** 2 / 2), rel=1e-12, abs=1e-300)
    assert coherent_overlap(b, a) == pytest.approx(ov.conjugate(), rel=1e-12, abs=1e-300)


def test_coherent_overlap_underflows_to_zero():
    assert coherent_overlap(30 + 0j, -30 + 0j) == 0.0


def test_normalization_single_component_is_exactly_one():
    assert normalization_constant(CatState(n=1, alpha=2 + 1j)) == pytest.approx(
        1.0, abs=1e-15
    )


def test_normalization_far_separated_pair():
    # cross term exp(-450) underflows
    assert normalization_constant(CatState(n=2, alpha=15 + 0j)) == pytest.approx(
        1.0, abs=1e-12
    )


def test_normalization_small_alpha_cross_terms():
    n = normalization_constant(CatState(n=4, alpha=1 + 0j))
    assert n > 1.0
    assert n == pytest.approx(N_4_1, rel=1e-12)


def test_normalization_unit_mode():
    cat = CatState(n=4, alpha=1 + 0j, normalization=Normalization.UNIT)
    assert normalization_constant(cat) == 1.0


@pytest.mark.parametrize("n,mag", [(2, 1.0), (3, 2.0), (4, 3.0), (6, 4.5), (8, 6.0)])
def test_normalization_matches_fock_vector_norm(n, mag):
    cat = CatState(n=n, alpha=polar(mag, 0.7))
    cutoff = int(mag * mag + 6 * mag + 40)
    vec = superposition_fock_vector(
        components(cat), [1.0] * n, cutoff, normalize=False
    )
    fock_norm = float(np.linalg.norm(vec.amplitudes)) / math.sqrt(n)
    assert normalization_constant(cat) == pytest.approx(fock_norm, abs=1e-8)


def test_normalization_degenerate_superposition_raises():
    cat = CatState(n=2, alpha=1e-12 + 0j, component_phases=(0.0, math.pi))
    with pytest.raises(DegenerateSuperpositionError):
        normalization_constant(cat)


def test_cat_state_validation():
    with pytest.raises(ValueError):
        CatState(n=0, alpha=1 + 0j)
    with pytest.raises(ValueError):
        CatState(n=2, alpha=0j)
    with pytest.raises(ValueError):
        CatState(n=2, alpha=complex(math.nan, 0))
    with pytest.raises(ValueError):
        CatState(n=3, alpha=1 + 0j, component_phases=(0.0, 1.0))
    with pytest.raises(TypeError):
        CatState(n=2.5, alpha=1 + 0j)


def test_displacement_validation():
    with pytest.raises(ValueError):
        Displacement(complex(math.inf, 0))
    with pytest.raises(ValueError):
        Displacement(0.1j, reference_angle=math.nan)


@settings(max_examples=80, deadline=None)
@given(
    st.floats(min_value=0.0, max_value=5.0, allow_nan=False),
    finite_angles,
    finite_angles,
)
def test_displacement_decomposition(mag, ang, ref):
    disp = Displacement.from_polar(mag, ang, reference_angle=ref)
    assert disp.perp**2 + disp.par**2 == pytest.approx(
        disp.magnitude**2, rel=1e-12, abs=1e-30
    )


def test_displacement_relative_to():
    disp = Displacement(0.1j).relative_to(polar(2.0, 0.4))
    assert disp.reference_angle == pytest.approx(0.4)
    assert disp.perp == pytest.approx(0.1 * math.sin(math.pi / 2 - 0.4), rel=1e-12)
