import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catoverlap.distinguish import (
    DEFAULT_CRITERION,
    DistinguishabilityCriterion,
    TABLE_ALPHA_MIN,
    TABLE_N,
    adjacent_chord,
    calibrate_criterion,
    calibration_residuals,
    critical_cat,
    is_distinguishable,
    min_alpha,
    nu_estimate,
)

SINGLE_PAIR_TAU = 2.9698484809834995  # 2 * 2.1 * sin(pi/4)


def test_is_distinguishable_far_separated():
    assert is_distinguishable(4, 10.0)


def test_is_distinguishable_at_published_boundary():
    # chord 2 * 9.9 * sin(pi/20) ~ 3.097 sits just under tau = 3.1; the
    # boundary tolerance absorbs the one-decimal rounding of the reference
    assert adjacent_chord(20, 9.9) == pytest.approx(3.0974, abs=1e-4)
    assert is_distinguishable(20, 9.9)


def test_is_distinguishable_heavily_overlapping():
    assert adjacent_chord(100, 10.0) == pytest.approx(0.628, abs=1e-3)
    assert not is_distinguishable(100, 10.0)


def test_is_distinguishable_validation():
    with pytest.raises(ValueError):
        is_distinguishable(1, 5.0)
    with pytest.raises(ValueError):
        is_distinguishable(4, 0.0)


def test_min_alpha_reference_rows_with_calibrated_criterion():
    criterion = calibrate_criterion(zip(TABLE_N, TABLE_ALPHA_MIN))
    for n, ref in [(4, 2.1), (20, 9.9), (100, 49.7)]:
        assert min_alpha(n, criterion).alpha_min == pytest.approx(ref, abs=0.3)


def test_min_alpha_record_fields():
    record = min_alpha(20)
    assert record.alpha_min == pytest.approx(3.1 / (2 * math.sin(math.pi / 20)), rel=1e-14)
    assert record.chord >= DEFAULT_CRITERION.chord_threshold - 1e-9
    assert record.ratio == pytest.approx(20 / record.alpha_min, rel=1e-14)
    assert record.ring_radius == pytest.approx(math.sqrt(2) * record.alpha_min, rel=1e-14)


def test_min_alpha_monotone_in_n():
    values = [min_alpha(n).alpha_min for n in range(3, 201)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_frontier_consistency_band():
    for n in TABLE_N:
        record = min_alpha(n)
        assert is_distinguishable(n, record.alpha_min + 0.1)
        assert not is_distinguishable(n, record.alpha_min - 0.3)


def test_nu_estimate_reference_list():
    nu = nu_estimate(TABLE_N)
    assert 1.9 <= nu <= 2.1
    assert nu == pytest.approx(2.016, abs=0.1)


def test_nu_estimate_limits():
    assert nu_estimate([2]) == pytest.approx(4.0 / 3.1, rel=1e-12)
    assert nu_estimate([100000]) == pytest.approx(2 * math.pi / 3.1, abs=1e-3)


def test_large_n_ratio_monotone_from_below():
    ratios = [min_alpha(n).ratio for n in (5, 10, 20, 50, 100, 1000)]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert all(r < 2 * math.pi / 3.1 for r in ratios)


def test_critical_cat_frontier_parameters():
    for n, ref in [(20, 9.9), (32, 15.9), (40, 19.9)]:
        cat = critical_cat(n)
        assert cat.n == n
        assert cat.alpha_mag == pytest.approx(ref, abs=0.15)
        assert cat.component_phases is None


def test_calibrate_reference_table():
    criterion = calibrate_criterion(zip(TABLE_N, TABLE_ALPHA_MIN))
    assert 2.95 <= criterion.chord_threshold <= 3.15
    residuals = calibration_residuals(zip(TABLE_N, TABLE_ALPHA_MIN), criterion)
    assert max(abs(r) for r in residuals) <= 0.3


def test_calibrate_duplicate_invariance():
    single = calibrate_criterion([(4, 2.1)])
    doubled = calibrate_criterion([(4, 2.1), (4, 2.1)])
    assert single.chord_threshold == pytest.approx(SINGLE_PAIR_TAU, rel=1e-12)
    assert doubled.chord_threshold == pytest.approx(
        single.chord_threshold, rel=1e-12
    )


def test_calibrate_rejects_empty_and_bad_pairs():
    with pytest.raises(ValueError):
        calibrate_criterion([])
    with pytest.raises(ValueError):
        calibrate_criterion([(1, 2.0)])
    with pytest.raises(ValueError):
        calibrate_criterion([(4, -1.0)])


def test_criterion_kinds_equivalent_decisions():
    tau = 3.1
    chord_kind = DistinguishabilityCriterion.chord(tau)
    overlap_kind = DistinguishabilityCriterion.overlap(math.exp(-0.5 * tau * tau))
    mismatches = 0
    for n in range(2, 102):
        for i in range(100):
            alpha = 0.2 + 0.6 * i
            if is_distinguishable(n, alpha, chord_kind) != is_distinguishable(
                n, alpha, overlap_kind
            ):
                mismatches += 1
    assert mismatches == 0


def test_criterion_validation():
    with pytest.raises(ValueError):
        DistinguishabilityCriterion.chord(0.0)
    with pytest.raises(ValueError):
        DistinguishabilityCriterion.overlap(1.5)
    with pytest.raises(ValueError):
        DistinguishabilityCriterion(kind="bogus", threshold=1.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.5, max_value=6.0))
def test_overlap_kind_equivalent_tau(tau):
    overlap_kind = DistinguishabilityCriterion.overlap(math.exp(-0.5 * tau * tau))
    assert overlap_kind.chord_threshold == pytest.approx(tau, rel=1e-12)
