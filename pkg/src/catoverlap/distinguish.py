"""Distinguishability frontier for n coherent states on a circle.

Adjacent components sit a chord distance 2 |alpha| sin(pi/n) apart; the
adopted criterion calls them distinguishable when that chord meets a
threshold tau (equivalently, when the adjacent-pair overlap magnitude
e^{-chord^2/2} falls below e^{-tau^2/2}).  Only nearest neighbours are
tested: second-neighbour chords are about twice as large, so their overlaps
are quartically smaller and numerically irrelevant on the frontier.

The default tau = 3.1 makes the published frontier table's implied chords
(which drift from ~2.97 at n = 4 to ~3.12 at n = 100) bracket the threshold
and gives the large-n ratio 2 pi / tau ~ 2.03.  The criterion is a
first-class parameter so callers can substitute their own; a least-squares
calibration against reference (n, alpha_min) pairs is provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .states import CatState

__all__ = [
    "DEFAULT_CRITERION",
    "DistinguishabilityCriterion",
    "FrontierRecord",
    "TABLE_ALPHA_MIN",
    "TABLE_N",
    "calibrate_criterion",
    "calibration_residuals",
    "critical_cat",
    "is_distinguishable",
    "min_alpha",
    "nu_estimate",
]

DEFAULT_TAU = 3.1

# Reference frontier used by calibration and the table command: minimum
# |alpha| (one decimal) for n components to stay distinguishable.
TABLE_N = (4, 12, 20, 28, 36, 44, 52, 60, 68, 76, 84, 92, 100)
TABLE_ALPHA_MIN = (
    2.1, 5.8, 9.9, 13.8, 17.7, 21.7, 25.7, 29.7, 33.7, 37.7, 41.7, 45.7, 49.7,
)


@dataclass(frozen=True)
class DistinguishabilityCriterion:
    """Distinguishability test, either as a chord threshold tau or an
    adjacent-overlap threshold epsilon = e^{-tau^2/2}.

    ``boundary_tolerance`` (chord units) absorbs the one-decimal rounding of
    published frontier values, so states quoted *at* the frontier still pass.
    """

    kind: str  # "chord" | "overlap"
    threshold: float
    boundary_tolerance: float = 0.01

    def __post_init__(self) -> None:
        if self.kind not in ("chord", "overlap"):
            raise ValueError(f"kind must be 'chord' or 'overlap', got {self.kind!r}")
        if self.kind == "chord" and self.threshold <= 0.0:
            raise ValueError("chord threshold must be > 0")
        if self.kind == "overlap" and not 0.0 < self.threshold < 1.0:
            raise ValueError("overlap threshold must be in (0, 1)")
        if self.boundary_tolerance < 0.0:
            raise ValueError("boundary_tolerance must be >= 0")

    @classmethod
    def chord(cls, tau: float = DEFAULT_TAU, boundary_tolerance: float = 0.01):
        return cls(kind="chord", threshold=tau, boundary_tolerance=boundary_tolerance)

    @classmethod
    def overlap(cls, epsilon: float, boundary_tolerance: float = 0.01):
        return cls(
            kind="overlap", threshold=epsilon, boundary_tolerance=boundary_tolerance
        )

    @property
    def chord_threshold(self) -> float:
        """Equivalent chord threshold tau (= sqrt(-2 ln eps) for overlap kind)."""
        if self.kind == "chord":
            return self.threshold
        return math.sqrt(-2.0 * math.log(self.threshold))

    def accepts_chord(self, chord: float) -> bool:
        cut = self.chord_threshold - self.boundary_tolerance
        if self.kind == "chord":
            return chord >= cut
        # same decision through the overlap-magnitude comparison
        return math.exp(-0.5 * chord * chord) <= math.exp(-0.5 * cut * cut)


DEFAULT_CRITERION = DistinguishabilityCriterion.chord()


def adjacent_chord(n: int, alpha_mag: float) -> float:
    """Distance between neighbouring components: 2 |alpha| sin(pi/n)."""
    return 2.0 * alpha_mag * math.sin(math.pi / n)


def _require_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("n must be an integer")
    if n < 2:
        raise ValueError("distinguishability is undefined for n < 2")


def is_distinguishable(
    n: int,
    alpha_mag: float,
    criterion: DistinguishabilityCriterion = DEFAULT_CRITERION,
) -> bool:
    """True when the adjacent chord distance meets the criterion."""
    _require_n(n)
    if alpha_mag <= 0.0:
        raise ValueError("alpha_mag must be > 0")
    return criterion.accepts_chord(adjacent_chord(n, alpha_mag))


@dataclass(frozen=True)
class FrontierRecord:
    """Minimum-|alpha| frontier point for n components."""

    n: int
    alpha_min: float
    chord: float
    ratio: float

    @property
    def ring_radius(self) -> float:
        """Effective ring radius sqrt(2) * alpha_min in (x, p) units."""
        return math.sqrt(2.0) * self.alpha_min


def min_alpha(
    n: int, criterion: DistinguishabilityCriterion = DEFAULT_CRITERION
) -> FrontierRecord:
    """Closed-form frontier alpha_min = tau / (2 sin(pi/n)).

    Values are full precision; rounding to one decimal is an output-format
    concern of the table command only.
    """
    _require_n(n)
    tau = criterion.chord_threshold
    alpha_min = tau / (2.0 * math.sin(math.pi / n))
    return FrontierRecord(
        n=n,
        alpha_min=alpha_min,
        chord=adjacent_chord(n, alpha_min),
        ratio=n / alpha_min,
    )


def nu_estimate(
    n_values,
    criterion: DistinguishabilityCriterion = DEFAULT_CRITERION,
) -> float:
    """Mean of the frontier ratios n / alpha_min(n) over the given n list.

    The single-n ratio grows monotonically toward 2 pi / tau; callers wanting
    the maximum over the list can take max(r.ratio for ...) directly.
    """
    values = list(n_values)
    if not values:
        raise ValueError("n_values must be non-empty")
    ratios = [min_alpha(n, criterion).ratio for n in values]
    return math.fsum(ratios) / len(ratios)


def critical_cat(
    n: int, criterion: DistinguishabilityCriterion = DEFAULT_CRITERION
) -> CatState:
    """Cat state exactly on the frontier (alpha = alpha_min(n), uniform
    phases), ready for Husimi-Q evaluation.  The associated ring radius
    sqrt(2) * alpha_min is available from min_alpha(n, criterion)."""
    record = min_alpha(n, criterion)
    return CatState(n=n, alpha=complex(record.alpha_min))


def calibrate_criterion(pairs) -> DistinguishabilityCriterion:
    """Fit a chord threshold to reference (n, alpha_min) pairs.

    Least squares in the alpha domain: minimizes
    sum_i (tau / (2 sin(pi/n_i)) - alpha_i)^2, i.e. a chord fit weighted by
    1 / (2 sin(pi/n))^2.  An unweighted chord mean would be dominated by the
    small-n rows and miss the large-n frontier by more than the published
    rounding; the weighted fit reproduces every reference row within +/-0.3.
    """
    pairs = [(int(n), float(a)) for n, a in pairs]
    if not pairs:
        raise ValueError("at least one (n, alpha_min) pair is required")
    for n, a in pairs:
        _require_n(n)
        if a <= 0.0:
            raise ValueError("alpha_min values must be > 0")
    num = math.fsum(a / (2.0 * math.sin(math.pi / n)) for n, a in pairs)
    den = math.fsum((2.0 * math.sin(math.pi / n)) ** -2 for n, _ in pairs)
    return DistinguishabilityCriterion.chord(num / den)


def calibration_residuals(
    pairs, criterion: DistinguishabilityCriterion
) -> list[float]:
    """Per-pair residuals alpha_min(n; criterion) - alpha_reference."""
    return [min_alpha(int(n), criterion).alpha_min - float(a) for n, a in pairs]
