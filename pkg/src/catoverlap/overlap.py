"""Overlap-function kernels: exact double sum, diagonal approximation, n = 2
closed forms, the Bessel asymptotic limit, and the ring-source coherence
comparison.

The exact overlap of a state with its displaced copy is an n x n double sum;
each (j, k) term is a pure phase factor times a Gaussian factor,

    T_jk = exp( i * [Im(delta conj(a_k)) + Im(delta conj(a_j))
                     - Im(a_j conj(a_k))]  -  |delta + a_k - a_j|^2 / 2 ),

with a_j the component amplitudes.  Phase and Gaussian exponents are
accumulated before a single exponentiation so that far-separated cross terms
underflow cleanly to zero instead of overflowing intermediates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import bessel_j0, j0_root
from .states import (
    CatState,
    Displacement,
    Normalization,
    as_displacement,
    components,
    normalization_constant,
)

__all__ = [
    "GridParameterization",
    "OverlapRecord",
    "OverlapSeries",
    "RayParameterization",
    "asymptotic_overlap",
    "cat2_fringe",
    "cat2_phase_shifted_fringe",
    "cat2_rotated_fringe",
    "cosine_double_sum",
    "deviation_scan",
    "diagonal_approx_overlap",
    "exact_overlap",
    "first_orthogonality_displacement",
    "surface_scan",
    "vcz_mutual_coherence",
]

DEVIATION_KINDS = ("re", "abs", "sq")

# The derivations behind the diagonal/Bessel forms assume small displacements;
# scans past this magnitude carry a warning flag (the exact sum stays valid).
SMALL_DISPLACEMENT_LIMIT = 1.0


def _raw_overlap_sum(cat: CatState, deltas: np.ndarray) -> np.ndarray:
    """(1/n) sum_{j,k} e^{i(phi_k - phi_j)} T_jk(delta), vectorized over deltas.

    Fixed summation order (j outer, k inner, ascending) with compensated
    accumulation for run-to-run reproducible output.
    """
    comps = components(cat)
    phases = cat.phases()
    total = np.zeros(deltas.shape, dtype=complex)
    carry = np.zeros(deltas.shape, dtype=complex)
    for j in range(cat.n):
        a_j = comps[j]
        for k in range(cat.n):
            a_k = comps[k]
            w = deltas + (a_k - a_j)
            gauss = 0.5 * (w.real * w.real + w.imag * w.imag)
            phase = (
                (deltas * np.conj(a_k)).imag
                + (deltas * np.conj(a_j)).imag
                - (a_j * a_k.conjugate()).imag
                + (phases[k] - phases[j])
            )
            term = np.exp(phase * 1j - gauss)
            y = term - carry
            t = total + y
            carry = (t - total) - y
            total = t
    return total / cat.n


def _normalized_overlap(cat: CatState, deltas: np.ndarray) -> np.ndarray:
    raw = _raw_overlap_sum(cat, deltas)
    if cat.normalization is Normalization.EXACT:
        return raw / normalization_constant(cat) ** 2
    return raw


def exact_overlap(cat: CatState, delta: Displacement | complex) -> complex:
    """<cat| D(delta) |cat> by the full n x n double sum.

    In EXACT normalization the zero-displacement value is 1 to machine
    precision; in UNIT mode the bare 1/sqrt(n) prefactor is kept.
    """
    disp = as_displacement(delta)
    return complex(_normalized_overlap(cat, np.asarray(disp.delta, dtype=complex)))


def diagonal_approx_overlap(
    cat: CatState, delta: Displacement | complex, envelope: bool = False
) -> float:
    """Diagonal (j = k) approximation of the overlap for a uniform cat:

        (1/n) sum_j cos[2 r sin(theta - 2 pi j / n)],

    r = |alpha||delta|, theta = theta_delta - theta_alpha; multiplied by
    exp(-|delta|^2/2) when ``envelope`` is set.  Rejects cats with nonzero
    coefficient phases (the reduction is derived for the uniform case).
    """
    if not cat.is_uniform():
        raise ValueError("diagonal approximation requires all component phases zero")
    disp = as_displacement(delta)
    r = cat.alpha_mag * disp.magnitude
    theta = disp.angle - cat.alpha_angle
    total = math.fsum(
        math.cos(2.0 * r * math.sin(theta - 2.0 * math.pi * j / cat.n))
        for j in range(1, cat.n + 1)
    )
    value = total / cat.n
    if envelope:
        value *= math.exp(-0.5 * disp.magnitude**2)
    return value


def _diagonal_many(cat: CatState, deltas: np.ndarray, envelope: bool) -> np.ndarray:
    r = cat.alpha_mag * np.abs(deltas)
    theta = np.angle(deltas) - cat.alpha_angle
    total = np.zeros(deltas.shape)
    for j in range(1, cat.n + 1):
        total += np.cos(2.0 * r * np.sin(theta - 2.0 * math.pi * j / cat.n))
    value = total / cat.n
    if envelope:
        value *= np.exp(-0.5 * np.abs(deltas) ** 2)
    return value


def cosine_double_sum(
    cat: CatState, delta: Displacement | complex, envelope: bool = True
) -> float:
    """All-pairs cosine form (1/n) sum_{j,k} cos[2 r sin(theta - pi(j+k)/n)].

    Debugging aid only: this form keeps the off-diagonal cosine terms and is
    not normalized -- it evaluates to n at delta = 0.  The properly
    normalized reduction is :func:`diagonal_approx_overlap`.
    """
    if not cat.is_uniform():
        raise ValueError("cosine double sum requires all component phases zero")
    disp = as_displacement(delta)
    r = cat.alpha_mag * disp.magnitude
    theta = disp.angle - cat.alpha_angle
    total = math.fsum(
        math.cos(2.0 * r * math.sin(theta - math.pi * (j + k) / cat.n))
        for j in range(1, cat.n + 1)
        for k in range(1, cat.n + 1)
    )
    value = total / cat.n
    if envelope:
        value *= math.exp(-0.5 * disp.magnitude**2)
    return value


def asymptotic_overlap(alpha_mag: float, delta_mag: float) -> float:
    """Large-n limit of the overlap: J0(2 |alpha| |delta|)."""
    if alpha_mag <= 0.0:
        raise ValueError("alpha_mag must be > 0")
    if delta_mag < 0.0:
        raise ValueError("delta_mag must be >= 0")
    return bessel_j0(2.0 * alpha_mag * delta_mag)


def cat2_fringe(
    alpha_mag: float,
    delta: Displacement | complex,
    wavelength_scale: float | None = None,
) -> float:
    """Two-component fringe cos^2(2 |alpha| delta_perp).

    With ``wavelength_scale`` lambda set, the optical-unit convention
    [a, a^dag] = pi / lambda applies and the argument picks up pi/lambda;
    lambda = pi reproduces the plain form.
    """
    if alpha_mag <= 0.0:
        raise ValueError("alpha_mag must be > 0")
    disp = as_displacement(delta)
    arg = 2.0 * alpha_mag * disp.perp
    if wavelength_scale is not None:
        if wavelength_scale <= 0.0:
            raise ValueError("wavelength_scale must be > 0")
        arg *= math.pi / wavelength_scale
    return math.cos(arg) ** 2


def cat2_rotated_fringe(
    alpha_mag: float, phi: float, delta: Displacement | complex
) -> float:
    """Fringe of the pair {|alpha>, |e^{i phi} alpha>}:

        cos^2( 2 |alpha| sin(phi/2) (delta_perp sin(phi/2) + delta_par cos(phi/2)) )

    The pair separation 2 |alpha| sin(phi/2) sets the fringe width; phi = pi
    reduces to the antipodal pair, i.e. :func:`cat2_fringe`.
    """
    if alpha_mag <= 0.0:
        raise ValueError("alpha_mag must be > 0")
    if not 0.0 < phi <= 2.0 * math.pi:
        raise ValueError("phi must be in (0, 2*pi]")
    disp = as_displacement(delta)
    half = 0.5 * phi
    arg = (
        2.0
        * alpha_mag
        * math.sin(half)
        * (disp.perp * math.sin(half) + disp.par * math.cos(half))
    )
    return math.cos(arg) ** 2


def cat2_phase_shifted_fringe(
    alpha_mag: float, phi: float, delta: Displacement | complex
) -> float:
    """Shifted-fringe closed form cos^2(2 |alpha| delta_perp - phi) for the
    antipodal pair with relative coefficient phase phi.

    Kept as the literal published expression; the exact overlap of the phased
    state does not generally reproduce it (the relative phase cancels in the
    dominant diagonal terms), so outputs always juxtapose this value with the
    exact one rather than silently correcting either.
    """
    if alpha_mag <= 0.0:
        raise ValueError("alpha_mag must be > 0")
    disp = as_displacement(delta)
    return math.cos(2.0 * alpha_mag * disp.perp - phi) ** 2


def vcz_mutual_coherence(
    ring_radius: float, separation: float, wavelength: float, screen_distance: float
) -> float:
    """Equal-time degree of spatial coherence of a uniform ring source:

        J0( 2 pi r0 d / (lambda R) )

    with ring radius r0, point separation d, wavelength lambda and screen
    distance R.
    """
    if ring_radius <= 0.0 or wavelength <= 0.0 or screen_distance <= 0.0:
        raise ValueError("ring_radius, wavelength and screen_distance must be > 0")
    if separation < 0.0:
        raise ValueError("separation must be >= 0")
    return bessel_j0(
        2.0 * math.pi * ring_radius * separation / (wavelength * screen_distance)
    )


def first_orthogonality_displacement(alpha_mag: float) -> float:
    """Smallest displacement magnitude giving asymptotic orthogonality:
    (first positive J0 root) / (2 |alpha|).  Inversely proportional to
    |alpha| (the Heisenberg-limited scaling)."""
    if alpha_mag <= 0.0:
        raise ValueError("alpha_mag must be > 0")
    return j0_root(1).value / (2.0 * alpha_mag)


@dataclass(frozen=True)
class RayParameterization:
    direction: float
    delta_max: float
    samples: int


@dataclass(frozen=True)
class GridParameterization:
    re_range: tuple[float, float]
    im_range: tuple[float, float]
    resolution: int


@dataclass(frozen=True)
class OverlapRecord:
    delta: complex
    exact: complex
    exact_sq: float
    diagonal: float
    bessel: float
    deviation: float


@dataclass(frozen=True)
class OverlapSeries:
    parameterization: RayParameterization | GridParameterization
    records: tuple[OverlapRecord, ...]
    deviation_kind: str = "re"
    warnings: tuple[str, ...] = field(default_factory=tuple)


def _deviation(exact: np.ndarray, bessel: np.ndarray, kind: str) -> np.ndarray:
    if kind == "re":
        return exact.real - bessel
    if kind == "abs":
        return np.abs(exact) - bessel
    if kind == "sq":
        return np.abs(exact) ** 2 - bessel
    raise ValueError(f"deviation kind must be one of {DEVIATION_KINDS}, got {kind!r}")


def _assemble_records(
    cat: CatState, deltas: np.ndarray, deviation_kind: str
) -> tuple[OverlapRecord, ...]:
    exact = _normalized_overlap(cat, deltas)
    bessel = np.array([bessel_j0(2.0 * cat.alpha_mag * m) for m in np.abs(deltas)])
    if cat.is_uniform():
        diagonal = _diagonal_many(cat, deltas, envelope=False)
    else:
        diagonal = np.full(deltas.shape, math.nan)
    deviation = _deviation(exact, bessel, deviation_kind)
    return tuple(
        OverlapRecord(
            delta=complex(d),
            exact=complex(e),
            exact_sq=abs(complex(e)) ** 2,
            diagonal=float(g),
            bessel=float(b),
            deviation=float(v),
        )
        for d, e, g, b, v in zip(deltas, exact, diagonal, bessel, deviation)
    )


def _magnitude_warnings(deltas: np.ndarray) -> tuple[str, ...]:
    peak = float(np.max(np.abs(deltas))) if deltas.size else 0.0
    if peak > SMALL_DISPLACEMENT_LIMIT:
        return (
            f"max |delta| = {peak:.6g} exceeds the small-displacement regime "
            f"(> {SMALL_DISPLACEMENT_LIMIT:g}); diagonal/Bessel references "
            "are asymptotic approximations there",
        )
    return ()


def deviation_scan(
    cat: CatState,
    direction: float,
    delta_max: float,
    samples: int,
    deviation_kind: str = "re",
) -> OverlapSeries:
    """Sample the overlap along the ray |delta| in [0, delta_max] at fixed
    theta_delta = direction, with diagonal and Bessel references and the
    deviation column (default convention: Re(exact) - J0)."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    if delta_max <= 0.0:
        raise ValueError("delta_max must be > 0")
    if deviation_kind not in DEVIATION_KINDS:
        raise ValueError(f"deviation kind must be one of {DEVIATION_KINDS}")
    mags = np.linspace(0.0, delta_max, samples)
    deltas = mags * cmath.exp(1j * direction)
    records = _assemble_records(cat, deltas, deviation_kind)
    return OverlapSeries(
        parameterization=RayParameterization(direction, delta_max, samples),
        records=records,
        deviation_kind=deviation_kind,
        warnings=_magnitude_warnings(deltas),
    )


def surface_scan(
    cat: CatState,
    re_range: tuple[float, float],
    im_range: tuple[float, float],
    resolution: int,
    deviation_kind: str = "re",
) -> OverlapSeries:
    """Overlap over the grid delta = x + i y (row-major in x), with the
    J0(2 |alpha| |delta|) reference at each node."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if re_range[1] <= re_range[0] or im_range[1] <= im_range[0]:
        raise ValueError("ranges must be increasing intervals")
    if deviation_kind not in DEVIATION_KINDS:
        raise ValueError(f"deviation kind must be one of {DEVIATION_KINDS}")
    xs = np.linspace(re_range[0], re_range[1], resolution)
    ys = np.linspace(im_range[0], im_range[1], resolution)
    grid_x, grid_y = np.meshgrid(xs, ys, indexing="ij")
    deltas = (grid_x + 1j * grid_y).ravel()
    records = _assemble_records(cat, deltas, deviation_kind)
    return OverlapSeries(
        parameterization=GridParameterization(
            (float(re_range[0]), float(re_range[1])),
            (float(im_range[0]), float(im_range[1])),
            resolution,
        ),
        records=records,
        deviation_kind=deviation_kind,
        warnings=_magnitude_warnings(deltas),
    )
