"""Truncated number-basis oracle for overlap identities.

Everything here is an independent verification path: states are expanded in
the number basis and displaced with a matrix exponential of the raw generator
delta*A^dag - conj(delta)*A, deliberately avoiding the analytic
displacement-composition shortcuts used by the code under test.  Not a
performance path; it backs the test suite and the ``verify`` command only.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .specfun import log_factorial
from .states import CatState, Displacement, as_displacement, components

__all__ = [
    "ConvergenceWarning",
    "FockVector",
    "coherent_fock_vector",
    "displacement_matrix",
    "oracle_overlap",
    "recommended_cutoff",
    "superposition_fock_vector",
]

_CONVERGED_TAIL = 1e-12


class ConvergenceWarning(UserWarning):
    """Truncation is too aggressive for the requested amplitudes."""


def recommended_cutoff(amplitude: float) -> int:
    """Heuristic truncation for support of amplitude a: a^2 + 6a + 20.

    Poisson tail of the coherent photon-number distribution; validated post
    hoc by tail_mass and by cutoff doubling in the tests.
    """
    a = abs(float(amplitude))
    return int(math.ceil(a * a + 6.0 * a + 20.0))


@dataclass(frozen=True)
class FockVector:
    """Number-basis amplitudes (index = photon number) with a tail certificate."""

    amplitudes: np.ndarray
    cutoff: int
    tail_mass: float

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def converged(self) -> bool:
        return self.tail_mass <= _CONVERGED_TAIL


def coherent_fock_vector(alpha: complex, cutoff: int) -> FockVector:
    """Coherent state in the truncated number basis.

    Amplitudes c_m = exp(-|alpha|^2/2) alpha^m / sqrt(m!), evaluated in the
    log domain.  Emits ConvergenceWarning when the cutoff is below the
    recommended bound for |alpha|.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    alpha = complex(alpha)
    if cutoff < recommended_cutoff(abs(alpha)):
        warnings.warn(
            f"cutoff {cutoff} below recommended {recommended_cutoff(abs(alpha))} "
            f"for |alpha| = {abs(alpha):.3f}",
            ConvergenceWarning,
            stacklevel=2,
        )
    amps = np.zeros(cutoff, dtype=complex)
    if alpha == 0:
        amps[0] = 1.0
    else:
        log_alpha = cmath.log(alpha)
        base = -0.5 * abs(alpha) ** 2
        for m in range(cutoff):
            amps[m] = cmath.exp(base + m * log_alpha - 0.5 * log_factorial(m))
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    return FockVector(amplitudes=amps, cutoff=cutoff, tail_mass=max(tail, 0.0))


def superposition_fock_vector(
    component_amplitudes: list[complex] | tuple[complex, ...],
    coefficients: list[complex] | tuple[complex, ...],
    cutoff: int,
    normalize: bool = True,
) -> FockVector:
    """Superposition sum_j coefficients[j] * |component_amplitudes[j]> in the
    truncated basis, numerically normalized by default (the oracle's own
    normalization, independent of the analytic constant)."""
    if len(component_amplitudes) != len(coefficients):
        raise ValueError("component_amplitudes and coefficients must have equal length")
    vec = np.zeros(cutoff, dtype=complex)
    worst_tail = 0.0
    for a, c in zip(component_amplitudes, coefficients):
        part = coherent_fock_vector(a, cutoff)
        worst_tail = max(worst_tail, part.tail_mass)
        vec += complex(c) * part.amplitudes
    if normalize:
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            raise ValueError("superposition is numerically null at this cutoff")
        vec = vec / norm
    # the superposition's own tail is not analytically known without the
    # exact norm; certify by the worst per-component truncation deficit
    return FockVector(amplitudes=vec, cutoff=cutoff, tail_mass=worst_tail)


def _annihilation(cutoff: int) -> np.ndarray:
    a = np.zeros((cutoff, cutoff), dtype=complex)
    m = np.arange(1, cutoff)
    a[m - 1, m] = np.sqrt(m)
    return a


def displacement_matrix(delta: complex, cutoff: int) -> np.ndarray:
    """Truncated displacement operator exp(delta A^dag - conj(delta) A).

    Built by scaling-and-squaring of the truncated generator with a fixed
    24-term Taylor series (scaled 1-norm <= 0.5, remainder < 1e-26).  Unitary
    on the interior block; deviations are confined to indices near the
    truncation edge, so keep state support below cutoff - 3*sqrt(cutoff).
    """
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    delta = complex(delta)
    if recommended_cutoff(abs(delta)) > cutoff:
        warnings.warn(
            f"|delta| = {abs(delta):.3f} is large for cutoff {cutoff}; "
            "edge effects will corrupt the interior block",
            ConvergenceWarning,
            stacklevel=2,
        )
    a = _annihilation(cutoff)
    gen = delta * a.conj().T - delta.conjugate() * a
    norm1 = float(np.linalg.norm(gen, 1))
    squarings = max(0, math.ceil(math.log2(norm1 / 0.5))) if norm1 > 0.5 else 0
    scaled = gen / (2.0**squarings)
    result = np.eye(cutoff, dtype=complex)
    term = np.eye(cutoff, dtype=complex)
    for order in range(1, 25):
        term = term @ scaled / order
        result += term
    for _ in range(squarings):
        result = result @ result
    return result


def oracle_overlap(
    cat: CatState, delta: Displacement | complex, cutoff: int
) -> complex:
    """<cat| D(delta) |cat> via the truncated-basis displacement matrix.

    Emits ConvergenceWarning when the cutoff is not certified for the
    largest displaced component amplitude.
    """
    disp = as_displacement(delta)
    support = max(abs(c) for c in components(cat)) + disp.magnitude
    needed = recommended_cutoff(support)
    if cutoff < needed:
        warnings.warn(
            f"cutoff {cutoff} below certified bound {needed} for displaced "
            f"support {support:.3f}",
            ConvergenceWarning,
            stacklevel=2,
        )
    coeffs = [cmath.exp(1j * p) for p in cat.phases()]
    vec = superposition_fock_vector(components(cat), coeffs, cutoff).amplitudes
    dmat = displacement_matrix(disp.delta, cutoff)
    return complex(np.vdot(vec, dmat @ vec))
