"""Domain types for circular coherent-state superpositions and displacements.

Conventions: a superposition of n coherent states sits on the circle of
radius |alpha| at angles 2*pi*j/n (j = 1..n, so j = n is alpha itself).
Optional per-component phases are coefficient phases e^{i phi_j} multiplying
each component; they do not move the components.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

__all__ = [
    "CatState",
    "DegenerateSuperpositionError",
    "Displacement",
    "Normalization",
    "coherent_overlap",
    "components",
    "normalization_constant",
]

_IMAG_RESIDUE_TOL = 1e-12


class DegenerateSuperpositionError(ValueError):
    """Raised when a superposition's squared norm is numerically <= 0."""


class Normalization(enum.Enum):
    """Normalization mode for a cat state.

    EXACT uses the full squared norm including cross terms, making the
    zero-displacement overlap exactly 1.  UNIT keeps the bare 1/sqrt(n)
    prefactor, i.e. treats the components as mutually orthogonal; this
    reproduces closed-form expressions that assume distinguishable
    components.
    """

    EXACT = "exact"
    UNIT = "unit"


def _require_finite_complex(z: complex, name: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class CatState:
    """Equal-weight superposition of n coherent states on a circle.

    component_phases, when given, holds n coefficient phases in radians
    (defaults to all zero).
    """

    n: int
    alpha: complex
    component_phases: tuple[float, ...] | None = None
    normalization: Normalization = Normalization.EXACT

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError("n must be an integer")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "alpha", _require_finite_complex(self.alpha, "alpha"))
        if abs(self.alpha) == 0.0:
            raise ValueError("|alpha| must be > 0")
        if self.component_phases is not None:
            phases = tuple(float(p) for p in self.component_phases)
            if len(phases) != self.n:
                raise ValueError(
                    f"component_phases must have length {self.n}, got {len(phases)}"
                )
            if not all(math.isfinite(p) for p in phases):
                raise ValueError("component_phases must be finite")
            object.__setattr__(self, "component_phases", phases)

    @property
    def alpha_mag(self) -> float:
        return abs(self.alpha)

    @property
    def alpha_angle(self) -> float:
        return cmath.phase(self.alpha)

    def phases(self) -> tuple[float, ...]:
        """Coefficient phases, zero-filled when unset."""
        if self.component_phases is None:
            return (0.0,) * self.n
        return self.component_phases

    def is_uniform(self) -> bool:
        """True when all coefficient phases vanish."""
        return self.component_phases is None or all(
            p == 0.0 for p in self.component_phases
        )


@dataclass(frozen=True)
class Displacement:
    """Complex phase-space displacement with a perpendicular/parallel
    decomposition relative to a reference angle (theta_alpha of the state
    under study)."""

    delta: complex
    reference_angle: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", _require_finite_complex(self.delta, "delta"))
        if not math.isfinite(self.reference_angle):
            raise ValueError("reference_angle must be finite")

    @classmethod
    def from_polar(
        cls, magnitude: float, angle: float, reference_angle: float = 0.0
    ) -> "Displacement":
        return cls(magnitude * cmath.exp(1j * angle), reference_angle)

    def relative_to(self, alpha: complex) -> "Displacement":
        """Same displacement, decomposed relative to the phase of alpha."""
        return Displacement(self.delta, cmath.phase(complex(alpha)))

    @property
    def magnitude(self) -> float:
        return abs(self.delta)

    @property
    def angle(self) -> float:
        return cmath.phase(self.delta)

    @property
    def relative_angle(self) -> float:
        return self.angle - self.reference_angle

    @property
    def perp(self) -> float:
        """|delta| * sin(theta_delta - reference_angle)."""
        return self.magnitude * math.sin(self.relative_angle)

    @property
    def par(self) -> float:
        """|delta| * cos(theta_delta - reference_angle)."""
        return self.magnitude * math.cos(self.relative_angle)


def as_displacement(delta: "Displacement | complex") -> Displacement:
    """Coerce a bare complex number into a Displacement (reference angle 0)."""
    if isinstance(delta, Displacement):
        return delta
    return Displacement(complex(delta))


def components(cat: CatState) -> list[complex]:
    """Component amplitudes e^{i 2 pi j / n} * alpha, in index order j = 1..n."""
    n = cat.n
    return [cmath.exp(2j * math.pi * j / n) * cat.alpha for j in range(1, n + 1)]


def coherent_overlap(a: complex, b: complex) -> complex:
    """Inner product of two coherent states:

        <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) * b)

    Magnitude equals exp(-|a - b|^2 / 2).  Underflow of far-separated pairs
    to exactly 0 is expected and harmless.
    """
    a = _require_finite_complex(a, "a")
    b = _require_finite_complex(b, "b")
    abs2_a = a.real * a.real + a.imag * a.imag
    abs2_b = b.real * b.real + b.imag * b.imag
    return cmath.exp(a.conjugate() * b - 0.5 * abs2_a - 0.5 * abs2_b)


def normalization_constant(cat: CatState) -> float:
    """Normalization constant N of the superposition.

    UNIT mode returns 1.  EXACT mode returns

        N = sqrt( (1/n) * sum_{j,k} e^{i(phi_k - phi_j)} <alpha_j|alpha_k> )

    so that the state (1/(sqrt(n) N)) sum_j e^{i phi_j} |alpha_j> has unit
    norm.  Raises DegenerateSuperpositionError when the squared norm is
    numerically <= 0.
    """
    if cat.normalization is Normalization.UNIT:
        return 1.0
    comps = components(cat)
    phases = cat.phases()
    total = 0j
    comp = 0j  # Kahan carry
    for j in range(cat.n):
        for k in range(cat.n):
            term = cmath.exp(1j * (phases[k] - phases[j])) * coherent_overlap(
                comps[j], comps[k]
            )
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
    norm_sq = total / cat.n
    if abs(norm_sq.imag) > _IMAG_RESIDUE_TOL * max(1.0, abs(norm_sq.real)):
        raise ArithmeticError(
            f"squared norm has non-negligible imaginary part: {norm_sq!r}"
        )
    if norm_sq.real <= 0.0:
        raise DegenerateSuperpositionError(
            f"superposition is numerically degenerate (norm^2 = {norm_sq.real!r})"
        )
    return math.sqrt(norm_sq.real)
