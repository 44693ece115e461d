"""Cross-module verification suites behind the ``verify`` CLI command.

Three suites: algebraic identities of the overlap kernels, agreement with the
truncated-basis oracle, and the quadrature identity for the Bessel kernel.
All randomized instance selection is driven by an explicit seed so a report
is byte-reproducible.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from .distinguish import DistinguishabilityCriterion, is_distinguishable
from .fockcheck import oracle_overlap, recommended_cutoff
from .overlap import diagonal_approx_overlap, exact_overlap
from .phasespace import GridSpec, wigner_overlap_integral
from .specfun import bessel_j0, j0_integral_reference, j0_root
from .states import CatState

__all__ = ["CheckResult", "SUITES", "run_suites"]

SUITES = ("identities", "oracle", "quadrature")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _check(suite: str, name: str, measured: float, limit: float) -> CheckResult:
    return CheckResult(
        suite=suite,
        name=name,
        passed=measured <= limit,
        detail=f"max-error {measured:.3e} (limit {limit:.1e})",
    )


def _suite_identities(rng: random.Random) -> list[CheckResult]:
    results = []

    worst = 0.0
    for n in (2, 4, 8, 16):
        for mag in (1.0, 3.0, 15.0):
            cat = CatState(n=n, alpha=mag * cmath.exp(1j * rng.uniform(0, 2 * math.pi)))
            worst = max(worst, abs(exact_overlap(cat, 0j) - 1.0))
    results.append(_check("identities", "zero-displacement normalization", worst, 1e-12))

    worst = 0.0
    for _ in range(6):
        n = rng.choice([2, 3, 4, 6])
        cat = CatState(n=n, alpha=rng.uniform(0.5, 3.0) * cmath.exp(1j * rng.uniform(0, 6.28)))
        delta = rng.uniform(0.01, 0.5) * cmath.exp(1j * rng.uniform(0, 6.28))
        lhs = exact_overlap(cat, -delta)
        rhs = exact_overlap(cat, delta).conjugate()
        worst = max(worst, abs(lhs - rhs))
    results.append(_check("identities", "hermitian symmetry", worst, 1e-12))

    worst = 0.0
    for _ in range(6):
        n = rng.choice([2, 3, 5, 8])
        cat = CatState(n=n, alpha=rng.uniform(0.5, 3.0) * cmath.exp(1j * rng.uniform(0, 6.28)))
        delta = rng.uniform(0.01, 0.5) * cmath.exp(1j * rng.uniform(0, 6.28))
        rot = cmath.exp(1j * rng.uniform(0, 6.28))
        cat_rot = CatState(n=n, alpha=rot * cat.alpha)
        lhs = abs(exact_overlap(cat, delta))
        rhs = abs(exact_overlap(cat_rot, rot * delta))
        worst = max(worst, abs(lhs - rhs))
    results.append(_check("identities", "global phase covariance", worst, 1e-10))

    worst = 0.0
    for _ in range(6):
        n = rng.choice([3, 4, 6, 8])
        cat = CatState(n=n, alpha=complex(rng.uniform(1.0, 3.0)))
        delta = rng.uniform(0.01, 0.5) * cmath.exp(1j * rng.uniform(0, 6.28))
        lhs = abs(exact_overlap(cat, delta))
        rhs = abs(exact_overlap(cat, cmath.exp(2j * math.pi / n) * delta))
        worst = max(worst, abs(lhs - rhs))
    results.append(_check("identities", "n-fold symmetry", worst, 1e-10))

    worst = 0.0
    for _ in range(4):
        n = rng.choice([2, 4, 6])
        cat = CatState(n=n, alpha=complex(rng.uniform(1.0, 2.5)))
        delta = rng.uniform(0.05, 0.4) * cmath.exp(1j * rng.uniform(0, 6.28))
        integral = wigner_overlap_integral(
            cat, delta, GridSpec.covering([c for c in _support(cat, delta)], nx=384, np_=384)
        )
        worst = max(worst, abs(integral - abs(exact_overlap(cat, delta)) ** 2))
    results.append(_check("identities", "wigner overlap integral", worst, 1e-3))

    worst = 0.0
    for n in (6, 12, 30):
        for a in (0.7, 2.3):
            chord_crit = DistinguishabilityCriterion.chord(3.1)
            over_crit = DistinguishabilityCriterion.overlap(math.exp(-0.5 * 3.1**2))
            if is_distinguishable(n, a * n / 3.0, chord_crit) != is_distinguishable(
                n, a * n / 3.0, over_crit
            ):
                worst = 1.0
    results.append(_check("identities", "criterion equivalence", worst, 0.0))

    return results


def _support(cat: CatState, delta: complex):
    from .states import components

    comps = components(cat)
    return comps + [c + delta for c in comps]


def _suite_oracle(rng: random.Random) -> list[CheckResult]:
    results = []
    worst = 0.0
    for _ in range(8):
        n = rng.choice([2, 3, 4, 6])
        mag = rng.choice([1.0, 2.0, 3.0])
        cat = CatState(n=n, alpha=mag * cmath.exp(1j * rng.uniform(0, 6.28)))
        delta = rng.choice([0.0, 0.1, 0.3]) * cmath.exp(1j * rng.uniform(0, 6.28))
        cutoff = recommended_cutoff(mag + abs(delta)) + 10
        diff = abs(exact_overlap(cat, delta) - oracle_overlap(cat, delta, cutoff))
        worst = max(worst, diff)
    results.append(_check("oracle", "exact vs truncated-basis overlap", worst, 1e-8))

    worst = 0.0
    cat = CatState(n=4, alpha=2.0 + 0j)
    base = exact_overlap(cat, 0.2 + 0.1j)
    for cutoff in (recommended_cutoff(2.4) + 10, 2 * (recommended_cutoff(2.4) + 10)):
        worst = max(worst, abs(base - oracle_overlap(cat, 0.2 + 0.1j, cutoff)))
    results.append(_check("oracle", "cutoff robustness", worst, 1e-8))

    worst = 0.0
    for _ in range(4):
        n = rng.choice([2, 4, 8])
        cat = CatState(n=n, alpha=complex(rng.uniform(1.0, 3.0)))
        delta = rng.uniform(0.02, 0.4) * cmath.exp(1j * rng.uniform(0, 6.28))
        worst = max(
            worst,
            abs(
                diagonal_approx_overlap(cat, delta, envelope=True)
                - _diagonal_restriction(cat, delta)
            ),
        )
    results.append(_check("oracle", "diagonal restriction consistency", worst, 1e-13))
    return results


def _diagonal_restriction(cat: CatState, delta: complex) -> float:
    # real part of the j = k restriction of the exact double sum
    from .states import components

    total = 0.0
    for a in components(cat):
        total += math.cos(2.0 * (delta * a.conjugate()).imag)
    return total / cat.n * math.exp(-0.5 * abs(delta) ** 2)


def _suite_quadrature(rng: random.Random) -> list[CheckResult]:
    results = []
    xs = [rng.uniform(0.0, 60.0) for _ in range(40)] + [0.0, 12.0, 16.0, 60.0]
    worst = max(abs(bessel_j0(x) - j0_integral_reference(x)) for x in xs)
    results.append(_check("quadrature", "J0 integral identity", worst, 1e-10))

    worst = max(j0_root(k).residual for k in range(1, 41))
    results.append(_check("quadrature", "J0 root residuals", worst, 1e-12))

    worst = abs(j0_root(1).value - 2.404825557695773)
    results.append(_check("quadrature", "first root value", worst, 1e-10))
    return results


_SUITE_RUNNERS = {
    "identities": _suite_identities,
    "oracle": _suite_oracle,
    "quadrature": _suite_quadrature,
}


def run_suites(names, seed: int = 0) -> tuple[list[CheckResult], bool]:
    """Run the named suites with a seeded RNG; returns (results, all_passed)."""
    results: list[CheckResult] = []
    for name in names:
        if name not in _SUITE_RUNNERS:
            raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
        results.extend(_SUITE_RUNNERS[name](random.Random(seed)))
    return results, all(r.passed for r in results)
