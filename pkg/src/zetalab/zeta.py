"""Euler-Maclaurin zeta evaluation and the two zeta ratios.

Double precision only, with an explicit error estimate (magnitude of
the first omitted Bernoulli correction). The strip sigma > -1 with
|t| <= 100 covers every identity the workbench checks; there is no
functional-equation reflection and no Riemann-Siegel regime.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

from .compensated import ComplexCompensatedSum
from .errors import (
    DivisionInstabilityError,
    DomainError,
    PoleError,
    PrecisionError,
)
from .liouville import iter_lambda_segments

_SIGMA_FLOOR = -1.0
_T_CEILING = 100.0
_ZERO_GUARD = 1e-14


@dataclass(frozen=True)
class ZetaParams:
    """Euler-Maclaurin truncation policy.

    cutoff=None picks N = max(50, 2*(|t|+10)) at call time; an explicit
    cutoff below that floor is rejected rather than silently honored,
    since the tail expansion is asymptotic and needs N well past |t|.
    """

    cutoff: int | None = None
    bernoulli_terms: int = 8
    target_abs_error: float = 1e-12

    def __post_init__(self):
        if not 2 <= self.bernoulli_terms <= 15:
            raise DomainError("bernoulli_terms must be in [2, 15]")
        if self.cutoff is not None and self.cutoff < 2:
            raise DomainError("cutoff must be >= 2")
        if self.target_abs_error <= 0:
            raise DomainError("target_abs_error must be positive")


DEFAULT_PARAMS = ZetaParams()


@lru_cache(maxsize=32)
def _even_bernoulli(kmax: int) -> tuple[float, ...]:
    # B_2, B_4, ..., B_{2*kmax}
    b = bernoulli(2 * kmax)
    return tuple(float(b[2 * k]) for k in range(1, kmax + 1))


def zeta_with_error(s: complex, params: ZetaParams = DEFAULT_PARAMS) -> tuple[complex, float]:
    """zeta(s) plus an absolute error estimate.

    The estimate is the magnitude of the first omitted correction term,
    the standard heuristic for this alternating asymptotic tail.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real <= _SIGMA_FLOOR:
        raise DomainError(f"sigma must exceed {_SIGMA_FLOOR}")
    if abs(s.imag) > _T_CEILING:
        raise DomainError(f"|t| must not exceed {_T_CEILING}")

    floor = 2.0 * (abs(s.imag) + 10.0)
    if params.cutoff is None:
        n_cut = max(50, math.ceil(floor))
    else:
        n_cut = params.cutoff
        if n_cut < floor:
            raise DomainError(
                f"cutoff {n_cut} below stability floor {floor:.0f} for t={s.imag}"
            )

    ns = np.arange(1, n_cut, dtype=np.float64)
    head_terms = np.exp(-s * np.log(ns))
    head = complex(math.fsum(head_terms.real), math.fsum(head_terms.imag))

    nf = float(n_cut)
    value = head + nf ** (1 - s) / (s - 1) + 0.5 * nf ** -s

    kmax = params.bernoulli_terms
    b2k = _even_bernoulli(kmax + 1)
    poch = s  # (s)_1
    fact = 2.0  # (2k)! at k=1
    npow = nf ** (-s - 1)  # N^{-s-2k+1} at k=1
    n2 = nf * nf
    term = 0j
    for k in range(1, kmax + 1):
        term = (b2k[k - 1] / fact) * poch * npow
        value += term
        # advance to k+1: multiply Pochhammer by next two factors, etc.
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        fact *= (2 * k + 1) * (2 * k + 2)
        npow /= n2
    omitted = (b2k[kmax] / fact) * poch * npow
    err = abs(omitted)
    if err > params.target_abs_error:
        raise PrecisionError(
            f"estimated error {err:.3e} exceeds target {params.target_abs_error:.1e};"
            " raise cutoff or bernoulli_terms"
        )
    return value, err


def zeta(s: complex, params: ZetaParams = DEFAULT_PARAMS) -> complex:
    """Riemann zeta at s (sigma > -1, |t| <= 100, s != 1)."""
    return zeta_with_error(s, params)[0]


def zeta_ratio(s: complex, params: ZetaParams = DEFAULT_PARAMS) -> complex:
    """zeta(2s)/zeta(s) for sigma > 1/2.

    s = 1 is rejected outright: the denominator pole would make the
    ratio 0 only in a limit sense, and uniform domain handling is worth
    more here than that single point.
    """
    s = complex(s)
    if s.real <= 0.5:
        raise DomainError("zeta_ratio needs sigma > 1/2")
    if s == 1 or 2 * s == 1:
        raise DomainError("zeta_ratio is not evaluated at zeta poles")
    den = zeta(s, params)
    if abs(den) < _ZERO_GUARD:
        raise DivisionInstabilityError(f"|zeta({s})| < {_ZERO_GUARD}")
    return zeta(2 * s, params) / den


def shifted_ratio(s: complex, params: ZetaParams = DEFAULT_PARAMS) -> complex:
    """zeta(2s+1)/zeta(s+1/2) for sigma > 1/2.

    Note shifted_ratio(s) = zeta_ratio(s + 1/2), so e.g. s = 1.5 gives
    zeta(4)/zeta(2).
    """
    s = complex(s)
    if s.real <= 0.5:
        raise DomainError("shifted_ratio needs sigma > 1/2")
    den = zeta(s + 0.5, params)
    if abs(den) < _ZERO_GUARD:
        raise DivisionInstabilityError(f"|zeta({s + 0.5})| < {_ZERO_GUARD}")
    return zeta(2 * s + 1, params) / den


def lambda_series(
    s: complex,
    n_terms: int,
    *,
    segment_size: int | None = None,
    threads: int | None = None,
) -> complex:
    """Truncated Liouville Dirichlet series sum_{n<=N} lambda(n) n^{-s}.

    Converges to zeta(2s)/zeta(s) for sigma > 1 as N grows; the caller
    shifts the argument to get the n^{-s-1/2} variant.
    """
    n_terms = int(n_terms)
    if n_terms < 1:
        raise DomainError("lambda_series needs N >= 1")
    s = complex(s)
    acc = ComplexCompensatedSum()
    for lo, lam in iter_lambda_segments(
        1, n_terms + 1, segment_size=segment_size, threads=threads
    ):
        ns = np.arange(lo, lo + len(lam), dtype=np.float64)
        terms = lam * np.exp(-s * np.log(ns))
        acc.add_array(terms)
    return acc.value


@dataclass(frozen=True)
class RealBounds:
    """One sample of the elementary sandwich 1/(sigma-1) < zeta < sigma/(sigma-1)."""

    sigma: float
    lower: float
    value: float
    upper: float
    passed: bool


def real_bounds_check(sigma: float, params: ZetaParams = DEFAULT_PARAMS) -> RealBounds:
    """Check the real-axis sandwich at one sigma > 0, sigma != 1."""
    sigma = float(sigma)
    if sigma == 1:
        raise PoleError("bounds undefined at sigma = 1")
    if sigma <= 0:
        raise DomainError("real_bounds_check needs sigma > 0")
    val = zeta(complex(sigma), params).real
    lower = 1.0 / (sigma - 1.0)
    upper = sigma / (sigma - 1.0)
    return RealBounds(sigma, lower, val, upper, lower < val < upper)
