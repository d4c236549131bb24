"""Independent spectral verification oracle.

Everything here is deliberately disjoint from the closed-form machinery: the
heat trace is summed directly over the exact unit-sphere spectrum with
multiprecision exponentials, and asymptotic coefficients are recovered by a
least-squares fit on a geometric time ladder.  Agreement between these fits
and the exact closed forms is the package's primary end-to-end validation.

Built-in targets are the unit round spheres S^m (m >= 2), whose spectra and
volumes are elementary and unimpeachable.  Other spaces can be probed through
the ``spectrum`` extension hook of :func:`heat_trace` and
:func:`fit_coefficients`, but no non-sphere target is endorsed as an oracle:
the projective families' homothety normalization is not pinned by anything
this package computes, so those comparisons are calibration-and-report only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath as mp

from .errors import IllConditionedFitError, SafetyLimitError
from .rank1 import ScaledRational

__all__ = [
    "SpectrumLine",
    "sphere_spectrum",
    "sphere_volume",
    "heat_trace",
    "default_grid",
    "fit_coefficients",
]

_MAX_TERMS = 2_000_000


@dataclass(frozen=True)
class SpectrumLine:
    """One Laplace eigenvalue with its multiplicity."""

    eigenvalue: Fraction
    multiplicity: int


def sphere_spectrum(m: int, k: int) -> SpectrumLine:
    """Level k of the unit sphere S^m: eigenvalue k(k+m-1), harmonic dimension.

    The multiplicity is the dimension of the degree-k spherical harmonics,
    C(k+m, m) - C(k+m-2, m).
    """
    if m < 2:
        raise ValueError("sphere dimension must be >= 2")
    if k < 0:
        raise ValueError("level must be nonnegative")
    if k == 0:
        mult = 1
    else:
        mult = math.comb(k + m, m) - math.comb(k + m - 2, m)
    return SpectrumLine(Fraction(k * (k + m - 1)), mult)


def sphere_volume(m: int) -> ScaledRational:
    """Volume of the unit sphere S^m as an exact rational times a pi power."""
    if m < 1:
        raise ValueError("sphere dimension must be >= 1")
    if m % 2 == 0:
        k = m // 2
        return ScaledRational(Fraction(2 * 4 ** k * math.factorial(k), math.factorial(2 * k)), k)
    q = (m + 1) // 2
    return ScaledRational(Fraction(2, math.factorial(q - 1)), q)


def _sum_spectrum(spectrum: Callable[[int], SpectrumLine], t: mp.mpf, digits: int) -> mp.mpf:
    """Sum mult * exp(-t * eig) until the geometric tail bound is negligible."""
    total = mp.mpf(0)
    prev = mp.mpf("inf")
    cutoff = mp.mpf(10) ** (-digits)
    q = mp.exp(-t)  # exp(-t * eig) = q^eig for integer eigenvalues
    k = 0
    while True:
        if k > _MAX_TERMS:
            raise SafetyLimitError(
                f"heat trace at t={float(t)} needs more than {_MAX_TERMS} terms"
            )
        line = spectrum(k)
        eig = line.eigenvalue
        if eig.denominator == 1:
            weight = q ** eig.numerator
        else:
            weight = mp.exp(-t * mp.mpf(eig.numerator) / eig.denominator)
        term = line.multiplicity * weight
        total += term
        # past the peak, terms decay faster than geometrically with ratio 1/2
        if term < prev and term < cutoff * total and 2 * term < prev:
            break
        prev = term
        k += 1
    return total


def _sum_sphere(m: int, t: mp.mpf, digits: int) -> mp.mpf:
    """Sphere specialization: the eigenvalue gaps are an arithmetic ladder,
    so consecutive Boltzmann weights differ by a geometric update and the
    whole sum needs two multiplications per level."""
    cutoff = mp.mpf(10) ** (-digits)
    total = mp.mpf(1)  # k = 0 term
    weight = mp.mpf(1)
    step = mp.exp(-t * m)      # exp(-t(lambda_{k+1}-lambda_k)) at k = 0
    step_ratio = mp.exp(-2 * t)
    prev = mp.mpf("inf")
    k = 1
    while True:
        if k > _MAX_TERMS:
            raise SafetyLimitError(
                f"heat trace at t={float(t)} needs more than {_MAX_TERMS} terms"
            )
        weight *= step
        step *= step_ratio
        term = (math.comb(k + m, m) - math.comb(k + m - 2, m)) * weight
        total += term
        if term < prev and term < cutoff * total and 2 * term < prev:
            break
        prev = term
        k += 1
    return total


def heat_trace(m: int, t: Fraction | int, precision: int = 50,
               spectrum: Callable[[int], SpectrumLine] | None = None) -> mp.mpf:
    """Tr e^{-t Laplacian} summed to ``precision`` decimal digits.

    ``t`` is an exact rational (kept exact until the multiprecision
    exponentials); the truncation tail is bounded by geometric domination and
    pushed below 10^-precision relative.  Pass ``spectrum`` to sum a custom
    discrete spectrum instead of the unit-sphere one.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    if not 1 <= precision <= 500:
        raise ValueError("precision must lie in [1, 500]")
    with mp.workdps(precision + 15):
        tt = mp.mpf(t.numerator) / t.denominator
        if spectrum is None:
            if m < 2:
                raise ValueError("sphere dimension must be >= 2")
            return _sum_sphere(m, tt, precision + 10)
        return _sum_spectrum(spectrum, tt, precision + 10)


def default_grid(orders: int, t0: Fraction = Fraction(1, 8), points: int | None = None) -> list[Fraction]:
    """Geometric ladder t0, t0/2, t0/4, ... sized for a degree-`orders` fit."""
    if points is None:
        points = orders + 12
    return [t0 / 2 ** j for j in range(points)]


def fit_coefficients(m: int, orders: int, t_grid: list[Fraction] | None = None,
                     precision: int = 50,
                     spectrum: Callable[[int], SpectrumLine] | None = None,
                     volume: ScaledRational | None = None,
                     guard_terms: int = 6):
    """Least-squares estimates of the normalized coefficients A_0..A_orders.

    Samples R(t) = (4 pi t)^{m/2} * trace(t) / Vol on a geometric ladder and
    fits a polynomial of degree orders + guard_terms with column scaling; the
    guard terms absorb the truncated high-order behavior so the reported
    coefficients are clean.  Returns ``(values, errors)`` where ``errors``
    are residual-based per-coefficient estimates.  Refuses with
    :class:`IllConditionedFitError` when the scaled system's condition number
    would eat the working precision.

    For a custom ``spectrum`` without a known ``volume`` the coefficients are
    normalized by the fitted leading coefficient instead (A_0 = 1 by fiat).
    """
    if orders < 0:
        raise ValueError("orders must be nonnegative")
    if t_grid is None:
        t_grid = default_grid(orders)
    if len(t_grid) < max(2 * orders, orders + guard_terms + 2):
        raise ValueError("t_grid has too few points for a stable fit")
    ncols = orders + guard_terms + 1
    with mp.workdps(precision + 30):
        if volume is not None:
            vol = mp.mpf(volume.rational.numerator) / volume.rational.denominator
            vol *= mp.pi ** volume.pi_power
        elif spectrum is None:
            sv = sphere_volume(m)
            vol = mp.mpf(sv.rational.numerator) / sv.rational.denominator * mp.pi ** sv.pi_power
        else:
            vol = mp.mpf(1)
        rows = []
        rhs = []
        for t in t_grid:
            t = Fraction(t)
            tr = heat_trace(m, t, precision, spectrum)
            tt = mp.mpf(t.numerator) / t.denominator
            r = (4 * mp.pi * tt) ** (mp.mpf(m) / 2) * tr / vol
            rows.append([tt ** i for i in range(ncols)])
            rhs.append(r)
        scales = [max(abs(rows[j][i]) for j in range(len(rows))) for i in range(ncols)]
        A = mp.matrix(len(rows), ncols)
        for j in range(len(rows)):
            for i in range(ncols):
                A[j, i] = rows[j][i] / scales[i]
        b = mp.matrix(rhs)
        sing = mp.svd_r(A, compute_uv=False)
        smax, smin = sing[0], sing[len(sing) - 1]
        if smin <= 0 or smax / smin > mp.mpf(10) ** (precision + 10):
            raise IllConditionedFitError(
                f"fit condition number {mp.nstr(smax / (smin or mp.mpf('1e-999')), 5)} "
                "exceeds the working precision; refusing to return garbage"
            )
        x, _ = mp.qr_solve(A, b)
        resid = A * x - b
        rnorm = mp.norm(resid)
        values = [x[i] / scales[i] for i in range(ncols)]
        # the residual misses truncation bias at the largest t; inflate by 10
        errors = [10 * max(rnorm / smin, mp.mpf(10) ** (-(precision - 2))) / scales[i]
                  for i in range(ncols)]
        if volume is None and spectrum is not None:
            lead = values[0]
            values = [v / lead for v in values]
            errors = [e / abs(lead) for e in errors]
    return values[: orders + 1], errors[: orders + 1]
