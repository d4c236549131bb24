"""Truncated heat-coefficient series and their algebra.

A :class:`HeatSeries` holds the normalized coefficients A_0..A_N of a heat
trace expansion together with a per-index validity flag.  Three operations
mirror how the underlying spaces combine: Cauchy product (Riemannian
products), coefficient sign flip (compact/noncompact duality, t -> -t), and
geometric rescaling (homothety, t -> c2*t).

Validity flags propagate pessimistically: an operation never upgrades a
flag, and a product coefficient is only as trustworthy as the weakest flag
among all pairs that contribute to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

EXACT = "exact"
APPROXIMATE = "approximate"
UNAVAILABLE = "unavailable"

_RANK = {UNAVAILABLE: 0, APPROXIMATE: 1, EXACT: 2}
_BY_RANK = {v: k for k, v in _RANK.items()}

__all__ = ["HeatSeries", "product", "dualize", "rescale", "EXACT", "APPROXIMATE", "UNAVAILABLE"]


@dataclass
class HeatSeries:
    """Coefficients A_0..A_{n_max} with validity flags and provenance."""

    coeffs: list[Fraction]
    validity: list[str] = field(default_factory=list)
    provenance: str = ""

    def __post_init__(self) -> None:
        self.coeffs = [Fraction(c) for c in self.coeffs]
        if not self.coeffs:
            raise ValueError("a series needs at least the index-0 coefficient")
        if not self.validity:
            self.validity = [EXACT] * len(self.coeffs)
        if len(self.validity) != len(self.coeffs):
            raise ValueError("validity flags must match coefficients")
        for flag in self.validity:
            if flag not in _RANK:
                raise ValueError(f"unknown validity flag {flag!r}")

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def is_exact_on(self, lo: int, hi: int) -> bool:
        return all(f == EXACT for f in self.validity[lo : hi + 1])

    def truncated(self, n_max: int) -> "HeatSeries":
        if n_max > self.n_max:
            raise ValueError("cannot extend a series by truncation")
        return HeatSeries(
            self.coeffs[: n_max + 1], self.validity[: n_max + 1], self.provenance
        )


def product(a: HeatSeries, b: HeatSeries) -> HeatSeries:
    """Exact Cauchy product, truncated to the shorter operand."""
    n_max = min(a.n_max, b.n_max)
    coeffs: list[Fraction] = []
    flags: list[str] = []
    for n in range(n_max + 1):
        acc = Fraction(0)
        rank = _RANK[EXACT]
        for i in range(n + 1):
            acc += a.coeffs[i] * b.coeffs[n - i]
            rank = min(rank, _RANK[a.validity[i]], _RANK[b.validity[n - i]])
        coeffs.append(acc)
        flags.append(_BY_RANK[rank])
    return HeatSeries(coeffs, flags, f"product({a.provenance}, {b.provenance})")


def dualize(a: HeatSeries) -> HeatSeries:
    """Sign flip A_n -> (-1)^n A_n (series of the curvature-flipped dual)."""
    coeffs = [c if n % 2 == 0 else -c for n, c in enumerate(a.coeffs)]
    return HeatSeries(coeffs, list(a.validity), f"dual({a.provenance})")


def rescale(a: HeatSeries, c2: Fraction | int) -> HeatSeries:
    """Homothety action A_n -> c2^n A_n for a positive rational c2."""
    c2 = Fraction(c2)
    if c2 <= 0:
        raise ValueError("rescale factor must be positive")
    coeffs = []
    power = Fraction(1)
    for c in a.coeffs:
        coeffs.append(c * power)
        power *= c2
    return HeatSeries(coeffs, list(a.validity), f"scale({a.provenance}, {c2})")
