"""Generating-polynomial coefficient tables for the rank-one closed forms.

Each table lists the even-power coefficients of a product of exact monic
quadratics (s^2 - j^2) over a family-specific set of roots j, expanded with
exact rational arithmetic.  The tables obey strict alternating-sign laws that
the downstream no-cancellation arguments rely on; :func:`expected_signs`
exposes those laws so both the evaluators and the test suite can assert them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

Family = Literal["beta", "gamma", "delta", "eta"]

__all__ = [
    "SignedTable",
    "beta_table",
    "gamma_table",
    "delta_table",
    "eta_table",
    "expected_signs",
]


@dataclass(frozen=True)
class SignedTable:
    """Coefficients c_k of an even polynomial sum_k c_k s^{2k}."""

    values: tuple[Fraction, ...]
    family: Family
    param: int | None = None

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def eval_at(self, s: Fraction) -> Fraction:
        """Evaluate the even polynomial at the point s."""
        s2 = s * s
        acc = Fraction(0)
        for c in reversed(self.values):
            acc = acc * s2 + c
        return acc


def _mul_quadratic(coeffs: list[Fraction], root_sq: Fraction) -> list[Fraction]:
    # multiply sum c_k x^k by (x - root_sq), working in x = s^2
    out = [Fraction(0)] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k + 1] += c
        out[k] -= c * root_sq
    return out


def _half_integers(count: int) -> list[Fraction]:
    """The first ``count`` positive half-integers 1/2, 3/2, ..."""
    return [Fraction(2 * i + 1, 2) for i in range(count)]


def beta_table(mbar: int) -> SignedTable:
    """Coefficients of prod_{j in {1/2,...,mbar-3/2}} (s^2 - j^2).

    The product runs over the mbar-1 smallest positive non-integer
    half-integers (empty for mbar = 1, where the table is [1]).  The list has
    length mbar and is monic: beta[mbar-1] = 1.
    """
    if mbar < 1:
        raise ValueError("beta_table requires mbar >= 1")
    coeffs = [Fraction(1)]
    for j in _half_integers(mbar - 1):
        coeffs = _mul_quadratic(coeffs, j * j)
    return SignedTable(tuple(coeffs), "beta", mbar)


def gamma_table(mbar: int) -> SignedTable:
    """Coefficients of the squared shifted-index multiplicity product.

    For odd mbar this is prod_{j in {1/2,...,mbar/2-1}} (s^2 - j^2)^2 (the
    j run over half-integers); for even mbar the shifted linear product picks
    up the root 0, and its square is s^2 * prod_{j=1}^{mbar/2-1} (s^2 - j^2)^2.
    Both cases have degree 2(mbar-1), hence a table of length mbar.
    """
    if mbar < 2:
        raise ValueError("gamma_table requires mbar >= 2")
    coeffs = [Fraction(1)]
    if mbar % 2 == 1:
        for j in _half_integers((mbar - 1) // 2):
            coeffs = _mul_quadratic(coeffs, j * j)
            coeffs = _mul_quadratic(coeffs, j * j)
    else:
        for i in range(1, mbar // 2):
            j = Fraction(i)
            coeffs = _mul_quadratic(coeffs, j * j)
            coeffs = _mul_quadratic(coeffs, j * j)
        coeffs = [Fraction(0)] + coeffs  # the s^2 factor
    return SignedTable(tuple(coeffs), "gamma", mbar)


def delta_table(mbar: int) -> SignedTable:
    """Coefficients of the two-range half-integer product.

    prod_{j in {1/2,...,mbar-3/2}} (s^2-j^2) * prod_{j in {1/2,...,mbar-5/2}}
    (s^2-j^2); the second product is empty for mbar = 2.  Length 2*mbar - 2,
    monic top coefficient.
    """
    if mbar < 2:
        raise ValueError("delta_table requires mbar >= 2")
    coeffs = [Fraction(1)]
    for j in _half_integers(mbar - 1):
        coeffs = _mul_quadratic(coeffs, j * j)
    for j in _half_integers(mbar - 2):
        coeffs = _mul_quadratic(coeffs, j * j)
    return SignedTable(tuple(coeffs), "delta", mbar)


_ETA = (
    Fraction(-8037225, 16384),
    Fraction(18455239, 4096),
    Fraction(-13020525, 1024),
    Fraction(2858418, 256),
    Fraction(-262075, 64),
    Fraction(10437, 16),
    Fraction(-170, 4),
    Fraction(1),
)


def eta_table() -> SignedTable:
    """The fixed eight-entry coefficient table of the Cayley-plane closed form."""
    return SignedTable(_ETA, "eta", None)


def expected_signs(table: SignedTable) -> list[int]:
    """The sign law each table obeys: +1, -1 per entry, or 0 where it vanishes.

    beta:  sign(beta_j)  = (-1)^(j + mbar - 1), all entries nonzero;
    gamma: odd mbar  -> sign(gamma_l) = (-1)^l, all entries nonzero;
           even mbar -> gamma_0 = 0 and sign(gamma_l) = (-1)^(l-1) for l >= 1;
    delta: sign(delta_k) = (-1)^(k+1);
    eta:   sign(eta_i) = (-1)^(i+1) with |eta_i| >= 1.
    """
    n = len(table)
    if table.family == "beta":
        assert table.param is not None
        return [(-1) ** (j + table.param - 1) for j in range(n)]
    if table.family == "gamma":
        assert table.param is not None
        if table.param % 2 == 1:
            return [(-1) ** l for l in range(n)]
        return [0] + [(-1) ** (l - 1) for l in range(1, n)]
    if table.family == "delta":
        return [(-1) ** (k + 1) for k in range(n)]
    return [(-1) ** (i + 1) for i in range(n)]
