import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heattrace.series import (
    APPROXIMATE,
    EXACT,
    UNAVAILABLE,
    HeatSeries,
    dualize,
    product,
    rescale,
)

frac = st.fractions(min_value=-10, max_value=10, max_denominator=60)


def hseries(draw_coeffs):
    return HeatSeries(list(draw_coeffs), provenance="t")


series_strategy = st.lists(frac, min_size=1, max_size=8).map(hseries)


def exp_series(kappa, n_max):
    return HeatSeries([Fraction(kappa) ** n / math.factorial(n) for n in range(n_max + 1)])


def test_product_identity():
    a = HeatSeries([Fraction(3), Fraction(1, 2), Fraction(-7)])
    one = HeatSeries([Fraction(1), Fraction(0), Fraction(0)])
    assert product(a, one).coeffs == a.coeffs


def test_product_of_dual_exponentials_vanishes():
    h3 = exp_series(Fraction(-1, 4), 100)
    s3 = dualize(h3)
    prod = product(h3, s3)
    assert prod[0] == 1
    assert all(prod[n] == 0 for n in range(1, 101))


def test_dualize_values():
    h3 = exp_series(Fraction(-1, 4), 10)
    s3 = dualize(h3)
    for n in range(11):
        assert s3[n] == Fraction(1, 4) ** n / math.factorial(n)


def test_rescale_values_and_errors():
    h3 = exp_series(Fraction(-1, 4), 10)
    unit = rescale(dualize(h3), 4)
    for n in range(11):
        assert unit[n] == Fraction(1, math.factorial(n))
    with pytest.raises(ValueError):
        rescale(h3, 0)
    with pytest.raises(ValueError):
        rescale(h3, Fraction(-1, 2))


def test_rescale_identity_and_composition():
    a = HeatSeries([Fraction(1), Fraction(2), Fraction(3)])
    assert rescale(a, 1).coeffs == a.coeffs
    assert rescale(rescale(a, Fraction(2, 3)), Fraction(9, 2)).coeffs == rescale(a, 3).coeffs


@given(series_strategy, series_strategy)
def test_product_commutes(a, b):
    assert product(a, b).coeffs == product(b, a).coeffs


@given(series_strategy, series_strategy, series_strategy)
def test_product_associates(a, b, c):
    assert product(product(a, b), c).coeffs == product(a, product(b, c)).coeffs


@given(series_strategy, series_strategy, st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=40))
def test_rescale_is_ring_homomorphism(a, b, c2):
    lhs = rescale(product(a, b), c2)
    rhs = product(rescale(a, c2), rescale(b, c2))
    assert lhs.coeffs == rhs.coeffs


@given(series_strategy)
def test_dualize_is_involution(a):
    assert dualize(dualize(a)).coeffs == a.coeffs


@given(series_strategy)
def test_product_with_dual_is_even(a):
    p = product(a, dualize(a))
    assert all(p[n] == 0 for n in range(1, p.n_max + 1, 2))


def test_validity_propagates_pessimistically():
    a = HeatSeries([Fraction(1), Fraction(2), Fraction(3)], [EXACT, APPROXIMATE, EXACT])
    b = HeatSeries([Fraction(1), Fraction(5), Fraction(7)], [EXACT, EXACT, UNAVAILABLE])
    p = product(a, b)
    assert p.validity == [EXACT, APPROXIMATE, UNAVAILABLE]
    assert dualize(a).validity == a.validity
    assert rescale(a, 2).validity == a.validity


def test_flags_validated():
    with pytest.raises(ValueError):
        HeatSeries([Fraction(1)], ["bogus"])
    with pytest.raises(ValueError):
        HeatSeries([])
