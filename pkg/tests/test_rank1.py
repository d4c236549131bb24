import math
from fractions import Fraction

import pytest

from heattrace.errors import BelowThresholdError, UnsupportedSpaceError
from heattrace.rank1 import (
    ScaledRational,
    SpaceModel,
    coefficient,
    cp_an,
    even_sphere_an,
    hp_an,
    op2_an,
    rank1_series,
    tail_split,
    volume,
)
from heattrace.series import APPROXIMATE, EXACT, UNAVAILABLE

from _oracles import cp_direct, hp_direct, op2_direct


def A(family, mbar, n):
    return coefficient(SpaceModel(family, mbar), n)


class TestScaledRational:
    def test_normalization_and_arithmetic(self):
        z = ScaledRational(Fraction(0), 5)
        assert z.pi_power == 0
        x = ScaledRational(Fraction(3, 4), 2)
        y = ScaledRational(Fraction(1, 4), 2)
        assert (x + y).rational == 1
        assert (x * y) == ScaledRational(Fraction(3, 16), 4)
        assert (x / y) == ScaledRational(Fraction(3), 0)
        assert float(ScaledRational(Fraction(2), 1)) == pytest.approx(2 * math.pi)

    def test_mixed_powers_rejected(self):
        with pytest.raises(ValueError):
            ScaledRational(Fraction(1), 1) + ScaledRational(Fraction(1), 2)
        with pytest.raises(ValueError):
            ScaledRational(Fraction(1), 1).as_fraction()


class TestSpheres:
    def test_s2_normalized_values(self):
        # classical unit 2-sphere expansion 1 + t/3 + t^2/15 + 4t^3/315 + ...
        assert A("sphere", 1, 1) == Fraction(1, 3)
        assert A("sphere", 1, 2) == Fraction(1, 15)
        assert A("sphere", 1, 3) == Fraction(4, 315)
        assert A("sphere", 1, 4) == Fraction(1, 315)

    def test_s4_normalized_values(self):
        # curvature invariants of the unit 4-sphere
        assert A("sphere", 2, 2) == Fraction(29, 15)
        assert A("sphere", 2, 3) == Fraction(74, 63)  # confirmed by spectral fit

    def test_volumes_match_textbook(self):
        assert volume("sphere", 1) == ScaledRational(Fraction(4), 1)       # 4 pi
        assert volume("sphere", 2) == ScaledRational(Fraction(8, 3), 2)    # 8 pi^2 / 3
        assert volume("sphere", 3) == ScaledRational(Fraction(16, 15), 3)  # 16 pi^3 / 15

    def test_an_carries_expected_pi_power(self):
        a = even_sphere_an(1, 3)
        assert a.pi_power == 1
        a = even_sphere_an(2, 2)
        assert a.pi_power == 2

    def test_threshold_rejected(self):
        with pytest.raises(BelowThresholdError):
            even_sphere_an(2, 1)
        with pytest.raises(BelowThresholdError):
            even_sphere_an(3, 2)

    def test_even_mbar_eventually_negative(self):
        assert even_sphere_an(2, 200).sign() == -1

    def test_odd_mbar_positive(self):
        assert even_sphere_an(1, 200).sign() == 1
        assert even_sphere_an(3, 200).sign() == 1


class TestComplexProjective:
    def test_threshold(self):
        with pytest.raises(BelowThresholdError):
            cp_an(3, 1)
        cp_an(3, 2)  # threshold itself is fine

    def test_cp2_low_order_values(self):
        # frozen from the tabulated formula (independent hand evaluation)
        assert A("complex_projective", 2, 1) == Fraction(29, 180)
        assert A("complex_projective", 2, 2) == Fraction(113, 11340)

    def test_cp2_eventually_negative(self):
        assert cp_an(2, 50).sign() == -1
        assert cp_an(2, 120).sign() == -1

    def test_cp3_positive(self):
        assert cp_an(3, 50).sign() == 1

    def test_bad_mbar(self):
        with pytest.raises(ValueError):
            cp_an(1, 5)

    def test_matches_independent_transliteration(self):
        for mbar, n in [(2, 1), (2, 2), (2, 17), (3, 2), (3, 3), (3, 16), (4, 9), (5, 8)]:
            assert cp_an(mbar, n).rational == Fraction(4 ** (mbar - 1)) * cp_direct(mbar, n)


class TestQuaternionicProjective:
    def test_threshold(self):
        with pytest.raises(BelowThresholdError):
            hp_an(2, 1)
        a = hp_an(2, 2)
        assert a.pi_power == 2  # (4 pi)^{2 mbar - 2}

    def test_eventually_negative(self):
        assert hp_an(2, 60).sign() == -1

    def test_tail_terms_share_sign_at_threshold(self):
        first, tail = tail_split("quaternionic_projective", 2, 2)
        assert tail.sign() == -1

    def test_matches_independent_transliteration(self):
        for mbar, n in [(2, 2), (2, 3), (2, 15), (3, 4), (3, 12), (4, 6)]:
            assert hp_an(mbar, n).rational == Fraction(4 ** (2 * mbar - 2)) * hp_direct(mbar, n)


class TestCayleyPlane:
    def test_threshold(self):
        with pytest.raises(BelowThresholdError):
            op2_an(6)

    def test_prefactor_pi_power(self):
        assert op2_an(7).pi_power == 8  # (4 pi)^8

    def test_matches_independent_naive_summation(self):
        for n in (7, 8, 20):
            a = op2_an(n)
            assert a.rational == Fraction(4 ** 8) * op2_direct(n)

    def test_eventually_negative(self):
        assert op2_an(60).sign() == -1


class TestFirstSumDecay:
    @pytest.mark.parametrize(
        "family,mbar,thr",
        [
            ("sphere", 1, 1),
            ("sphere", 2, 2),
            ("complex_projective", 2, 1),
            ("complex_projective", 3, 2),
            ("quaternionic_projective", 2, 2),
            ("cayley_plane", 2, 7),
        ],
    )
    def test_boundary_below_tail(self, family, mbar, thr):
        from heattrace.exactnum import log_abs

        for n in (4 * thr, 4 * thr + 1, 90):
            first, tail = tail_split(family, mbar, n)
            assert tail.rational != 0
            if first.rational != 0:
                assert log_abs(first.rational) < log_abs(tail.rational)


class TestSeriesAssembly:
    def test_a0_is_one(self):
        s = rank1_series(SpaceModel("sphere", 1), 0)
        assert s.coeffs == [Fraction(1)]
        assert s.validity == [EXACT]

    def test_gap_flags(self):
        s = rank1_series(SpaceModel("cayley_plane", 2), 10)
        assert s.validity[0] == EXACT
        assert all(f == UNAVAILABLE for f in s.validity[1:7])
        assert all(f == EXACT for f in s.validity[7:])
        assert all(s.coeffs[n] == 0 for n in range(1, 7))

    def test_noncompact_dual_flips_odd_signs(self):
        c = rank1_series(SpaceModel("sphere", 2), 8)
        d = rank1_series(SpaceModel("sphere", 2, signature="noncompact"), 8)
        for n in range(9):
            assert d[n] == (-1) ** n * c[n]
            assert d.validity[n] == c.validity[n]

    def test_scale_multiplies_powers(self):
        base = rank1_series(SpaceModel("sphere", 1), 6)
        scaled = rank1_series(SpaceModel("sphere", 1, scale=Fraction(4)), 6)
        for n in range(7):
            assert scaled[n] == 4 ** n * base[n]

    def test_oracle_fill_spheres_only(self):
        with pytest.raises(UnsupportedSpaceError):
            rank1_series(SpaceModel("complex_projective", 3), 5, fill="oracle")

    def test_oracle_fill_marks_approximate(self):
        s = rank1_series(SpaceModel("sphere", 2), 4, fill="oracle", oracle_precision=30)
        assert s.validity[1] == APPROXIMATE
        assert abs(float(s[1]) - 2.0) < 1e-8  # A_1(S^4) = tau/6 = 2
        assert s.validity[2] == EXACT

    def test_model_validation(self):
        with pytest.raises(UnsupportedSpaceError):
            SpaceModel("klein_bottle", 2)
        with pytest.raises(ValueError):
            SpaceModel("sphere", 0)
        with pytest.raises(ValueError):
            SpaceModel("complex_projective", 1)
        with pytest.raises(ValueError):
            SpaceModel("sphere", 1, scale=Fraction(-1))
        with pytest.raises(ValueError):
            SpaceModel("cayley_plane", 3)

    def test_dimensions(self):
        assert SpaceModel("sphere", 3).dimension == 6
        assert SpaceModel("complex_projective", 3).dimension == 6
        assert SpaceModel("quaternionic_projective", 2).dimension == 8
        assert SpaceModel("cayley_plane", 2).dimension == 16


class TestOracleCalibrationReport:
    """The projective families' normalization is not pinned by the spheres'
    oracle; comparisons go through a one-parameter homothety calibration and
    the resulting deviation is reported, not silently absorbed.  For the
    even-branch complex projective family the deviation is large and stable
    (the tabulated closed form is not a homothety of the Fubini-Study
    spectrum); this test freezes the measured report."""

    def test_cp2_calibrated_ratio_deviation(self):
        from heattrace.oracle import SpectrumLine, fit_coefficients

        def cp2_spectrum(k):
            return SpectrumLine(Fraction(k * (k + 2)), (k + 1) ** 3)

        fitted, _ = fit_coefficients(4, orders=3, precision=40,
                                     spectrum=cp2_spectrum)
        a1o, a2o = float(fitted[1]), float(fitted[2])
        a1c, a2c = A("complex_projective", 2, 1), A("complex_projective", 2, 2)
        calib = a1o / float(a1c)  # homothety from closed form to oracle scale
        deviation = float(a2c) * calib ** 2 / a2o - 1.0
        # exact spectral values: A_1 = 1, A_2 = 31/60
        assert abs(a1o - 1.0) < 1e-8
        assert abs(a2o - 31 / 60) < 1e-8
        assert 0.20 < -deviation < 0.30  # measured ~ -25.7%, recorded not patched
