import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from fpzeta.errors import DomainError
from fpzeta.hurwitz import TrigammaConfig, bracket_coeff, hurwitz2, hurwitz_integrand, large_s_threshold


@pytest.mark.parametrize("z", ["0.01", "0.3", "1", "5", "12.5", "1000"])
@pytest.mark.parametrize("prec", [15, 40])
def test_against_mpmath(z, prec):
    with mp.workdps(prec + 20):
        ref = mp.zeta(2, mpf(z))
        assert abs(hurwitz2(z, prec) - ref) <= mpf(10) ** (-prec) * ref


def test_zeta2_at_one():
    with mp.workdps(40):
        assert abs(hurwitz2(1, 30) - mp.pi**2 / 6) < mpf(10) ** -28


@pytest.mark.parametrize("z", ["0.3", "1", "5"])
def test_recurrence(z):
    z = mpf(z)
    prec = 25
    with mp.workdps(prec + 10):
        diff = hurwitz2(z, prec) - hurwitz2(z + 1, prec)
        assert abs(diff - 1 / z**2) <= mpf(10) ** (2 - prec) / z**2


@given(st.floats(0.05, 200), st.floats(0.001, 5))
@settings(max_examples=60, deadline=None)
def test_positive_decreasing(z, dz):
    a = hurwitz2(z)
    b = hurwitz2(z + dz)
    assert a > b > 0


def test_config_validation():
    with pytest.raises(ValueError):
        TrigammaConfig(recurrence_threshold=2)
    with pytest.raises(ValueError):
        TrigammaConfig(asympt_terms=0)
    few = TrigammaConfig(asympt_terms=3)
    assert abs(hurwitz2("2.5", 15, few) - hurwitz2("2.5", 15)) < 1e-15


def test_domain():
    with pytest.raises(DomainError):
        hurwitz2(0)
    with pytest.raises(DomainError):
        hurwitz_integrand(1, -1)
    with pytest.raises(ValueError):
        hurwitz_integrand(0, 1)


def test_integrand_small_s():
    # l = n term survives at s = 0: (2^2 - 2) B_2 = 1/3
    assert abs(hurwitz_integrand(1, 0) - mpf(1) / 3) < 1e-15
    assert abs(hurwitz_integrand(1, 1) - (mp.pi**2 / 12 - mpf(2) / 3)) < 1e-15


def test_integrand_large_s_leading_order():
    v = hurwitz_integrand(1, 1000)
    assert abs(v / (mpf(7) / 15 * mpf(10) ** -6) - 1) < 1e-5


@pytest.mark.parametrize("s", [50, 100, 500])
@pytest.mark.parametrize("n", [1, 3])
def test_expansion_matches_direct(s, n):
    asym = hurwitz_integrand(n, s, prec=30)
    assert s > large_s_threshold(n, 30) or s <= large_s_threshold(n, 30)
    with mp.workdps(120):
        s_ = mpf(s)
        direct = s_ ** (2 * n + 1) * mp.zeta(2, (s_ + 1) / 2) / 2
        for l in range(n + 1):
            c = bracket_coeff(l)
            direct += mpf(c.numerator) / c.denominator * s_ ** (2 * n - 2 * l)
    assert abs(asym - direct) <= mpf(10) ** -8 * abs(direct)


def test_threshold_range():
    assert 20 <= large_s_threshold(1, 15) <= 1e4
    assert large_s_threshold(6, 200) >= large_s_threshold(6, 15)
