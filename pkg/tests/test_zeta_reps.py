import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from fpzeta.errors import ToleranceNotReached
from fpzeta.fpi import fpi_csch_semi_infinite
from fpzeta.quadrature import QuadConfig
from fpzeta.zeta_reps import (
    MethodId,
    alternating_sum,
    main_theorem_convert,
    prefactor,
    residue_sum_check,
    residue_tail_bound,
    zeta_odd,
    zeta_oracle,
)

INTEGRAL_METHODS = [MethodId.B_SPLIT, MethodId.SUBTRACTED, MethodId.DERIV, MethodId.HURWITZ]


def mp_zeta(s):
    with mp.workdps(50):
        return mp.zeta(s)


def test_oracle_against_direct_sum():
    # 10^7 terms of sum k^-3 in float64 plus integral bounds on the tail
    n_terms = 10**7
    k = np.arange(1, n_terms + 1, dtype=np.float64)
    partial = math.fsum(np.sort(1.0 / k**3))
    lo = partial + 1 / (2 * (n_terms + 1) ** 2)
    hi = partial + 1 / (2 * n_terms**2)
    value = float(zeta_odd(1, MethodId.ORACLE).value)
    assert lo - 1e-14 <= value <= hi + 1e-14
    assert abs(value - 1.20205690315959) < 1e-14


@pytest.mark.parametrize("s", [3, 5, 7, 13, 21])
@pytest.mark.parametrize("prec", [15, 60])
def test_oracle_against_mpmath(s, prec):
    value, err = zeta_oracle(s, prec)
    with mp.workdps(prec + 20):
        assert abs(value - mp.zeta(s)) <= err
        assert err < mpf(10) ** (-prec)


def test_alternating_sum_log2():
    with mp.workdps(30):
        got = alternating_sum(lambda k: 1 / mpf(k + 1), 45)
        assert abs(got - mp.log(2)) < mpf(10) ** -28


def test_prefactors():
    assert prefactor(1, MethodId.SUBTRACTED) == (Fraction(4, 3), 2)
    assert prefactor(2, MethodId.B_SPLIT) == (Fraction(-16, 15), 4)
    # HURWITZ at n = 1: 4 pi^2 / (3 * 3!) = 2 pi^2 / 9
    assert prefactor(1, MethodId.HURWITZ) == (Fraction(2, 9), 2)
    for n in range(1, 10):
        sub, e1 = prefactor(n, MethodId.SUBTRACTED)
        der, e2 = prefactor(n, MethodId.DERIV)
        assert e1 == e2 and der == sub / math.factorial(2 * n + 1)
        assert prefactor(n, MethodId.HURWITZ) == prefactor(n, MethodId.DERIV)


def test_main_theorem_convert():
    with mp.workdps(30):
        assert abs(main_theorem_convert(1, 3 / (4 * mp.pi**2)) - 1) < mpf(10) ** -28
        assert abs(main_theorem_convert(1, mpf("0.09134537117518")) - mpf("1.2020569031596")) < 1e-12
        # the sign flip at n = 2 recovers a positive value
        v = main_theorem_convert(2, mpf("-0.00997976431284"))
        assert abs(v - mpf("1.0369277551434")) < 1e-11


@pytest.mark.parametrize("n", range(1, 7))
def test_round_trip(n):
    v = main_theorem_convert(n, fpi_csch_semi_infinite(n).value)
    assert abs(v - zeta_odd(n).value) < 1e-12


@pytest.mark.parametrize("n", [1, 3, 5])
@pytest.mark.parametrize("method", list(MethodId))
def test_methods_against_mpmath(n, method):
    r = zeta_odd(n, method)
    with mp.workdps(40):
        err = abs(r.value - mp_zeta(2 * n + 1))
    assert err < 1e-12
    assert err <= 10 * r.error_estimate
    assert r.evaluations > 0 and r.wall_time >= 0
    assert 1 < r.value < 1.21


def test_deriv_zeta7():
    assert abs(zeta_odd(3, MethodId.DERIV).value - mpf("1.00834927738192")) < 1e-13


@pytest.mark.parametrize("method", INTEGRAL_METHODS)
def test_high_precision(method):
    r = zeta_odd(2, method, prec=30)
    with mp.workdps(50):
        assert abs(r.value - mp_zeta(5)) < mpf(10) ** -28


def test_loose_tolerance_is_cheaper():
    loose = zeta_odd(2, MethodId.HURWITZ, tol=1e-6)
    tight = zeta_odd(2, MethodId.HURWITZ, tol=1e-12)
    assert loose.evaluations < tight.evaluations
    assert abs(loose.value - mp_zeta(5)) < 1e-6


def test_monotone_toward_one():
    values = [zeta_odd(n).value for n in range(1, 13)]
    assert all(a > b for a, b in zip(values, values[1:]))
    for n in range(2, 13):
        assert 0 < values[n - 1] - 1 < 2.0 ** (-2 * n)


@given(st.integers(1, 12), st.sampled_from([0.3, 0.9, 1.7, 2.9]))
@settings(max_examples=15, deadline=None)
def test_b_split_any_b(n, b):
    r = zeta_odd(n, MethodId.B_SPLIT, b=b)
    assert abs(r.value - mp_zeta(2 * n + 1)) < 1e-12


def test_tolerance_error_tagged():
    with pytest.raises(ToleranceNotReached) as info:
        zeta_odd(1, MethodId.HURWITZ, cfg=QuadConfig(1e-30, max_subdivisions=1))
    assert info.value.method == "hurwitz"
    assert "[hurwitz]" in str(info.value)


def test_bad_arguments():
    with pytest.raises(ValueError):
        zeta_odd(0)
    with pytest.raises(ValueError):
        zeta_odd(1, "nonsense")
    with pytest.raises(ValueError):
        zeta_odd(1, tol=-1)


@pytest.mark.parametrize("n", range(1, 5))
def test_residue_sum(n):
    m_max = 10**4
    got = residue_sum_check(n, m_max)
    ref = fpi_csch_semi_infinite(n, prec=50, tol=residue_tail_bound(n, m_max) / 100).value
    with mp.workdps(80):
        assert abs(got - ref) <= residue_tail_bound(n, m_max)


def test_residue_sum_short():
    got = residue_sum_check(1, 10)
    ref = fpi_csch_semi_infinite(1).value
    assert abs(got - ref) <= residue_tail_bound(1, 10)
    assert residue_tail_bound(1, 10) < 1e-4
    with pytest.raises(ValueError):
        residue_sum_check(1, 5)


def test_residue_matches_generic_formula():
    # Res at i m pi of log z/(z^3 sinh z), written out for n = 1
    from fpzeta.zeta_reps import _residue

    with mp.workdps(30):
        for m in (1, 2, 7):
            z = mp.mpc(0, m * mp.pi)
            expected = -1j * (-1) ** (m + 1) * (mp.log(mp.pi * m) + 1j * mp.pi / 2) / (mp.pi * m) ** 3
            assert abs(_residue(1, z) - expected) < mpf(10) ** -25
            down = 1j * (-1) ** (m + 1) * (mp.log(mp.pi * m) + 3j * mp.pi / 2) / (mp.pi * m) ** 3
            assert abs(_residue(1, -z) - down) < mpf(10) ** -25
