from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fpzeta.exact_core import (
    IDENTITY_LABELS,
    bernoulli,
    check_appendix_identities,
    csch_laurent_coeff,
    harmonic,
    zeta_even,
)


def bernoulli_by_recurrence(m):
    # sum_{j=0}^{k} C(k+1, j) B_j = 0, B_1 = -1/2
    b = [Fraction(1)]
    for k in range(1, m + 1):
        b.append(-sum(comb(k + 1, j) * b[j] for j in range(k)) / (k + 1))
    return b


REF = bernoulli_by_recurrence(80)


def test_first_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(7) == 0


@pytest.mark.parametrize("k", range(81))
def test_matches_defining_recurrence(k):
    assert bernoulli(k) == REF[k]


def test_large_index_against_sympy():
    for k in (100, 200, 360):
        assert bernoulli(k) == Fraction(str(sympy.bernoulli(k)))


def test_negative_index():
    with pytest.raises(ValueError):
        bernoulli(-2)


@given(st.integers(min_value=1, max_value=150))
@settings(max_examples=60, deadline=None)
def test_even_bernoulli_sign_alternates(k):
    assert (bernoulli(2 * k) > 0) == (k % 2 == 1)


def test_harmonic():
    assert harmonic(1) == 1
    assert harmonic(3) == Fraction(11, 6)
    assert harmonic(13) == sum(Fraction(1, j) for j in range(1, 14))
    with pytest.raises(ValueError):
        harmonic(0)


@pytest.mark.parametrize("n", range(1, 21))
def test_zeta_even_matches_sympy(n):
    q, e = zeta_even(n)
    assert e == 2 * n
    expected = sympy.nsimplify(sympy.zeta(2 * n) / sympy.pi ** (2 * n))
    assert q == Fraction(int(expected.p), int(expected.q))


def test_zeta_even_known():
    assert zeta_even(1) == (Fraction(1, 6), 2)
    assert zeta_even(2) == (Fraction(1, 90), 4)


def test_csch_coefficients():
    assert csch_laurent_coeff(0) == 1
    assert csch_laurent_coeff(1) == Fraction(-1, 6)
    assert csch_laurent_coeff(2) == Fraction(7, 360)
    assert csch_laurent_coeff(3) == Fraction(-31, 15120)


@given(st.integers(min_value=1, max_value=40))
@settings(max_examples=40, deadline=None)
def test_csch_coefficient_formula(k):
    assert csch_laurent_coeff(k) == -((2 ** (2 * k)) - 2) * REF[2 * k] / factorial(2 * k)


def test_identities_hold_to_50():
    report = check_appendix_identities(50)
    assert report.all_pass
    assert report.first_failure is None
    assert {label for label, _, _ in report.checks} == set(IDENTITY_LABELS)
    assert len(report.checks) == 3 * 49


def test_identities_detect_corruption():
    def bad(k):
        return bernoulli(k) + (Fraction(1, 10**9) if k == 8 else 0)

    report = check_appendix_identities(10, bad)
    assert not report.all_pass
    label, k = report.first_failure
    assert k == 4 and label in IDENTITY_LABELS


def test_identities_reject_small_kmax():
    with pytest.raises(ValueError):
        check_appendix_identities(1)
