"""Exact rational arithmetic: Bernoulli and harmonic numbers, csch Laurent
coefficients, zeta at even integers, and the summation identities behind the
large-argument expansion of ``zeta(2, (s+1)/2)``.

All values are :class:`fractions.Fraction`.  Tables are memoized and grown
under a lock, so concurrent readers are safe.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

__all__ = [
    "bernoulli",
    "harmonic",
    "zeta_even",
    "csch_laurent_coeff",
    "check_appendix_identities",
    "IdentityReport",
]

_lock = threading.Lock()
_even_bernoulli: list[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...
_harmonic: list[Fraction] = [Fraction(0)]  # H_0, H_1, ...


def _tangent_numbers(n: int) -> list[int]:
    """T_1..T_n with tan x = sum T_k x^(2k-1)/(2k-1)!  (index 0 unused)."""
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


def _grow_bernoulli(m: int) -> None:
    # caller holds _lock; afterwards B_0..B_{2m} are tabulated
    if m < len(_even_bernoulli):
        return
    size = max(m, 2 * (len(_even_bernoulli) - 1), 16)
    tan = _tangent_numbers(size)
    table = [Fraction(1)]
    for k in range(1, size + 1):
        four_k = 1 << (2 * k)
        sign = 1 if k % 2 == 1 else -1
        table.append(Fraction(sign * 2 * k * tan[k], four_k * (four_k - 1)))
    _even_bernoulli[:] = table


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k with the convention B_1 = -1/2."""
    if k < 0:
        raise ValueError(f"bernoulli index must be >= 0, got {k}")
    if k == 1:
        return Fraction(-1, 2)
    if k % 2:
        return Fraction(0)
    m = k // 2
    if m >= len(_even_bernoulli):
        with _lock:
            _grow_bernoulli(m)
    return _even_bernoulli[m]


def harmonic(m: int) -> Fraction:
    """H_m = 1 + 1/2 + ... + 1/m."""
    if m < 1:
        raise ValueError(f"harmonic index must be >= 1, got {m}")
    if m >= len(_harmonic):
        with _lock:
            while len(_harmonic) <= m:
                j = len(_harmonic)
                _harmonic.append(_harmonic[-1] + Fraction(1, j))
    return _harmonic[m]


def zeta_even(n: int) -> tuple[Fraction, int]:
    """Return ``(q, 2n)`` such that zeta(2n) = q * pi**(2n)."""
    if n < 1:
        raise ValueError(f"zeta_even needs n >= 1, got {n}")
    sign = 1 if n % 2 == 1 else -1
    q = sign * Fraction(1 << (2 * n)) * bernoulli(2 * n) / (2 * factorial(2 * n))
    return q, 2 * n


def csch_laurent_coeff(k: int) -> Fraction:
    """Coefficient of z**(2k-1) in the Laurent expansion of 1/sinh z at 0.

    Equals -(2**(2k) - 2) * B_{2k} / (2k)!; the series has radius pi.
    """
    if k < 0:
        raise ValueError(f"coefficient index must be >= 0, got {k}")
    return -((1 << (2 * k)) - 2) * bernoulli(2 * k) / factorial(2 * k)


@dataclass
class IdentityReport:
    k_max: int
    # (identity label, k, passed)
    checks: list[tuple[str, int, bool]] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(ok for _, _, ok in self.checks)

    @property
    def first_failure(self) -> tuple[str, int] | None:
        for label, k, ok in self.checks:
            if not ok:
                return label, k
        return None


IDENTITY_LABELS = {
    "a": "even-power cancellation sum",
    "b": "Namias recurrence",
    "c": "odd-power coefficient sum",
}


def check_appendix_identities(
    k_max: int, bernoulli_fn: Callable[[int], Fraction] = bernoulli
) -> IdentityReport:
    """Verify, for 2 <= k <= k_max and in exact arithmetic:

    (a) sum_{l=1}^{k-1} 2^(2l+1) B_2l / ((2l)! (2k-2l-1)!) = 4(k-1)/(2k-1)!
    (b) B_2k = [(2k-1) - (2k)! sum_{l=1}^{k-1} 2^(2l) B_2l/((2l)!(2k-2l)!)] / (2(2^(2k)-1))
    (c) (2k)! sum_{l=1}^{k} 2^(2l) B_2l/((2l)!(2k-2l)!) = (2k-1) - (2^(2k)-2) B_2k

    ``bernoulli_fn`` lets callers substitute a (possibly corrupted) table.
    """
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    report = IdentityReport(k_max)
    for k in range(2, k_max + 1):
        lhs_a = sum(
            Fraction(1 << (2 * l + 1)) * bernoulli_fn(2 * l)
            / (factorial(2 * l) * factorial(2 * k - 2 * l - 1))
            for l in range(1, k)
        )
        report.checks.append(("a", k, lhs_a == Fraction(4 * (k - 1), factorial(2 * k - 1))))

        partial = sum(
            Fraction(1 << (2 * l)) * bernoulli_fn(2 * l)
            / (factorial(2 * l) * factorial(2 * k - 2 * l))
            for l in range(1, k)
        )
        b2k = bernoulli_fn(2 * k)
        four_k = 1 << (2 * k)
        namias = ((2 * k - 1) - factorial(2 * k) * partial) / (2 * (four_k - 1))
        report.checks.append(("b", k, namias == b2k))

        full = factorial(2 * k) * (partial + Fraction(four_k) * b2k / factorial(2 * k))
        report.checks.append(("c", k, full == (2 * k - 1) - (four_k - 2) * b2k))
    return report
