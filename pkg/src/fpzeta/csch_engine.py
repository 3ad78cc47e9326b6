"""csch t, t*csch t, their high-order derivatives, and the subtracted integrand.

Three evaluation branches are used, picked by ``t``:

* ``t < t_switch``: the Laurent/Taylor series about 0, differentiated term by
  term (no cancellation; radius pi).
* mid range: the closed form d^k csch/dt^k = csch(t) * Q_k(coth t), with
  working precision raised to absorb the cancellation inside Q_k near u = 1
  and between t*csch^(k) and k*csch^(k-1).
* ``t >= t_far``: the exponential series csch t = 2 sum_j exp(-(2j+1) t),
  differentiated term by term; no overflow and no cancellation for large t.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from .errors import DomainError
from .exact_core import csch_laurent_coeff

__all__ = [
    "CothPoly",
    "SeriesTail",
    "coth_poly",
    "switch_radius",
    "laurent_coeffs",
    "d_csch",
    "d_tcsch",
    "tcsch_derivative_at_zero",
    "series_tail",
    "subtracted_integrand",
]

_lock = threading.Lock()


@dataclass(frozen=True)
class CothPoly:
    """Integer polynomial Q_k with d^k csch/dt^k = csch(t) * Q_k(coth t)."""

    coeffs: tuple[int, ...]  # coeffs[j] multiplies u**j

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, u):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def derivative(self) -> "CothPoly":
        return CothPoly(tuple(j * c for j, c in enumerate(self.coeffs))[1:] or (0,))

    @property
    def max_coeff_digits(self) -> int:
        return max(len(str(abs(c))) for c in self.coeffs)


_coth_polys: list[CothPoly] = [CothPoly((1,))]


def coth_poly(k: int) -> CothPoly:
    """Q_k from Q_{k+1}(u) = -u Q_k(u) - (u^2 - 1) Q_k'(u), Q_0 = 1."""
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")
    if k >= len(_coth_polys):
        with _lock:
            while len(_coth_polys) <= k:
                q = _coth_polys[-1].coeffs
                deg = len(q) - 1
                nxt = [0] * (deg + 2)
                for j, c in enumerate(q):
                    nxt[j + 1] -= c  # -u Q
                    if j:
                        # -(u^2 - 1) * j c u^(j-1)
                        nxt[j + 1] -= j * c
                        nxt[j - 1] += j * c
                _coth_polys.append(CothPoly(tuple(nxt)))
    return _coth_polys[k]


def switch_radius(prec: int, n: int | None = None) -> float:
    """Radius below which the series branch is used.

    1/2 up to 15 digits, shrinking as precision grows; with ``n`` given it is
    kept large enough that the subtracted bracket's direct branch loses no
    more than prec/2 digits, (2n+1) log10(1/t) <= prec/2.
    """
    base = 0.5 if prec <= 15 else 0.5 * 15 / prec
    if n is not None:
        base = max(base, 10 ** (-prec / (2 * (2 * n + 1))))
    return min(base, 0.5)


_laurent_cache: dict[int, list] = {}


def laurent_coeffs(count: int, dps: int) -> list:
    """First ``count`` csch Laurent coefficients as mpf at ``dps`` digits."""
    cached = _laurent_cache.get(dps)
    if cached is None or len(cached) < count:
        with _lock:
            cached = _laurent_cache.setdefault(dps, [])
            with mp.workdps(dps):
                for k in range(len(cached), count):
                    c = csch_laurent_coeff(k)
                    cached.append(mpf(c.numerator) / c.denominator)
    return cached[:count]


def _laurent(k: int, dps: int):
    cached = _laurent_cache.get(dps)
    if cached is None or k >= len(cached):
        cached = laurent_coeffs(max(k + 1, 2 * len(cached or ()), 32), dps)
    return cached[k]


def _as_positive(t):
    t = mpf(t)
    if t <= 0:
        raise DomainError(f"t must be > 0, got {t}")
    return t


def _falling(x: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= x - i
    return out


def _series_sum(term, start: int, dps: int):
    """Sum term(m) for m >= start until terms are negligible and shrinking."""
    total = mpf(0)
    eps = mpf(10) ** (-dps)
    prev = None
    m = start
    while True:
        v = term(m)
        total += v
        a = abs(v)
        if prev is not None and a <= prev and a <= eps * abs(total):
            return total
        prev = a
        m += 1
        if m > start + 4 * dps + 200:
            return total


def _t_far(k: int) -> float:
    return max(4.0, float(k))


def _d_csch_raw(k: int, t, prec: int):
    # assumes caller raised precision for the mid branch as needed
    ts = switch_radius(prec)
    if t < ts:
        dps = mp.dps
        # m = 0 is the 1/t pole; terms with 0 < 2m-1 < k differentiate to zero
        head = (-1) ** k * factorial(k) / t ** (k + 1)
        return head + _series_sum(
            lambda m: _laurent(m, dps) * _falling(2 * m - 1, k) * t ** (2 * m - 1 - k),
            (k + 2) // 2,
            dps,
        )
    if t >= _t_far(k):
        sign = -1 if k % 2 else 1
        dps = mp.dps
        return 2 * sign * _series_sum(lambda j: mpf(2 * j + 1) ** k * mp.exp(-(2 * j + 1) * t), 0, dps)
    q = coth_poly(k)
    with mp.workdps(mp.dps + q.max_coeff_digits + 3):
        return mp.csch(t) * q(mp.coth(t))


def d_csch(k: int, t, prec: int = 15):
    """k-th derivative of csch at t > 0."""
    t = _as_positive(t)
    with mp.workdps(prec + 5):
        return +_d_csch_raw(k, t, prec)


def d_tcsch(k: int, t, prec: int = 15):
    """k-th derivative of t*csch(t) at t > 0.

    Mid branch: t csch(t) Q_k(coth t) + k csch(t) Q_{k-1}(coth t).
    """
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")
    t = _as_positive(t)
    with mp.workdps(prec + 5):
        dps = mp.dps
        if t < switch_radius(prec):
            return +_series_sum(
                lambda m: _laurent(m, dps) * _falling(2 * m, k) * t ** (2 * m - k),
                (k + 1) // 2,
                dps,
            )
        if t >= _t_far(k):
            sign = -1 if k % 2 else 1

            def term(j):
                a = 2 * j + 1
                return mpf(a) ** k * mp.exp(-a * t) * (t - mpf(k) / a)

            return 2 * sign * _series_sum(term, 0, dps)
        # |t csch^(k)| ~ k!/t^(k+1) against a result of size ~ k!/pi^k
        guard = int(math.ceil((k + 1) * max(0.0, math.log10(math.pi / float(t))))) + 3
        with mp.workdps(dps + guard):
            value = t * _d_csch_raw(k, t, prec)
            if k:
                value += k * _d_csch_raw(k - 1, t, prec)
        return +value


def tcsch_derivative_at_zero(k: int) -> Fraction:
    """Exact limit of d^k (t csch t)/dt^k as t -> 0+ (series branch at t = 0)."""
    if k % 2:
        return Fraction(0)
    return csch_laurent_coeff(k // 2) * factorial(k)


@dataclass(frozen=True)
class SeriesTail:
    """Coefficients of t^(2k-2n-2), k = n+1..k_max, of the subtracted integrand."""

    n: int
    coefficients: tuple  # mpf values
    k_max: int
    radius: float


_tails: dict[tuple[int, int], SeriesTail] = {}


def series_tail(n: int, prec: int) -> SeriesTail:
    key = (n, prec)
    tail = _tails.get(key)
    if tail is not None:
        return tail
    ts = switch_radius(prec, n)
    lead = abs(float(csch_laurent_coeff(n + 1)))
    log_target = -(prec + 2) + math.log10(lead)
    k = n + 1
    while True:
        c = csch_laurent_coeff(k)
        if c and math.log10(abs(c.numerator)) - math.log10(c.denominator) + (2 * k - 2 * n - 2) * math.log10(ts) < log_target:
            break
        k += 1
    k_max = k
    coeffs = laurent_coeffs(k_max + 1, prec + 10)[n + 1 :]
    tail = SeriesTail(n, tuple(coeffs), k_max, ts)
    with _lock:
        _tails[key] = tail
    return tail


def subtracted_integrand(n: int, t, prec: int = 15):
    """[csch t + sum_{k=0}^{n} (2^{2k}-2) B_{2k} t^{2k-1}/(2k)!] / t^{2n+1}.

    Tends to csch_laurent_coeff(n+1) as t -> 0+ and decays like t^-2.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    t = _as_positive(t)
    tail = series_tail(n, prec)
    with mp.workdps(prec + 5):
        if t < tail.radius:
            t2 = t * t
            acc = mpf(0)
            for c in reversed(tail.coefficients):
                acc = acc * t2 + c
            return acc
        guard = int(math.ceil((2 * n + 2) * max(0.0, math.log10(math.pi / float(t))))) + 3
        with mp.workdps(mp.dps + guard):
            a = laurent_coeffs(n + 1, mp.dps)
            bracket = mp.csch(t)
            for k in range(n + 1):
                bracket -= a[k] * t ** (2 * k - 1)
            value = bracket / t ** (2 * n + 1)
        return +value
