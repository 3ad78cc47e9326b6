"""zeta(2, z) on the positive axis and the Laplace-transformed integrand.

zeta(2, z) is reduced by the upward recurrence zeta(2, z) = zeta(2, z+1) + 1/z^2
and then read off the large-z expansion

    zeta(2, z) ~ 1/z + 1/(2 z^2) + sum_k B_2k / z^(2k+1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp, mpf

from .errors import DomainError
from .exact_core import bernoulli

__all__ = ["TrigammaConfig", "hurwitz2", "hurwitz_integrand", "large_s_threshold", "bracket_coeff"]


@dataclass(frozen=True)
class TrigammaConfig:
    recurrence_threshold: float = 12.0
    asympt_terms: int = 10

    def __post_init__(self):
        if self.recurrence_threshold < 6:
            raise ValueError("recurrence_threshold must be >= 6")
        if not 1 <= self.asympt_terms <= 30:
            raise ValueError("asympt_terms must lie in [1, 30]")


def _mpq(q):
    return mpf(q.numerator) / q.denominator


def _threshold(cfg: TrigammaConfig, dps: int) -> float:
    # smallest z at which the last allowed term, |B_2K|/z^(2K+1), is below 10^-dps / z
    k = cfg.asympt_terms
    b = abs(bernoulli(2 * k))
    log_b = math.log10(b.numerator) - math.log10(b.denominator)
    return max(cfg.recurrence_threshold, 10 ** ((log_b + dps) / (2 * k)))


def hurwitz2(z, prec: int = 15, cfg: TrigammaConfig = TrigammaConfig()):
    """zeta(2, z) = sum_{j >= 0} 1/(z+j)^2 for real z > 0."""
    z = mpf(z)
    if z <= 0:
        raise DomainError(f"z must be > 0, got {z}")
    with mp.workdps(prec + 5):
        dps = mp.dps
        threshold = _threshold(cfg, dps)
        acc = mpf(0)
        while z < threshold:
            acc += 1 / (z * z)
            z += 1
        inv = 1 / z
        inv2 = inv * inv
        total = inv + inv2 / 2
        power = inv * inv2
        eps = mpf(10) ** (-dps)
        prev = None
        for k in range(1, cfg.asympt_terms + 1):
            term = _mpq(bernoulli(2 * k)) * power
            if prev is not None and abs(term) > prev:
                break  # past the smallest term
            total += term
            if abs(term) < eps * total:
                break
            prev = abs(term)
            power *= inv2
        return +(acc + total)


def bracket_coeff(k: int):
    """(2^(2k) - 2) B_2k as an exact rational."""
    return ((1 << (2 * k)) - 2) * bernoulli(2 * k)


@lru_cache(maxsize=None)
def large_s_threshold(n: int, prec: int) -> float:
    """Crossover from the direct bracket to its large-s expansion.

    Starts from 10^(prec/(4n+4)) clipped to [20, 1e4] and is raised until the
    optimally truncated expansion, whose error is about
    4 sqrt(2 pi^2 s) exp(-pi s) s^(2n), is below 10^-(prec+3) of the
    bracket's size C/s^2, C = |(2^(2n+2)-2) B_(2n+2)|.
    """
    s = min(max(10 ** (prec / (4 * n + 4)), 20.0), 1e4)
    c = abs(bracket_coeff(n + 1))
    log_c = math.log10(c.numerator) - math.log10(c.denominator)

    def log_rel_err(x):
        return (
            math.log10(4 * math.sqrt(2 * math.pi**2 * x))
            - math.pi * x / math.log(10)
            + (2 * n + 2) * math.log10(x)
            - log_c
        )

    while log_rel_err(s) > -(prec + 3):
        s *= 1.1
    return s


# the bracket needs zeta(2, z) at ~prec + 4n digits; more asymptotic terms
# keep the recurrence short there
INTEGRAND_TRIGAMMA = TrigammaConfig(recurrence_threshold=12.0, asympt_terms=30)


def hurwitz_integrand(n: int, s, prec: int = 15, cfg: TrigammaConfig = INTEGRAND_TRIGAMMA):
    """(1/2) s^(2n+1) zeta(2, (s+1)/2) + sum_{l=0}^{n} (2^(2l)-2) B_2l s^(2n-2l).

    The bracket cancels 2n+2 leading orders at large s and is O(s^-2); past
    :func:`large_s_threshold` it is evaluated from the expansion
    -sum_{k>n} (2^(2k)-2) B_2k s^(2n-2k) instead.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = mpf(s)
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    if s > large_s_threshold(n, prec):
        with mp.workdps(prec + 5):
            eps = mpf(10) ** (-mp.dps)
            inv2 = 1 / (s * s)
            power = inv2  # s^(2n-2k) at k = n+1
            total = mpf(0)
            prev = None
            k = n + 1
            while True:
                term = -_mpq(bracket_coeff(k)) * power
                if prev is not None and abs(term) > prev:
                    break
                total += term
                if abs(term) < eps * abs(total):
                    break
                prev = abs(term)
                power *= inv2
                k += 1
            return +total
    guard = math.ceil((2 * n + 2) * math.log10(max(float(s), 2.0))) + 5
    with mp.workdps(prec + guard):
        total = s ** (2 * n + 1) * hurwitz2((s + 1) / 2, mp.dps, cfg) / 2
        for l in range(n + 1):
            total += _mpq(bracket_coeff(l)) * s ** (2 * n - 2 * l)
    with mp.workdps(prec + 5):
        return +total
