"""Finite part of the divergent integral of csch(t)/t^(2n+1).

On [0, b] with b < pi the finite part is the term-by-term integral of the
csch Laurent series with the divergent powers of epsilon dropped; the
splitting property then adds the ordinary integral over [b, inf).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from mpmath import mp, mpf

from .csch_engine import laurent_coeffs
from .errors import DomainError
from .quadrature import DecayHint, QuadConfig, QuadResult, integrate_semi_infinite

__all__ = ["FpiValue", "fpi_csch_finite", "fpi_csch_semi_infinite", "working_dps"]

DEFAULT_B = 1.0


@dataclass(frozen=True)
class FpiValue:
    value: object
    b_used: float
    series_terms: int
    series_error: object
    tail_quad: QuadResult

    @property
    def error_estimate(self):
        return self.series_error + self.tail_quad.error_estimate


def _check_b(b) -> float:
    b = float(b)
    if not 0 < b < math.pi:
        raise DomainError(f"b must lie in (0, π), got {b}")
    return b


def working_dps(n: int, b: float, prec: int, tol: float) -> int:
    """Digits needed to resolve ``tol`` next to the k = 0 term b^-(2n+1)/(2n+1)."""
    biggest = -(2 * n + 1) * math.log10(b) - math.log10(2 * n + 1)
    return max(prec, math.ceil(-math.log10(tol))) + max(0, math.ceil(biggest)) + 5


def _series(n: int, b: float, tol: float, dps: int):
    # a-priori bound: |term k| <= 4 (b/pi)^(2k) / (b^(2n+1) |2n+1-2k|)
    ratio = (b / math.pi) ** 2
    log_pref = math.log(4) - (2 * n + 1) * math.log(b)
    k = 0
    with mp.workdps(dps):
        bm = mpf(b)
        total = mpf(0)
        while True:
            assert 2 * k != 2 * n + 1
            a_k = laurent_coeffs(k + 1, dps)[k]
            # (2^{2k}-2) B_{2k}/(2k)! = -a_k
            total += -a_k * bm ** (2 * k - 2 * n - 1) / (2 * n + 1 - 2 * k)
            k += 1
            log_next = log_pref + k * math.log(ratio) - math.log(abs(2 * n + 1 - 2 * k))
            bound = math.exp(log_next) / (1 - ratio) if log_next > -700 else 0.0
            if bound < tol and k > n:
                return total, k, mpf(bound)


def fpi_csch_finite(n: int, b=DEFAULT_B, prec: int = 15, tol: float | None = None):
    """Finite part of the integral of dt/(t^(2n+1) sinh t) over [0, b], 0 < b < pi.

    Sum over k >= 0 of (2^(2k)-2) B_2k b^(2k-2n-1) / ((2k)! (2n+1-2k)).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    b = _check_b(b)
    tol = tol if tol is not None else 10.0 ** (-prec - 2)
    value, _, _ = _series(n, b, tol, working_dps(n, b, prec, tol))
    return value


def fpi_csch_semi_infinite(
    n: int,
    b=DEFAULT_B,
    prec: int = 15,
    cfg: QuadConfig | None = None,
    tol: float | None = None,
) -> FpiValue:
    """Finite part over [0, inf): series on [0, b] plus quadrature on [b, inf)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    b = _check_b(b)
    if tol is None:
        tol = cfg.target_abs_tol if cfg is not None else 10.0 ** (-prec - 2)
    dps = working_dps(n, b, prec, tol)
    series, terms, series_err = _series(n, b, tol / 4, dps)
    hint = DecayHint.exponential(scale=2 / (1 - math.exp(-2 * b)), power=2 * n + 1)
    base = cfg if cfg is not None else QuadConfig()
    qcfg = replace(base, target_abs_tol=0.75 * tol, decay_hint=hint, dps=max(base.dps, dps))
    p = 2 * n + 1
    quad = integrate_semi_infinite(lambda t: 1 / (t**p * mp.sinh(t)), b, qcfg)
    with mp.workdps(dps):
        value = series + quad.value
    return FpiValue(value, b, terms, series_err, quad)
