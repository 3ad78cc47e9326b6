"""zeta(2n+1) from each integral representation, and the eta-series oracle.

Every integral representation has the form zeta(2n+1) = P * I with an exact
rational-times-pi^(2n) prefactor P, so the integral is computed to tol/|P|
and the error estimate is scaled back by |P|.
"""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from math import factorial

from mpmath import mp, mpc, mpf

from .csch_engine import d_tcsch, laurent_coeffs, subtracted_integrand
from .errors import DomainError, ToleranceNotReached
from .fpi import DEFAULT_B, fpi_csch_semi_infinite
from .hurwitz import bracket_coeff, hurwitz_integrand
from .quadrature import DecayHint, QuadConfig, integrate_semi_infinite

__all__ = [
    "MethodId",
    "ZetaResult",
    "prefactor",
    "main_theorem_convert",
    "alternating_sum",
    "alternating_terms",
    "zeta_oracle",
    "zeta_odd",
    "residue_sum_check",
    "residue_tail_bound",
]


class MethodId(str, enum.Enum):
    B_SPLIT = "b_split"
    SUBTRACTED = "subtracted"
    DERIV = "deriv"
    HURWITZ = "hurwitz"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ZetaResult:
    n: int
    method: MethodId
    value: object
    error_estimate: object
    evaluations: int
    wall_time: float  # seconds


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def prefactor(n: int, method: MethodId = MethodId.SUBTRACTED) -> tuple[Fraction, int]:
    """(c, e) with prefactor = c * pi^e.

    (-1)^(n+1) (2 pi)^(2n) / (2^(2n) - 1) for the finite-part forms, divided
    by (2n+1)! for the forms obtained by integrating by parts 2n+1 times.
    """
    _check_n(n)
    method = MethodId(method)
    if method is MethodId.ORACLE:
        return Fraction(1), 0
    four_n = 1 << (2 * n)
    c = Fraction((-1) ** (n + 1) * four_n, four_n - 1)
    if method in (MethodId.DERIV, MethodId.HURWITZ):
        c /= factorial(2 * n + 1)
    return c, 2 * n


def _prefactor_mpf(n: int, method: MethodId):
    c, e = prefactor(n, method)
    return mpf(c.numerator) / c.denominator * mp.pi**e


def main_theorem_convert(n: int, fpi_value):
    """zeta(2n+1) from the finite-part integral of csch(t)/t^(2n+1) over [0, inf)."""
    _check_n(n)
    return _prefactor_mpf(n, MethodId.B_SPLIT) * fpi_value


# -- oracle ------------------------------------------------------------------

_CVZ_RATE = math.log10(3 + math.sqrt(8))


def alternating_terms(tol: float, size: float = 1.0) -> int:
    """Terms needed for the accelerated sum to reach ``tol`` when |a_k| <= size."""
    need = math.log10(2 * max(size, 1e-300) / tol) / _CVZ_RATE
    return max(4, math.ceil(need) + 2)


def alternating_sum(a, terms: int):
    """sum_{k >= 0} (-1)^k a(k) by the Cohen-Rodriguez Villegas-Zagier scheme.

    Error is about 2 (3 + sqrt 8)^-terms times the size of the a(k) when they
    are moments of a positive measure (their Algorithm 1).
    """
    d = (3 + mp.sqrt(8)) ** terms
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    s = mpf(0)
    for k in range(terms):
        c = b - c
        s += c * a(k)
        b = b * (k + terms) * (k - terms) / ((k + mpf(1) / 2) * (k + 1))
    return s / d


def zeta_oracle(s: int, prec: int = 15, tol: float | None = None):
    """(zeta(s), error bound) for integer s >= 2 from the alternating eta series."""
    if s < 2:
        raise DomainError(f"oracle needs s >= 2, got {s}")
    tol = tol if tol is not None else 10.0 ** (-prec - 2)
    terms = alternating_terms(tol / 10)
    with mp.workdps(max(prec, math.ceil(-math.log10(tol))) + 10):
        eta = alternating_sum(lambda k: 1 / mpf(k + 1) ** s, terms)
        value = eta / (1 - mpf(2) ** (1 - s))
        # (1 - 2^(1-s))^-1 <= 2 for s >= 2
        err = 4 * (3 + mp.sqrt(8)) ** (-terms)
        return +value, err


# -- integral representations ------------------------------------------------


def _working_dps(prec: int, int_tol: float, extra: int = 0) -> int:
    return max(prec, math.ceil(-math.log10(int_tol))) + 10 + extra


def _subtracted(n, int_tol, base: QuadConfig, prec):
    dps = _working_dps(prec, int_tol)
    with mp.workdps(dps):
        a = [abs(float(x)) for x in laurent_coeffs(n + 1, dps)]

    def bound(T):
        # |integrand| <= sum_k |a_k| t^(2k-2n-2) + 2.4 exp(-t)/t^(2n+1) past t = 1
        poly = sum(a[k] * T ** (2 * k - 2 * n - 1) / (2 * n + 1 - 2 * k) for k in range(n + 1))
        return poly + 2.4 * math.exp(-T) / T ** (2 * n + 1)

    hint = DecayHint.algebraic(power=2, scale=a[n], bound=bound)
    qcfg = replace(base, target_abs_tol=int_tol, decay_hint=hint, dps=dps)
    return integrate_semi_infinite(lambda t: subtracted_integrand(n, t, dps), 0, qcfg)


def _deriv(n, int_tol, base: QuadConfig, prec):
    k = 2 * n + 1
    dps = _working_dps(prec, int_tol)
    # past t = k: |d^k(t csch t)|/t <= 2 (1 + k/t) e^-t (1 + small) <= 2.2 (k+1) e^-t
    hint = DecayHint.exponential(scale=2.2 * (k + 1), power=0)
    qcfg = replace(base, target_abs_tol=int_tol, decay_hint=hint, dps=dps)
    return integrate_semi_infinite(lambda t: d_tcsch(k, t, dps) / t, 0, qcfg)


def _hurwitz(n, int_tol, base: QuadConfig, prec):
    dps = _working_dps(prec, int_tol)
    c = [abs(float(bracket_coeff(k))) for k in range(n + 1, n + 4)]

    def bound(T):
        # twice the first three terms of the large-s expansion, integrated
        return 2 * sum(ck * T ** (-2 * j - 1) / (2 * j + 1) for j, ck in enumerate(c))

    hint = DecayHint.algebraic(power=2, scale=c[0], bound=bound)
    qcfg = replace(base, target_abs_tol=int_tol, decay_hint=hint, dps=dps)
    return integrate_semi_infinite(lambda s: hurwitz_integrand(n, s, dps), 0, qcfg)


_INTEGRATORS = {
    MethodId.SUBTRACTED: _subtracted,
    MethodId.DERIV: _deriv,
    MethodId.HURWITZ: _hurwitz,
}


def zeta_odd(
    n: int,
    method: MethodId = MethodId.ORACLE,
    prec: int = 15,
    tol: float | None = None,
    cfg: QuadConfig | None = None,
    b: float = DEFAULT_B,
) -> ZetaResult:
    """zeta(2n+1) by ``method``.

    ``tol`` is the absolute target on zeta; it defaults to cfg.target_abs_tol
    when a config is given and to 10^(2-prec) otherwise.
    """
    _check_n(n)
    method = MethodId(method)
    if tol is None:
        tol = cfg.target_abs_tol if cfg is not None else 10.0 ** (2 - prec)
    if not tol > 0:
        raise ValueError("tol must be > 0")
    base = cfg if cfg is not None else QuadConfig()
    start = time.perf_counter()
    s = 2 * n + 1
    if method is MethodId.ORACLE:
        value, err = zeta_oracle(s, prec, tol)
        evaluations = alternating_terms(tol / 10)
    else:
        c, e = prefactor(n, method)
        scale = abs(float(c)) * math.pi**e
        # keep a margin for rounding the prefactor product
        int_tol = 0.9 * tol / scale
        try:
            if method is MethodId.B_SPLIT:
                fv = fpi_csch_semi_infinite(n, b, prec, replace(base), tol=int_tol)
                raw, raw_err, evaluations = fv.value, fv.error_estimate, fv.tail_quad.evaluations
            else:
                q = _INTEGRATORS[method](n, int_tol, base, prec)
                raw, raw_err, evaluations = q.value, q.error_estimate, q.evaluations
        except ToleranceNotReached as exc:
            exc.value = exc.value * _prefactor_mpf(n, method)
            exc.estimate = exc.estimate * scale
            exc.target = tol
            raise exc.tag(method.value)
        with mp.workdps(_working_dps(prec, int_tol)):
            value = _prefactor_mpf(n, method) * raw
            err = raw_err * scale
    with mp.workdps(prec + 5):
        value = +value
    return ZetaResult(n, method, value, mpf(err), evaluations, time.perf_counter() - start)


# -- residues of log(z) / (z^(2n+1) sinh z) -----------------------------------


def _log_cut_positive(z):
    # log with the cut along the positive real axis: arg in [0, 2 pi)
    w = mp.log(z)
    return w + 2j * mp.pi if w.imag < 0 else w


def _residue(n: int, z0):
    # simple pole of 1/sinh at z0: residue of f / sinh is f(z0) / cosh(z0)
    return _log_cut_positive(z0) / (z0 ** (2 * n + 1) * mp.cosh(z0))


def residue_sum_check(n: int, m_max: int, prec: int = 15):
    """Minus the summed residues at z = +-i m pi, m = 1..m_max.

    For the keyhole contour around the positive axis this partial sum tends
    to the finite-part integral of csch(t)/t^(2n+1) over [0, inf), i.e. to
    (-1)^n / pi^(2n) * sum_m (-1)^m / m^(2n+1).
    """
    _check_n(n)
    if m_max < 10:
        raise ValueError(f"m_max must be >= 10, got {m_max}")
    # resolve the sum down to its own truncation bound; the result is
    # returned at that working precision
    dps = max(prec, math.ceil(-math.log10(residue_tail_bound(n, m_max)))) + len(str(m_max)) + 5
    with mp.workdps(dps):
        total = mpc(0)
        for m in range(1, m_max + 1):
            up = mpc(0, m * mp.pi)
            total += _residue(n, up) + _residue(n, -up)
        # imaginary parts cancel pairwise; keep the real part
        return -total.real


def residue_tail_bound(n: int, m_max: int) -> float:
    """Alternating-series remainder bound for :func:`residue_sum_check`."""
    return 1.0 / (math.pi ** (2 * n) * (m_max + 1) ** (2 * n + 1))
