"""zeta'(2n+1) through log-weighted finite-part integrals.

Differentiating the finite-part representation in the exponent of t brings
down a factor -ln t.  With

    L_n = ln pi - ln 2 / (2^(2n) - 1)
    P   = (-1)^n (2 pi)^(2n) / (2^(2n) - 1)

the routes are

    PROPOSITION    zeta' = L_n zeta + P [S + int_1^inf ln t csch t / t^(2n+1) dt]
    REL2           zeta' = L_n zeta + P int_0^inf ln t * g_n(t) dt
    INTEGRAL_REL2  zeta' = P int_0^inf (ln t - L_n) g_n(t) dt
    REL3           zeta' = (L_n - H) zeta + P/(2n+1)! int_0^inf ln t D(t) dt
    INTEGRAL3      zeta' = P/(2n+1)! int_0^inf (ln t + H - L_n) D(t) dt

where g_n is the subtracted integrand, D(t) = d^(2n+1)(t csch t)/dt^(2n+1) / t,
H = H_(2n+1) and S = sum_k (2^(2k)-2) B_2k / ((2k)! (2n+1-2k)^2) is the
finite part of the log-weighted integral over [0, 1].
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from .csch_engine import d_tcsch, laurent_coeffs, subtracted_integrand
from .exact_core import harmonic
from .quadrature import DecayHint, QuadConfig, integrate_finite, integrate_semi_infinite
from .zeta_reps import alternating_sum, alternating_terms, zeta_oracle

__all__ = [
    "Route",
    "ZetaPrimeResult",
    "log_constant",
    "zeta_prime_oracle",
    "alternating_log_sum",
    "log_fpi_split",
    "log_fpi_subtracted",
    "zeta_prime_odd",
    "relation_residual",
    "imaginary_part_residual",
]


class Route(str, enum.Enum):
    PROPOSITION = "proposition"
    REL2 = "rel2"
    REL3 = "rel3"
    INTEGRAL3 = "integral3"
    INTEGRAL_REL2 = "integral_rel2"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ZetaPrimeResult:
    n: int
    route: Route
    value: object
    error_estimate: object
    evaluations: int = 0


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def log_constant(n: int):
    """L_n = ln(pi / 2^(1/(2^(2n)-1))) at the current precision."""
    return mp.log(mp.pi) - mp.log(2) / ((1 << (2 * n)) - 1)


def _p2(n: int):
    four_n = 1 << (2 * n)
    return (-1) ** n * (2 * mp.pi) ** (2 * n) / (four_n - 1)


def _p2_size(n: int) -> float:
    return (2 * math.pi) ** (2 * n) / ((1 << (2 * n)) - 1)


def _dps(prec: int, tol: float) -> int:
    return max(prec, math.ceil(-math.log10(tol))) + 10


# -- oracle ------------------------------------------------------------------


def alternating_log_sum(s: int, prec: int = 15, tol: float | None = None):
    """sum_{m >= 1} (-1)^m ln m / m^s, which is eta'(s)."""
    tol = tol if tol is not None else 10.0 ** (-prec - 2)
    # the log-weighted terms are not moments of a positive measure; 10x margin
    terms = alternating_terms(tol / 100)
    with mp.workdps(_dps(prec, tol)):
        # m = j + 1; the sign (-1)^m = -(-1)^j
        return -alternating_sum(lambda j: mp.log(j + 1) / mpf(j + 1) ** s, terms)


def zeta_prime_oracle(s: int, prec: int = 15, tol: float | None = None):
    """(zeta'(s), error bound) from eta' = 2^(1-s) ln 2 zeta + (1 - 2^(1-s)) zeta'."""
    tol = tol if tol is not None else 10.0 ** (-prec - 2)
    with mp.workdps(_dps(prec, tol)):
        zeta, zerr = zeta_oracle(s, mp.dps, tol / 10)
        eta_p = alternating_log_sum(s, mp.dps, tol / 10)
        two = mpf(2) ** (1 - s)
        value = (eta_p - two * mp.log(2) * zeta) / (1 - two)
        err = 2 * (tol / 10 + zerr)
        return +value, err


# -- log-weighted integrals ---------------------------------------------------


def _split_quad(g, int_tol, dps, base: QuadConfig, bound):
    """int_0^inf g: graded Gauss-Legendre on [0, 1] plus [1, inf) with ``bound``."""
    left_cfg = replace(base, target_abs_tol=int_tol / 2, dps=dps)
    left = integrate_finite(g, 0, 1, left_cfg, grade_left=True)
    right_cfg = replace(
        base,
        target_abs_tol=int_tol / 2,
        dps=dps,
        decay_hint=DecayHint.exponential(bound=bound),
    )
    right = integrate_semi_infinite(g, 1, right_cfg)
    with mp.workdps(dps):
        value = left.value + right.value
    return value, left.error_estimate + right.error_estimate, left.evaluations + right.evaluations


def _log_series(n: int, tol: float, dps: int):
    # S = sum_k -a_k / (2n+1-2k)^2; |a_k| <= 4 / pi^(2k) bounds the tail
    ratio = 1 / math.pi**2
    with mp.workdps(dps):
        total = mpf(0)
        k = 0
        while True:
            a_k = laurent_coeffs(k + 1, dps)[k]
            total += -a_k / (2 * n + 1 - 2 * k) ** 2
            k += 1
            bound = 4 * ratio**k / (1 - ratio) / (2 * n + 1 - 2 * k) ** 2
            if bound < tol and k > n:
                return total, mpf(bound)


def log_fpi_split(n: int, prec: int = 15, tol: float | None = None, cfg: QuadConfig | None = None):
    """(S + int_1^inf ln t csch t / t^(2n+1) dt, error estimate, evaluations)."""
    _check_n(n)
    tol = tol if tol is not None else 10.0 ** (-prec - 2)
    base = cfg if cfg is not None else QuadConfig()
    dps = _dps(prec, tol)
    series, serr = _log_series(n, tol / 4, dps)
    p = 2 * n + 1
    scale = 2 / (1 - math.exp(-2))

    def bound(T):
        # csch t <= scale e^-t on [1, inf); int_T^inf e^-t ln t <= e^-T (ln T + 1/T)
        return scale * math.exp(-T) * (math.log(T) + 1 / T) / T**p

    hint = DecayHint.exponential(bound=bound)
    qcfg = replace(base, target_abs_tol=0.75 * tol, dps=dps, decay_hint=hint)
    quad = integrate_semi_infinite(lambda t: mp.log(t) / (t**p * mp.sinh(t)), 1, qcfg)
    with mp.workdps(dps):
        return series + quad.value, serr + quad.error_estimate, quad.evaluations


def _subtracted_bound(n: int, c: float, dps: int):
    with mp.workdps(dps):
        a = [abs(float(x)) for x in laurent_coeffs(n + 1, dps)]

    def bound(T):
        lt = math.log(T)
        total = 0.0
        for k in range(n + 1):
            q = 2 * n + 1 - 2 * k
            total += a[k] * T ** (-q) * ((lt + abs(c)) / q + 1 / q**2)
        return total + 2.4 * math.exp(-T) * (lt + abs(c) + 1) / T ** (2 * n + 1)

    return bound


def log_fpi_subtracted(
    n: int, prec: int = 15, tol: float | None = None, cfg: QuadConfig | None = None, shift=0
):
    """(int_0^inf (ln t + shift) g_n(t) dt, error estimate, evaluations)."""
    _check_n(n)
    tol = tol if tol is not None else 10.0 ** (-prec - 2)
    base = cfg if cfg is not None else QuadConfig()
    dps = _dps(prec, tol)
    with mp.workdps(dps):
        c = mpf(shift)
    g = lambda t: (mp.log(t) + c) * subtracted_integrand(n, t, dps)  # noqa: E731
    return _split_quad(g, tol, dps, base, _subtracted_bound(n, float(c), dps))


def _log_deriv_integral(n: int, prec: int, tol: float, cfg: QuadConfig | None, shift=0):
    """(int_0^inf (ln t + shift) D(t) dt, error estimate, evaluations)."""
    base = cfg if cfg is not None else QuadConfig()
    k = 2 * n + 1
    dps = _dps(prec, tol)
    with mp.workdps(dps):
        c = mpf(shift)
    cf = abs(float(c))

    def bound(T):
        # |D(t)| <= 2.2 (k+1) e^-t past t = k, as for the plain integral
        return 2.2 * (k + 1) * math.exp(-T) * (math.log(T) + cf + 1 / T)

    g = lambda t: (mp.log(t) + c) * d_tcsch(k, t, dps) / t  # noqa: E731
    return _split_quad(g, tol, dps, base, bound)


# -- routes -------------------------------------------------------------------


def zeta_prime_odd(
    n: int,
    route: Route = Route.ORACLE,
    prec: int = 15,
    tol: float | None = None,
    cfg: QuadConfig | None = None,
) -> ZetaPrimeResult:
    """zeta'(2n+1) by ``route``; ``tol`` is the absolute target on zeta'."""
    _check_n(n)
    route = Route(route)
    if tol is None:
        tol = cfg.target_abs_tol if cfg is not None else 10.0 ** (2 - prec)
    s = 2 * n + 1
    if route is Route.ORACLE:
        value, err = zeta_prime_oracle(s, prec, tol)
        return ZetaPrimeResult(n, route, value, mpf(err), alternating_terms(tol / 1000))

    size = _p2_size(n)
    if route in (Route.REL3, Route.INTEGRAL3):
        size /= factorial(s)
    int_tol = 0.8 * tol / size
    dps = _dps(prec, int_tol)
    zeta = zerr = None
    if route in (Route.PROPOSITION, Route.REL2, Route.REL3):
        zeta, zerr = zeta_oracle(s, dps, tol / 20)
    with mp.workdps(dps):
        L = log_constant(n)
        H = harmonic(s)
        H = mpf(H.numerator) / H.denominator
        if route is Route.PROPOSITION:
            x, xerr, evals = log_fpi_split(n, prec, int_tol, cfg)
            value = L * zeta + _p2(n) * x
        elif route is Route.REL2:
            x, xerr, evals = log_fpi_subtracted(n, prec, int_tol, cfg)
            value = L * zeta + _p2(n) * x
        elif route is Route.INTEGRAL_REL2:
            x, xerr, evals = log_fpi_subtracted(n, prec, int_tol, cfg, shift=-L)
            value = _p2(n) * x
        elif route is Route.REL3:
            x, xerr, evals = _log_deriv_integral(n, prec, int_tol, cfg)
            value = (L - H) * zeta + _p2(n) / factorial(s) * x
        else:
            x, xerr, evals = _log_deriv_integral(n, prec, int_tol, cfg, shift=H - L)
            value = _p2(n) / factorial(s) * x
        err = mpf(xerr) * size
        if zerr is not None:
            err += abs(L - H) * zerr
    with mp.workdps(prec + 5):
        return ZetaPrimeResult(n, route, +value, err, evals)


def relation_residual(n: int, prec: int = 15, zeta_prime_shift=0, tol: float | None = None):
    """|zeta' - (L_n - H) zeta - P/(2n+1)! int ln t D(t) dt| with zeta, zeta' from the oracle.

    ``zeta_prime_shift`` perturbs the oracle zeta' (a sanity hook: the
    residual should then equal the shift).
    """
    _check_n(n)
    tol = tol if tol is not None else 10.0 ** (-prec)
    s = 2 * n + 1
    size = _p2_size(n) / factorial(s)
    int_tol = 0.5 * tol / size
    dps = _dps(prec, int_tol)
    zeta, _ = zeta_oracle(s, dps, tol / 100)
    zp, _ = zeta_prime_oracle(s, dps, tol / 100)
    x, _, _ = _log_deriv_integral(n, prec, int_tol, None)
    with mp.workdps(dps):
        H = harmonic(s)
        H = mpf(H.numerator) / H.denominator
        rhs = (log_constant(n) - H) * zeta + _p2(n) / factorial(s) * x
        return abs(zp + mpf(zeta_prime_shift) - rhs)


def imaginary_part_residual(n: int, prec: int = 15, tol: float | None = None):
    """(-1)^n / pi^(2n+1) sum_m (-1)^m ln(pi m) / m^(2n+1) - (S + I_1) / pi.

    The residues at z = +-i m pi of ln z / (z^(2n+1) sinh z) have imaginary
    parts that must cancel the jump of the log-weighted integral across the
    cut; this is that balance written out.
    """
    _check_n(n)
    tol = tol if tol is not None else 10.0 ** (-prec)
    s = 2 * n + 1
    dps = _dps(prec, tol)
    x, _, _ = log_fpi_split(n, prec, tol / 10)
    with mp.workdps(dps):
        zeta, _ = zeta_oracle(s, dps, tol / 100)
        eta = (1 - mpf(2) ** (1 - s)) * zeta
        # sum (-1)^m ln(pi m)/m^s = ln(pi) * (-eta) + eta'
        alt = -mp.log(mp.pi) * eta + alternating_log_sum(s, dps, tol / 100)
        value = (-1) ** n * alt / mp.pi**s - x / mp.pi
        return value
