"""Deterministic adaptive Gauss-Legendre quadrature in mpmath precision.

Each panel is integrated with an ``order``-point rule and with the rule of
half the order; their difference is the panel error estimate.  Panels with
the largest estimate are bisected until the summed estimate meets the target.

Semi-infinite ranges are truncated at a point T where the caller's decay
hint bounds the discarded tail below a tenth of the target; [a, T] is covered
by panels whose widths double.  A logarithmic endpoint singularity at the
left end of a finite range is handled by geometric grading toward it.
"""
from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass, field
from typing import Callable

from mpmath import mp, mpf

from .errors import DomainError, ToleranceNotReached

__all__ = [
    "DecayHint",
    "QuadConfig",
    "QuadResult",
    "gauss_legendre",
    "integrate_semi_infinite",
    "integrate_finite",
]


@dataclass(frozen=True)
class DecayHint:
    """How the integrand decays at infinity.

    exponential: |f(t)| <= scale * t**-power * exp(-rate*t) * L(t)
    algebraic:   |f(t)| <= scale * t**-power * L(t), power > 1
    where L(t) = |ln(log_weight * t)| when ``log_weight`` is set, else 1.
    ``bound``, when given, replaces the built-in tail bound T -> bound.
    """

    kind: str = "exponential"
    power: float = 0.0
    scale: float = 1.0
    rate: float = 1.0
    log_weight: float | None = None
    bound: Callable[[float], float] | None = field(default=None, compare=False)

    @classmethod
    def exponential(cls, scale=1.0, power=0.0, rate=1.0, log_weight=None, bound=None):
        return cls("exponential", power, scale, rate, log_weight, bound)

    @classmethod
    def algebraic(cls, power, scale=1.0, log_weight=None, bound=None):
        if power <= 1:
            raise ValueError("algebraic decay needs power > 1 to be integrable")
        return cls("algebraic", power, scale, 1.0, log_weight, bound)

    def tail_bound(self, T: float) -> float:
        """Upper bound on the integral of |f| over [T, inf) (float, may be inf)."""
        if self.bound is not None:
            return float(self.bound(T))
        log_t = math.log(T)
        q = self.power
        if self.kind == "algebraic":
            base = self.scale * math.exp((1 - q) * log_t) / (q - 1)
            if self.log_weight is None:
                return base
            ln_ct = math.log(self.log_weight * T)
            if ln_ct <= 0:
                return math.inf
            return base * (ln_ct + 1 / (q - 1))
        growth = max(0.0, -q)
        log_factor = 1.0
        if self.log_weight is not None:
            ln_ct = math.log(self.log_weight * T)
            if ln_ct <= 1:
                return math.inf
            log_factor = ln_ct
            growth += 1 / ln_ct
        denom = self.rate - growth / T
        if denom <= 0.5 * self.rate:
            return math.inf
        log_bound = math.log(self.scale) - q * log_t - self.rate * T
        return math.exp(log_bound) * log_factor / denom if log_bound > -700 else 0.0


@dataclass(frozen=True)
class QuadConfig:
    target_abs_tol: float = 1e-12
    max_subdivisions: int = 4000
    order: int = 31
    decay_hint: DecayHint = DecayHint()
    dps: int = 30  # working decimal digits
    grade_ratio: float = 0.25

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be > 0")
        if self.order < 5:
            raise ValueError("panel rule order must be >= 5")


@dataclass(frozen=True)
class QuadResult:
    value: object  # mpf
    error_estimate: object  # mpf, absolute
    evaluations: int
    truncation_point: object


_nodes_lock = threading.Lock()
_nodes: dict[tuple[int, int], tuple[tuple, tuple]] = {}


def gauss_legendre(order: int, dps: int):
    """Nodes and weights on [-1, 1] for the ``order``-point rule."""
    key = (order, dps)
    cached = _nodes.get(key)
    if cached is not None:
        return cached
    xs, ws = [], []
    with mp.workdps(dps + 10):
        for i in range(1, order + 1):
            x = mp.cos(mp.pi * (i - mpf(1) / 4) / (order + mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpf(1), x
                for k in range(2, order + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = order * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mpf(10) ** (-(dps + 8)):
                    break
            p0, p1 = mpf(1), x
            for k in range(2, order + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = order * (x * p1 - p0) / (x * x - 1)
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
    cached = (tuple(xs), tuple(ws))
    with _nodes_lock:
        _nodes[key] = cached
    return cached


class _Panels:
    """Panel evaluation and the bisect-the-worst refinement loop."""

    def __init__(self, f, cfg: QuadConfig):
        self.f = f
        self.cfg = cfg
        self.evaluations = 0
        self.hi = gauss_legendre(cfg.order, cfg.dps)
        self.lo = gauss_legendre(cfg.order // 2, cfg.dps)
        self.eps = mpf(10) ** (2 - cfg.dps)
        self._seq = 0
        self.heap: list = []

    def evaluate(self, a, b):
        c = (a + b) / 2
        h = (b - a) / 2
        cache = {}

        def fx(x):
            if x not in cache:
                cache[x] = self.f(c + h * x)
            return cache[x]

        xs, ws = self.hi
        terms = [w * fx(x) for x, w in zip(xs, ws)]
        high = mp.fsum(terms) * h
        mass = mp.fsum(abs(v) for v in terms) * h
        xs, ws = self.lo
        low = mp.fsum(w * fx(x) for x, w in zip(xs, ws)) * h
        self.evaluations += len(cache)
        err = abs(high - low) + self.eps * mass
        return high, err

    def push(self, a, b, value=None, err=None):
        if value is None:
            value, err = self.evaluate(a, b)
        self._seq += 1
        heapq.heappush(self.heap, (-err, self._seq, a, b, value, err))

    def refine(self, budget):
        """Bisect until the summed error is within ``budget``."""
        splits = 0
        while True:
            total = mp.fsum(item[5] for item in self.heap)
            if total <= budget:
                break
            if splits >= self.cfg.max_subdivisions:
                raise ToleranceNotReached(self.value(), total, budget)
            _, _, a, b, _, _ = heapq.heappop(self.heap)
            mid = (a + b) / 2
            self.push(a, mid)
            self.push(mid, b)
            splits += 1
        return total

    def value(self):
        # fixed reduction order: by left endpoint
        return mp.fsum(item[4] for item in sorted(self.heap, key=lambda it: it[2]))


def _choose_truncation(a: float, hint: DecayHint, tol: float) -> float:
    target = tol / 10
    T = max(1.0, 2 * a) if hint.kind == "algebraic" else a + 1.0
    for _ in range(100000):
        if hint.tail_bound(T) < target:
            return T
        T = 2 * T if hint.kind == "algebraic" else T + max(1.0, T / 16)
        if T > 1e300:
            break
    raise ToleranceNotReached(mpf(0), mpf(math.inf), tol)


def integrate_semi_infinite(f: Callable, a, cfg: QuadConfig = QuadConfig()) -> QuadResult:
    """Integral of f over [a, inf), truncated where the decay hint allows."""
    if a < 0:
        raise DomainError(f"lower limit must be >= 0, got {a}")
    tol = cfg.target_abs_tol
    T = _choose_truncation(float(a), cfg.decay_hint, tol)
    tail = cfg.decay_hint.tail_bound(T)
    with mp.workdps(cfg.dps):
        a = mpf(a)
        T = mpf(T)
        panels = _Panels(f, cfg)
        left, width = a, mpf(1)
        while left < T:
            right = min(left + width, T)
            panels.push(left, right)
            left, width = right, 2 * width
        err = panels.refine(mpf(tol) - mpf(tail))
        return QuadResult(+panels.value(), err + mpf(tail), panels.evaluations, T)


def integrate_finite(
    f: Callable, a, b, cfg: QuadConfig = QuadConfig(), grade_left: bool = False
) -> QuadResult:
    """Integral of f over [a, b].

    With ``grade_left`` the range is cut into panels shrinking geometrically
    (ratio ``cfg.grade_ratio``) toward ``a``, for integrable logarithmic
    endpoint behaviour; grading stops once a panel contributes less than a
    tenth of the target, and that panel's magnitude is charged as the bound
    on the ungraded remainder.
    """
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    tol = mpf(cfg.target_abs_tol)
    with mp.workdps(cfg.dps):
        a, b = mpf(a), mpf(b)
        panels = _Panels(f, cfg)
        remainder = mpf(0)
        if grade_left:
            r = mpf(cfg.grade_ratio)
            hi, depth = b, 0
            while True:
                lo = a + (hi - a) * r
                value, err = panels.evaluate(lo, hi)
                panels.push(lo, hi, value, err)
                depth += 1
                if depth >= 3 and abs(value) + err < tol / 10:
                    remainder = abs(value) + err
                    break
                if depth > 4 * cfg.dps + 400:
                    raise ToleranceNotReached(panels.value(), abs(value), tol)
                hi = lo
        else:
            panels.push(a, b)
        err = panels.refine(tol - remainder)
        return QuadResult(+panels.value(), err + remainder, panels.evaluations, b)
