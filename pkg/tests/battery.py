"""Closed-form integrals for checking quadrature error estimates."""
from mpmath import mp

from fpzeta.quadrature import DecayHint, QuadConfig, integrate_finite, integrate_semi_infinite


def _semi(f, a, hint):
    return lambda cfg: integrate_semi_infinite(f, a, QuadConfig(cfg.target_abs_tol, decay_hint=hint, dps=cfg.dps))


def _finite(f, a, b, graded=False):
    return lambda cfg: integrate_finite(f, a, b, cfg, grade_left=graded)


# name -> (runner(cfg), exact value as a callable evaluated at working precision)
BATTERY = {
    "exp": (_semi(lambda t: mp.exp(-t), 0, DecayHint.exponential()), lambda: mp.mpf(1)),
    "t/sinh": (
        _semi(lambda t: t / mp.sinh(t), 0, DecayHint.exponential(scale=2.4, power=-1)),
        lambda: mp.pi**2 / 4,
    ),
    "lorentzian": (_semi(lambda t: 1 / (1 + t * t), 0, DecayHint.algebraic(2)), lambda: mp.pi / 2),
    "cube": (_semi(lambda t: 1 / t**3, 1, DecayHint.algebraic(3)), lambda: mp.mpf(1) / 2),
    "log_endpoint": (_finite(lambda t: mp.log(t), 0, 1, graded=True), lambda: mp.mpf(-1)),
    "t_log_t": (_finite(lambda t: t * mp.log(t), 0, 1, graded=True), lambda: mp.mpf(-1) / 4),
    "sin": (_finite(mp.sin, 0, mp.pi), lambda: mp.mpf(2)),
    "gauss": (
        _semi(lambda t: mp.exp(-t * t), 0, DecayHint.exponential(scale=1.0)),
        lambda: mp.sqrt(mp.pi) / 2,
    ),
}


def run(name, tol=1e-12, dps=30):
    runner, exact = BATTERY[name]
    cfg = QuadConfig(target_abs_tol=tol, dps=dps)
    res = runner(cfg)
    with mp.workdps(dps + 20):
        err = abs(res.value - exact())
    return res, err
