"""Odd zeta values and their derivatives from finite-part integrals of csch.

Values are mpmath ``mpf`` numbers computed at the requested number of decimal
digits plus guard digits; every integral representation is refereed by an
accelerated alternating-series oracle.
"""
from .errors import DomainError, ToleranceNotReached
from .exact_core import bernoulli, check_appendix_identities, csch_laurent_coeff, harmonic, zeta_even
from .fpi import fpi_csch_finite, fpi_csch_semi_infinite
from .quadrature import DecayHint, QuadConfig, QuadResult
from .zeta_prime import Route, ZetaPrimeResult, relation_residual, zeta_prime_odd
from .zeta_reps import MethodId, ZetaResult, main_theorem_convert, residue_sum_check, zeta_odd

__version__ = "0.1.0"

__all__ = [
    "DecayHint",
    "DomainError",
    "MethodId",
    "QuadConfig",
    "QuadResult",
    "Route",
    "ToleranceNotReached",
    "ZetaPrimeResult",
    "ZetaResult",
    "bernoulli",
    "check_appendix_identities",
    "csch_laurent_coeff",
    "fpi_csch_finite",
    "fpi_csch_semi_infinite",
    "harmonic",
    "main_theorem_convert",
    "relation_residual",
    "residue_sum_check",
    "zeta_even",
    "zeta_odd",
    "zeta_prime_odd",
]
