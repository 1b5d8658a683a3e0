"""Hoelder summability of rank sequences and infinite Euler characteristics of chain complexes."""

__version__ = "0.1.0"

from .chain import (
    ChainComplex,
    ChainMap,
    ExplicitComplex,
    HomologyOnlyComplex,
    PeriodicComplex,
    ZeroDifferentialComplex,
    direct_sum,
    rank_bundle,
    shift_complex,
    validate,
)
from .construct import builtin, greedy_certificate, one_over_m, rational_target, real_target
from .euler import PreconditionError, chi_h, chi_via_chain_modules, rc_identity_check
from .fmodel import approximate, verify_approximation
from .k0 import FormalSum, K0Ledger, check_relations, chi_on_class, surjectivity_witness
from .linalg import IntMatrix, Lattice
from .seq import (
    EventuallyPeriodic,
    ExplicitPrefix,
    RuleBased,
    Status,
    SummabilityConfig,
    Verdict,
    cesaro_power_prefix,
    cesaro_prefix,
    h_limit,
    is_h_o_n,
    rule,
)
from .ses import SesSpec, additivity_chi_check, additivity_identity_check, delta_seq, validate_ses

__all__ = [
    "ChainComplex",
    "ChainMap",
    "EventuallyPeriodic",
    "ExplicitComplex",
    "ExplicitPrefix",
    "FormalSum",
    "HomologyOnlyComplex",
    "IntMatrix",
    "K0Ledger",
    "Lattice",
    "PeriodicComplex",
    "PreconditionError",
    "RuleBased",
    "SesSpec",
    "Status",
    "SummabilityConfig",
    "Verdict",
    "ZeroDifferentialComplex",
    "additivity_chi_check",
    "additivity_identity_check",
    "approximate",
    "builtin",
    "cesaro_power_prefix",
    "cesaro_prefix",
    "check_relations",
    "chi_h",
    "chi_on_class",
    "chi_via_chain_modules",
    "delta_seq",
    "direct_sum",
    "greedy_certificate",
    "h_limit",
    "is_h_o_n",
    "one_over_m",
    "rank_bundle",
    "rational_target",
    "rc_identity_check",
    "real_target",
    "rule",
    "shift_complex",
    "surjectivity_witness",
    "validate",
    "validate_ses",
    "verify_approximation",
]
