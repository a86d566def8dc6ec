"""Residue-class permutations of the non-negative integers.

Build permutations such as ``P(a,b,c,d)``, walk their orbits, run cycle
censuses below a bound, and compute diophantine bounds that rule out
m-cycles with large elements.
"""

from .census import CensusReport, CensusSettings, cycle_census, divergence_ratio, sweep_generalizations
from .dynamics import Cycle, CycleRecord, Escaped, StepLimit, classify_cycle, run_trajectory
from .kernel import BACKEND, HAVE_COMPILED
from .numerics import NoCrossingError, PrecisionError, PrecReal, cf_expand, hp_log, max_partial_quotient
from .perm import (
    IntegrityError,
    ParameterError,
    PermSpec,
    ResourceError,
    ccset_validate,
    generalize,
    make_fafc,
    make_pabcd,
    verify_bijection,
)
from .primes import PrimeCompositePerm, prime_composite_perm

__all__ = [
    "BACKEND",
    "HAVE_COMPILED",
    "CensusReport",
    "CensusSettings",
    "Cycle",
    "CycleRecord",
    "Escaped",
    "IntegrityError",
    "NoCrossingError",
    "ParameterError",
    "PermSpec",
    "PrecReal",
    "PrecisionError",
    "PrimeCompositePerm",
    "ResourceError",
    "StepLimit",
    "ccset_validate",
    "cf_expand",
    "classify_cycle",
    "cycle_census",
    "divergence_ratio",
    "generalize",
    "hp_log",
    "make_fafc",
    "make_pabcd",
    "max_partial_quotient",
    "prime_composite_perm",
    "run_trajectory",
    "sweep_generalizations",
    "verify_bijection",
]
