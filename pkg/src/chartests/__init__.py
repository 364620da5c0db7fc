"""Goodness-of-fit and symmetry tests built on equidistribution characterizations.

The package provides U-statistics and U-empirical distribution functions,
characterization-based and classical test statistics, Monte Carlo critical
values and power, and a numerical engine for local Bahadur efficiency.
"""

from ._backend import NAME as BACKEND
from .alternatives import FAMILIES, AlternativeFamily, get_family, kl_to_null, sample_alternative
from .characterizations import (REGISTRY, Characterization, TiesWarning, angus_statistic,
                                get_characterization, run_characterization_test)
from .classical import gini, gini_quadratic, greenwood, lilliefors, moran
from .errors import (CacheError, ChartestsError, DegeneracyError, DegreeError, DomainError,
                     NumericError, SimulationError)
from .montecarlo import (NullDistribution, PowerResult, SimConfig, critical_value,
                         null_distribution, p_value, power, simulate_null, size)
from .registry import TESTS, StatTest, get_test
from .sample import Domain, Sample
from .uecdf import TestResult, UEmpiricalCDF, build_uecdf, integral_statistic, kolmogorov_statistic
from .ustat import (DESU, GINI, Kernel, clt_params, evaluate_u_statistic, projection_profile,
                    projection_variance)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "DESU", "FAMILIES", "GINI", "REGISTRY", "TESTS", "AlternativeFamily",
    "CacheError", "Characterization", "ChartestsError", "DegeneracyError", "DegreeError",
    "Domain", "DomainError", "Kernel", "NullDistribution", "NumericError", "PowerResult",
    "Sample", "SimConfig", "SimulationError", "StatTest", "TestResult", "TiesWarning",
    "UEmpiricalCDF", "angus_statistic", "build_uecdf", "clt_params", "critical_value",
    "evaluate_u_statistic", "get_characterization", "get_family", "get_test", "gini",
    "gini_quadratic", "greenwood", "integral_statistic", "kl_to_null", "kolmogorov_statistic",
    "lilliefors", "moran", "null_distribution", "p_value", "power", "projection_profile",
    "projection_variance", "run_characterization_test", "sample_alternative", "simulate_null",
    "size",
]
