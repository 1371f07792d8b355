"""Tolerance-based (flexible) first-order stochastic dominance toolkit.

Computable counterparts of a satisficing decision framework: classification
of utilities against threshold indicators, a three-case robust
Riemann-Stieltjes integral, dominance with additive slack in one and n
dimensions, inclusion-exclusion survival probabilities, and seeded
randomized suites that verify the framework's lemmas and theorems
numerically.
"""

from .distributions import (
    Interval,
    PiecewiseCdf,
    cdf_eval,
    from_samples,
    uniform_cdf,
)
from .dominance import (
    FfsdVerdict,
    TheoremReport,
    check_equivalence_theorem,
    check_ffsd,
    min_epsilon_ffsd,
)
from .errors import FfsdError
from .integral import RsiCase, RsiResult, rsi
from .kernels import BACKEND as KERNEL_BACKEND
from .multidim import (
    DiscreteJointDist,
    NffsdVerdict,
    OrthantUtility,
    Rectangle,
    all_gt,
    check_equivalence_theorem_nd,
    check_nffsd,
    classify_orthant_indicator,
    joint_cdf_eval,
    min_epsilon_nffsd,
    mixed_vector,
    rsi_nd,
    survival_direct,
    survival_prob,
    volume_n,
)
from .utility import (
    IndicatorClass,
    MatchKind,
    PiecewiseUtility,
    classify_indicator,
    exact_indicator,
    indicator,
    sup_distance_to_indicator,
    witness_utility,
)
from .verify import verify_1d, verify_nd

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "PiecewiseCdf",
    "cdf_eval",
    "from_samples",
    "uniform_cdf",
    "FfsdVerdict",
    "TheoremReport",
    "check_equivalence_theorem",
    "check_ffsd",
    "min_epsilon_ffsd",
    "FfsdError",
    "RsiCase",
    "RsiResult",
    "rsi",
    "KERNEL_BACKEND",
    "DiscreteJointDist",
    "NffsdVerdict",
    "OrthantUtility",
    "Rectangle",
    "all_gt",
    "check_equivalence_theorem_nd",
    "check_nffsd",
    "classify_orthant_indicator",
    "joint_cdf_eval",
    "min_epsilon_nffsd",
    "mixed_vector",
    "rsi_nd",
    "survival_direct",
    "survival_prob",
    "volume_n",
    "IndicatorClass",
    "MatchKind",
    "PiecewiseUtility",
    "classify_indicator",
    "exact_indicator",
    "indicator",
    "sup_distance_to_indicator",
    "witness_utility",
    "verify_1d",
    "verify_nd",
]
