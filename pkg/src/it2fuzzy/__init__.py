"""Interval type-2 fuzzy logic: sets, type reduction, inference, experiments."""

from .errors import (
    ConvergenceError,
    FouConstraintError,
    GridMismatchError,
    NoRuleFiredError,
    ParameterError,
    UndefinedCentroidError,
)
from .membership import (
    MF_REGISTRY,
    const_mf,
    gauss_uncert_mean_lmf,
    gauss_uncert_mean_umf,
    gauss_uncert_std_lmf,
    gauss_uncert_std_umf,
    gaussian_mf,
    singleton_mf,
    trapezoid_mf,
    tri_mf,
    zero_mf,
)
from .sets import (
    IT2FS,
    Grid,
    gaussian_uncert_mean_set,
    gaussian_uncert_std_set,
    join,
    make_it2fs,
    max_s_norm,
    meet,
    min_t_norm,
    product_t_norm,
    register_norm,
)
from .typereduce import (
    ALGORITHMS,
    BMMWeights,
    TRInterval,
    WeightedDomain,
    bmm,
    centroid_exact,
    crisp,
    eiasc,
    ekm,
    km,
    lbmm,
    nt,
    reduce_domain,
    twekm,
    wekm,
    wm,
    wm_bounds,
)
from .inference import EvalResult, FuzzySystem, METHODS, Rule, firing_interval
from .pso import PSOConfig, PSOResult, optimize

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BMMWeights",
    "ConvergenceError",
    "EvalResult",
    "FouConstraintError",
    "FuzzySystem",
    "Grid",
    "GridMismatchError",
    "IT2FS",
    "METHODS",
    "MF_REGISTRY",
    "NoRuleFiredError",
    "PSOConfig",
    "PSOResult",
    "ParameterError",
    "Rule",
    "TRInterval",
    "UndefinedCentroidError",
    "WeightedDomain",
    "bmm",
    "centroid_exact",
    "const_mf",
    "crisp",
    "eiasc",
    "ekm",
    "firing_interval",
    "gauss_uncert_mean_lmf",
    "gauss_uncert_mean_umf",
    "gauss_uncert_std_lmf",
    "gauss_uncert_std_umf",
    "gaussian_mf",
    "gaussian_uncert_mean_set",
    "gaussian_uncert_std_set",
    "join",
    "km",
    "lbmm",
    "make_it2fs",
    "max_s_norm",
    "meet",
    "min_t_norm",
    "nt",
    "optimize",
    "product_t_norm",
    "reduce_domain",
    "register_norm",
    "singleton_mf",
    "trapezoid_mf",
    "tri_mf",
    "twekm",
    "wekm",
    "wm",
    "wm_bounds",
    "zero_mf",
]
