"""Exact rational toolkit for c₀-extension constructions on compact lines."""

from .order import (
    ClopenInterval,
    ClopenPartition,
    DoubleArrowLine,
    FiniteLine,
    LexDouble,
    OrdinalLine,
    QuotientMap,
    UnitIntervalLine,
    build_quotient,
    lex_double,
    ordinal,
    refine_partitions,
)
from .measures import NBVProfile, SignedMeasure, bv_norm, cumulative, dirac, pushforward, rs_integral
from .functions import (
    CoefficientPattern,
    CoordinateEmbedding,
    FiniteBasis,
    PiecewiseLinear,
    StepFunction,
    diam_phi,
    dual_norm,
    phi,
    pullback,
    r_star,
)
from .fragmentation import Hierarchy, alpha_of_interval, compute_hierarchy, flower_bound, level_of
from .rewrites import skeleton, tilde_mu
from .sequences import MeasureSequence, explicit, harmonic, scaled, sweep_sequence
from .decomposition import DecompositionConfig, choose_schedule, decompose, verify_decomposition
from .extension import check_criterion, extend_through_quotient, full_pipeline, sobczyk_extend, split_operator

__version__ = "0.1.0"
