"""Decision thresholds for signal identification in the rare-weak normal mixture.

The package compares the Higher Criticism (HC), Kolmogorov-Smirnov (KS),
class-boundary (CB) and local-fdr thresholds, both at population level and
on finite samples, and ships a Monte-Carlo harness for error counting.
"""

from .model import (
    LabeledSample,
    RwModel,
    alt_cdf,
    alt_density,
    mix_cdf,
    mix_density,
    null_cdf,
    null_density,
    oracle_local_fdr,
    p_value,
    sample,
    tau_from_two_class,
)
from .thresholds import (
    HcOptimum,
    NoThresholdError,
    ThresholdSet,
    cb_threshold,
    fdr_cutoff,
    hc_cb_ratio_at_boundary,
    hc_maximize,
    hc_stationarity_residual,
    hc_stationarity_sides,
    UndefinedPointError,
    pvalue_hc_objective,
    identification_tau,
    hc_threshold,
    ks_threshold,
    population_hc_objective,
    threshold_set,
)
from .empirical import (
    HcResult,
    PValueSample,
    classify,
    ecdf,
    empirical_hc_threshold,
    InsufficientDataError,
    hc_objective_at_order_stats,
)
from .fdr import (
    FdrCurves,
    MixtureFit,
    bh_tail_fdr,
    cutoff_from_curve,
    fit_mixture,
    local_fdr_curve,
    oracle_fit,
)
from .phase import (
    PhaseCoords,
    Region,
    classify_region,
    detection_boundary,
    from_phase,
    identification_boundary,
    recovery_boundary,
    to_phase,
)
from .simulation import (
    ErrorCounts,
    StudyConfig,
    StudySummary,
    emit_error_table,
    run_study,
    run_trial,
)

__version__ = "0.1.0"
