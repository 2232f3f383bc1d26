"""Bell and measurement-dependent-local (MDL) inequalities under imperfect detectors."""
from .behavior import (
    Behavior,
    InvalidBehaviorError,
    JointBehavior,
    ObservedBehavior,
    behavior_from_json,
    behavior_to_json,
    check_no_signalling,
    deterministic_behavior,
    from_correlators,
    pr_box,
    to_joint,
    uniform_behavior,
)
from .detector import DetectorParams, apply_detectors, detector_matrix, outcome_channel
from .inequalities import (
    MDLParams,
    MDMeasures,
    TiltedParams,
    chsh_value,
    critical_M,
    md_nonlocal,
    md_tilted_bound,
    obs3_polynomial,
    obs4_prblg_closed,
    obs4_zrlh_closed,
    prblg_lhs,
    prblg_threshold_amp,
    sauer_lhs,
    tilted_local_bound,
    tilted_ns_bound,
    tilted_quantum_bound,
    tilted_value,
    zrlh_lhs,
)
from .lp import InfeasibleError, LinearProgram, UnboundedError, lp_max
from .mdl_models import (
    PRESETS,
    FiniteHVModel,
    adversary_model,
    bruteforce_md_tilted_max,
    md_measures,
)
from .quantum import (
    DichotomicObservable,
    PureTwoQubitState,
    TiltedFamilyParams,
    amp_tilted_behavior,
    born_behavior,
    theta_to_w,
    w_to_theta,
    zrlh_behavior,
    zrlh_config,
)
from .scan import (
    ScanError,
    ScanResult,
    critical_M_curve,
    md_region_grid,
    min_efficiency_prblg,
    min_efficiency_zrlh,
    scan_detectors,
    zrlh_detector_region,
)

__version__ = "0.1.0"
