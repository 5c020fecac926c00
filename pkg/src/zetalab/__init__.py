"""zetalab: numerical workbench for Liouville sums and zeta ratio identities."""

__version__ = "0.1.0"

from .errors import (
    ZetalabError,
    DomainError,
    PoleError,
    CapacityError,
    PrecisionError,
    DivisionInstabilityError,
)
from .liouville import (
    liouville,
    sieve_range,
    iter_lambda_segments,
    iter_mobius_segments,
    LiouvilleTable,
    SignScanReport,
    ScanResult,
    ScanCheckpoint,
    run_scan,
    scan_polya,
    scan_turan,
    set_default_threads,
)
from .xi import (
    XiSequence,
    DEFAULT_XI,
    xi,
    xi_residual,
    XiMonotoneReport,
    check_monotone_limit,
    write_xi_csv,
)
from .sums import PrefixEvaluator, f_x, l_x, mvt_weight, write_sums_csv
from .zeta import (
    ZetaParams,
    RealBounds,
    zeta,
    zeta_with_error,
    zeta_ratio,
    shifted_ratio,
    lambda_series,
    real_bounds_check,
)
from .integrals import (
    StepKind,
    StepFunction,
    IntegralResult,
    SigmaCEstimate,
    integrate_step,
    j_xi,
    estimate_sigma_c,
)
from .verify import (
    VerificationCase,
    ConditionRReport,
    GrowthExponentReport,
    verify_pnt_limit,
    verify_reciprocal_integral,
    verify_ratio_integral,
    verify_ratio_decomposition,
    verify_shifted_identity,
    verify_finite_linearity,
    explore_condition_r,
    fit_growth_exponent,
    growth_exponent_diagnostic,
    run_default_suite,
    write_report_json,
)
