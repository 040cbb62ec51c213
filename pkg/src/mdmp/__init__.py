"""Exact multidimensional matrix profile engine for anomaly detection.

The profile of a d-dimensional series assigns every subsequence a row
of k-th nearest-neighbor distances, one per number of spanned
dimensions, so anomalies confined to a few dimensions stay visible
next to ones spanning many. Everything is exact: no lower bounds, no
sampling, and parallel runs are bit-identical to serial ones.
"""

from .bench import (
    bench_knn,
    bench_variants,
    fit_loglog_slope,
    knn_experiment,
    variants_experiment,
)
from .distance import (
    DistanceProfileRow,
    WindowStats,
    compute_window_stats,
    distance_profile_row,
    stream_distance_rows,
    znorm_distance,
)
from .estimator import MatrixProfileDetector
from .exceptions import (
    DataError,
    DegenerateLabels,
    DimMismatch,
    InfeasibleError,
    InfeasibleK,
    InvalidWindow,
    MdmpError,
    NoAnomalyInTrainLabels,
    NoAnomalyRange,
    NonFiniteValue,
    NonMonotonicTimestamp,
    ParseError,
    RankOutOfRange,
    SeriesTooShort,
    SpecInvalid,
    StatsMismatch,
)
from .io import (
    DatasetFile,
    load_csv,
    load_scores_csv,
    write_dataset_csv,
    write_scores_csv,
)
from .knn import (
    KnnQuery,
    KnnResult,
    apply_exclusion_zone,
    exclusion_radius,
    find_knn_brute,
    find_knn_naive_sort,
    find_knn_select,
)
from .metrics import (
    N_THRESHOLDS,
    EvalResult,
    auc_roc,
    evaluate,
    labels_to_ranges,
    range_pr_auc,
)
from .pipeline import (
    DetectorConfig,
    SupervisedDetection,
    default_config,
    default_grid,
    detect_semisupervised,
    detect_supervised,
    detect_unsupervised,
    reverse_window,
    select_dimension,
    smooth_scores,
)
from .profile import (
    NAIVE_SUM,
    POST_MAX,
    POST_SORT,
    PRE_MAX,
    PRE_SORT,
    VARIANTS,
    MultidimProfile,
    Placement,
    ProfileVariant,
    Reduction,
    mp_ab_join,
    mp_self_join,
    reduce_pair_vector,
)
from .series import MultivariateSeries, as_series
from .synth import KINDS, Anomaly, SynthSpec, generate_fixture

__version__ = "0.1.0"

__all__ = [
    "Anomaly",
    "DataError",
    "DatasetFile",
    "DegenerateLabels",
    "DetectorConfig",
    "DimMismatch",
    "DistanceProfileRow",
    "EvalResult",
    "InfeasibleError",
    "InfeasibleK",
    "InvalidWindow",
    "KINDS",
    "KnnQuery",
    "KnnResult",
    "MatrixProfileDetector",
    "MdmpError",
    "MultidimProfile",
    "MultivariateSeries",
    "NAIVE_SUM",
    "N_THRESHOLDS",
    "NoAnomalyInTrainLabels",
    "NoAnomalyRange",
    "NonFiniteValue",
    "NonMonotonicTimestamp",
    "POST_MAX",
    "POST_SORT",
    "PRE_MAX",
    "PRE_SORT",
    "ParseError",
    "Placement",
    "ProfileVariant",
    "RankOutOfRange",
    "Reduction",
    "SeriesTooShort",
    "SpecInvalid",
    "StatsMismatch",
    "SupervisedDetection",
    "SynthSpec",
    "VARIANTS",
    "WindowStats",
    "apply_exclusion_zone",
    "as_series",
    "auc_roc",
    "bench_knn",
    "bench_variants",
    "compute_window_stats",
    "default_config",
    "default_grid",
    "detect_semisupervised",
    "detect_supervised",
    "detect_unsupervised",
    "distance_profile_row",
    "evaluate",
    "exclusion_radius",
    "find_knn_brute",
    "find_knn_naive_sort",
    "find_knn_select",
    "fit_loglog_slope",
    "generate_fixture",
    "knn_experiment",
    "labels_to_ranges",
    "load_csv",
    "load_scores_csv",
    "mp_ab_join",
    "mp_self_join",
    "range_pr_auc",
    "reduce_pair_vector",
    "reverse_window",
    "select_dimension",
    "smooth_scores",
    "stream_distance_rows",
    "variants_experiment",
    "write_dataset_csv",
    "write_scores_csv",
    "znorm_distance",
]
