"""Visibility-graph descriptor pooling for 1-D feature sequences.

Build natural/horizontal/weighted visibility graphs from real-valued
series, pool them into degree-based descriptor vectors, verify the exact
degree laws the construction obeys, and classify descriptor tables with a
shrinkage-regularized linear discriminant.
"""

from .classify import (
    EvalReport,
    LabeledDataset,
    LdaModel,
    SplitProtocol,
    evaluate,
    lda_fit,
    lda_predict,
    make_splits,
)
from .descriptors import (
    DescriptorVector,
    DistanceDegreeProfile,
    canonical_scheme,
    combine,
    degree_at_distance,
    degree_sequence,
    distance_profile,
    normalize,
    scheme_matches,
)
from .errors import (
    InvalidArgumentError,
    InvalidInputError,
    ParseError,
    ResourceLimitError,
    VgpoolError,
)
from .graphs import (
    Series,
    VisibilityGraph,
    as_series,
    build_hvg,
    build_nvg,
    build_wvg,
    hvg_edges_reference,
    nvg_edges_reference,
)
from .numth import (
    check_divisor_sum,
    deg_arith,
    divisors,
    k_left,
    k_left_closed_form,
    k_right,
    mobius,
)
from .pipeline import (
    FeatureTable,
    RunConfig,
    config_from_scheme,
    descriptor_matrix,
    emit_profile,
    emit_report,
    load_features,
    run_pipeline,
    sample_descriptor,
    save_features,
)
from .synth import (
    FractalSeriesSpec,
    synth_fractal,
    synth_periodic,
    synth_random_uniform,
)
from .verify import CheckResult, run_identity_checks

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "DescriptorVector",
    "DistanceDegreeProfile",
    "EvalReport",
    "FeatureTable",
    "FractalSeriesSpec",
    "InvalidArgumentError",
    "InvalidInputError",
    "LabeledDataset",
    "LdaModel",
    "ParseError",
    "ResourceLimitError",
    "RunConfig",
    "Series",
    "SplitProtocol",
    "VgpoolError",
    "VisibilityGraph",
    "as_series",
    "build_hvg",
    "build_nvg",
    "build_wvg",
    "canonical_scheme",
    "check_divisor_sum",
    "combine",
    "config_from_scheme",
    "deg_arith",
    "degree_at_distance",
    "degree_sequence",
    "descriptor_matrix",
    "distance_profile",
    "divisors",
    "emit_profile",
    "emit_report",
    "evaluate",
    "hvg_edges_reference",
    "k_left",
    "k_left_closed_form",
    "k_right",
    "lda_fit",
    "lda_predict",
    "load_features",
    "make_splits",
    "mobius",
    "normalize",
    "nvg_edges_reference",
    "run_identity_checks",
    "run_pipeline",
    "sample_descriptor",
    "save_features",
    "scheme_matches",
    "synth_fractal",
    "synth_periodic",
    "synth_random_uniform",
]
