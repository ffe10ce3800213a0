"""Uniform-sampling coresets for regularized loss minimization."""

from .errors import (
    DegenerateInstanceError,
    EmptyDatasetError,
    InvalidParameterError,
    InvalidWeightsError,
    LabelError,
    NoChunkFoundError,
    NonBinaryLabelsError,
    NonFiniteError,
    ParseError,
    RlmError,
    SchemaMismatchError,
    StreamTooShortError,
    ZeroObjectiveError,
)
from .model import (
    Hypothesis,
    LabeledPoint,
    LossKind,
    RegularizerKind,
    RlmInstance,
    WeightedCoreset,
    approximation_error,
    check_weight_sum,
    coreset_objective,
    full_objective,
    loss_eval,
    point_loss,
    point_objective,
    reg_eval,
    softplus,
)
from .sampling import (
    RNG_ALGORITHM,
    ReservoirSampler,
    SampleMode,
    SamplerConfig,
    sensitivity_sample,
    stream_sample,
    uniform_sample,
)
from .sensitivity import (
    ScalingConstants,
    SensitivityProfile,
    check_scaling,
    sample_size,
    scaling_constants,
    sensitivity_upper_bound,
    total_sensitivity_default,
)

__version__ = "0.1.0"
