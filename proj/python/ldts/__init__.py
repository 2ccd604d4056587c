"""Loss-decrease-aware curriculum training toolkit."""

from ._core import (
    ArgumentError,
    ConfigError,
    DataError,
    Dataset,
    EpochReport,
    ModelParams,
    Relation,
    ShapeError,
    TrainResult,
    aggregate_features,
    easiest_by_absolute_loss,
    evaluate,
    generate_synthetic,
    loss_decrease,
    pacing_fraction,
    pacing_table,
    sample_count,
    sample_without_replacement,
    to_probability,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "ConfigError",
    "DataError",
    "Dataset",
    "EpochReport",
    "ModelParams",
    "Relation",
    "ShapeError",
    "TrainResult",
    "aggregate_features",
    "easiest_by_absolute_loss",
    "evaluate",
    "generate_synthetic",
    "loss_decrease",
    "pacing_fraction",
    "pacing_table",
    "sample_count",
    "sample_without_replacement",
    "to_probability",
    "train",
]
