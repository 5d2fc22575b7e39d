"""
Min-Max Scaling
Maps sizes and efforts onto [0, 1] and back
"""

from typing import Sequence

import numpy as np

from ..errors import ValidationError
from ..models.data import LabeledDataset, Record, ScalingParams

DEGENERATE_SCALED_VALUE = 0.5


def scale_fit(values: Sequence[float]) -> ScalingParams:
    """Capture min and max of the values."""
    array = np.asarray(values, dtype=float).reshape(-1)
    if array.size == 0:
        raise ValidationError("cannot fit scaling on an empty column")
    return ScalingParams(float(array.min()), float(array.max()))


def scale_apply(params: ScalingParams, x: float) -> float:
    """(x - min) / (max - min); 0.5 when max equals min."""
    span = params.max_value - params.min_value
    if span == 0:
        return DEGENERATE_SCALED_VALUE
    return (x - params.min_value) / span


def unscale(params: ScalingParams, scaled: float) -> float:
    """Inverse of scale_apply; returns min when max equals min."""
    return params.min_value + scaled * (params.max_value - params.min_value)


def unscale_array(params: ScalingParams, scaled) -> np.ndarray:
    return params.min_value + np.asarray(scaled, dtype=float) * (params.max_value - params.min_value)


def scale_dataset(data: LabeledDataset) -> LabeledDataset:
    """Fit feature and target scaling on the whole dataset and apply it.

    Feature components share one set of constants (the pipeline's feature is
    the single UCP value).
    """
    if len(data) == 0:
        raise ValidationError("cannot scale an empty dataset")
    if data.is_scaled:
        return data
    return apply_scaling(data, scale_fit(data.features.reshape(-1)), scale_fit(data.targets))


def apply_scaling(data: LabeledDataset, feature_params: ScalingParams,
                  target_params: ScalingParams) -> LabeledDataset:
    """Scale an unscaled dataset with constants fitted elsewhere (e.g. a saved model)."""
    if data.is_scaled:
        raise ValidationError("dataset is already scaled")
    records = tuple(
        Record(
            feature=tuple(scale_apply(feature_params, v) for v in record.feature),
            effort=scale_apply(target_params, record.effort),
            raw_feature=record.feature,
            raw_effort=record.effort,
        )
        for record in data.records
    )
    return LabeledDataset(records, feature_params, target_params)
