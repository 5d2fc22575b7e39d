"""
Prediction
Raw UCP or project descriptor in, effort in original units out
"""

import logging
from pathlib import Path
from typing import Union

from ..errors import ValidationError
from ..models.data import ProjectDescriptor, SvrModel
from ..selection.scaling import scale_apply, unscale
from ..svr.solver import predict
from ..ucp.calculator import compute_ucp
from .model_store import load_model

logger = logging.getLogger(__name__)


def predict_effort(model: Union[SvrModel, str, Path],
                   project_or_ucp: Union[ProjectDescriptor, float]) -> float:
    """Scale the size with the model's stored constants, predict, and unscale.

    Inputs outside the training range are extrapolated with a warning.
    """
    if not isinstance(model, SvrModel):
        model = load_model(model)
    if model.feature_scaling is None or model.target_scaling is None:
        raise ValidationError("model carries no scaling constants; retrain it through the pipeline")

    if isinstance(project_or_ucp, ProjectDescriptor):
        ucp = compute_ucp(project_or_ucp).ucp
        logger.debug("project '%s' sized at %.6g UCP", project_or_ucp.name, ucp)
    else:
        ucp = float(project_or_ucp)

    low, high = model.feature_scaling.min_value, model.feature_scaling.max_value
    if not low <= ucp <= high:
        logger.warning("UCP %.6g is outside the training range [%.6g, %.6g]; extrapolating", ucp, low, high)

    scaled = predict(model, (scale_apply(model.feature_scaling, ucp),))
    return unscale(model.target_scaling, scaled)
