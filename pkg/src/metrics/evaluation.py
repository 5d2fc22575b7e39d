"""
Evaluation Metrics
MSE, RMSE, NRMS, MMRE, PRED and the squared correlation coefficient
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DegenerateInputError, ValidationError
from ..models.data import EvaluationReport

logger = logging.getLogger(__name__)

REPORT_FIELDS = ('mse', 'rmse', 'nrms', 'mmre', 'pred', 'r_squared', 'n')
REPORT_LABELS = {
    'mse': 'MSE',
    'rmse': 'RMSE',
    'nrms': 'NRMS',
    'mmre': 'MMRE',
    'pred': 'PRED (%)',
    'r_squared': 'Squared correlation coefficient',
    'n': 'N',
}


def _pair(actual: Sequence[float], predicted: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=float).reshape(-1)
    p = np.asarray(predicted, dtype=float).reshape(-1)
    if a.size != p.size:
        raise ValidationError(f"{a.size} actual values but {p.size} predictions")
    if a.size == 0:
        raise ValidationError("no values to evaluate")
    return a, p


def mse(actual: Sequence[float], predicted: Sequence[float]) -> float:
    """Mean of squared errors."""
    a, p = _pair(actual, predicted)
    return float(np.mean((a - p) ** 2))


def rmse(mse_value: float) -> float:
    """Square root of the mean squared error."""
    if mse_value < 0:
        raise ValidationError(f"MSE cannot be negative, got {mse_value}")
    return math.sqrt(mse_value)


def nrms(rmse_value: float, reference_actuals: Sequence[float]) -> float:
    """RMSE over the population standard deviation of the reference actuals."""
    reference = np.asarray(reference_actuals, dtype=float).reshape(-1)
    if reference.size < 2:
        raise DegenerateInputError("NRMS needs at least two reference values")
    spread = float(np.std(reference))
    if spread == 0:
        raise DegenerateInputError("reference actuals have zero standard deviation")
    return rmse_value / spread


def mmre(actual: Sequence[float], predicted: Sequence[float]) -> float:
    """Mean magnitude of relative error."""
    a, p = _pair(actual, predicted)
    if np.any(a == 0):
        raise ValidationError("MMRE is undefined when an actual value is zero")
    return float(np.mean(np.abs(a - p) / np.abs(a)))


def pred(actual: Sequence[float], predicted: Sequence[float]) -> float:
    """(1 - mean absolute error) * 100, meaningful on [0,1]-scaled efforts."""
    a, p = _pair(actual, predicted)
    return float((1.0 - np.mean(np.abs(a - p))) * 100.0)


def r_squared(actual: Sequence[float], predicted: Sequence[float]) -> float:
    """Square of the Pearson correlation between actual and predicted."""
    a, p = _pair(actual, predicted)
    if a.size < 2:
        raise DegenerateInputError("r squared needs at least two pairs")
    da = a - a.mean()
    dp = p - p.mean()
    var_a = float(np.dot(da, da))
    var_p = float(np.dot(dp, dp))
    if var_a == 0 or var_p == 0:
        raise DegenerateInputError("r squared is undefined for constant values")
    value = float(np.dot(da, dp)) ** 2 / (var_a * var_p)
    return min(1.0, value)


def _or_nan(compute, name: str) -> float:
    try:
        return compute()
    except DegenerateInputError as e:
        logger.warning("%s undefined: %s", name, e)
        return float('nan')


def evaluate(actual: Sequence[float], predicted: Sequence[float],
             original_actual: Optional[Sequence[float]] = None,
             original_predicted: Optional[Sequence[float]] = None) -> EvaluationReport:
    """Every statistic for one set of predictions.

    MSE, RMSE, NRMS, PRED and r squared use the (scaled) values; MMRE uses the
    original-unit values when they are given.
    """
    a, p = _pair(actual, predicted)
    mse_value = mse(a, p)
    rmse_value = rmse(mse_value)
    if original_actual is not None and original_predicted is not None:
        mmre_value = mmre(original_actual, original_predicted)
    else:
        mmre_value = mmre(a, p)
    return EvaluationReport(
        mse=mse_value,
        rmse=rmse_value,
        nrms=_or_nan(lambda: nrms(rmse_value, a), 'NRMS'),
        mmre=mmre_value,
        pred=pred(a, p),
        r_squared=_or_nan(lambda: r_squared(a, p), 'r squared'),
        n=int(a.size),
    )


def format_value(value: float, digits: int = 4) -> str:
    """Human rendering at the given number of decimals."""
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return 'nan'
    return f"{value:.{digits}f}"


def render_report_table(report: EvaluationReport, title: Optional[str] = None) -> str:
    """Two-column (metric, value) text table."""
    width = max(len(label) for label in REPORT_LABELS.values())
    lines: List[str] = []
    if title:
        lines.append(title)
    for name in REPORT_FIELDS:
        lines.append(f"{REPORT_LABELS[name]:<{width}}  {format_value(getattr(report, name))}")
    return "\n".join(lines)


def report_csv_header() -> List[str]:
    return list(REPORT_FIELDS)


def report_csv_row(report: EvaluationReport) -> List[str]:
    """Full-precision values in REPORT_FIELDS order."""
    return [repr(getattr(report, name)) for name in REPORT_FIELDS]
