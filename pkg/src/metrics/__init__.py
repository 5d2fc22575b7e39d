"""
Metrics Module
Error and accuracy statistics for effort predictions
"""

from .evaluation import mse, rmse, nrms, mmre, pred, r_squared, evaluate

__all__ = ['mse', 'rmse', 'nrms', 'mmre', 'pred', 'r_squared', 'evaluate']
