"""
Selection Module
Scaling, stride splits, k-fold partitions and grid-search model selection
"""

from .scaling import scale_fit, scale_apply, unscale, scale_dataset
from .splitting import split_test, kfold_partitions, derive_c
from .grid_search import grid_search, select_and_finalize, evaluate_model, GridSearch

__all__ = [
    'scale_fit', 'scale_apply', 'unscale', 'scale_dataset', 'split_test',
    'kfold_partitions', 'derive_c', 'grid_search', 'select_and_finalize',
    'evaluate_model', 'GridSearch',
]
