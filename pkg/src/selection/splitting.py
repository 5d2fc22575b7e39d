"""
Data Splitting
Stride-based test extraction and stride-based k-fold partitions
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from ..errors import ValidationError
from ..models.data import FoldAssignment, LabeledDataset

logger = logging.getLogger(__name__)

DEFAULT_C = 1.0


def split_test(data: LabeledDataset, stride: int = 5) -> Tuple[LabeledDataset, LabeledDataset]:
    """Every stride-th record from the first one is held out for testing."""
    if stride < 1:
        raise ValidationError(f"stride must be positive, got {stride}")
    if len(data) < stride:
        raise ValidationError(f"dataset of {len(data)} records is smaller than stride {stride}")
    test_indices = list(range(0, len(data), stride))
    held_out = set(test_indices)
    train_indices = [i for i in range(len(data)) if i not in held_out]
    logger.debug("split %d records into %d train / %d test", len(data), len(train_indices), len(test_indices))
    return data.subset(train_indices), data.subset(test_indices)


def kfold_partitions(train: LabeledDataset, k: int = 5) -> FoldAssignment:
    """Record at 1-based position p validates in fold (p - 1) mod k."""
    if k < 2:
        raise ValidationError(f"need at least two folds, got {k}")
    if len(train) < k:
        raise ValidationError(f"{len(train)} training records cannot fill {k} folds")
    return FoldAssignment(tuple(i % k for i in range(len(train))), k)


def derive_c(train_targets: Sequence[float]) -> float:
    """Span of the (scaled) training efforts, falling back to 1 when zero."""
    targets = np.asarray(train_targets, dtype=float).reshape(-1)
    if targets.size == 0:
        raise ValidationError("cannot derive C from no targets")
    span = float(targets.max() - targets.min())
    return span if span > 0 else DEFAULT_C
