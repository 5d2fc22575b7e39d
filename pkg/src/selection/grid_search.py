"""
Grid Search
Cross-validated gamma x epsilon model selection and final retraining
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import ConvergenceError, NumericOverflowError, SearchError, ValidationError
from ..metrics.evaluation import evaluate, mse
from ..models.data import (
    DEFAULT_COEF0, DEFAULT_DEGREE, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
    EvaluationReport, GridCell, GridSearchReport, HyperGrid, KernelFamily,
    KernelSpec, LabeledDataset, SvrModel, SvrParams,
)
from ..svr.kernels import gram_matrix
from ..svr.solver import predict_many, train
from .scaling import unscale_array
from .splitting import derive_c, kfold_partitions

logger = logging.getLogger(__name__)


class GridSearch:
    """Evaluates every grid cell of one kernel family on a scaled training set."""

    def __init__(self, train_data: LabeledDataset, family: KernelFamily,
                 grid: Optional[HyperGrid] = None, k: int = 5,
                 coef0: float = DEFAULT_COEF0, degree: int = DEFAULT_DEGREE,
                 tolerance: float = DEFAULT_TOLERANCE,
                 max_iterations: int = DEFAULT_MAX_ITERATIONS, workers: int = 1):
        if not train_data.is_scaled:
            raise ValidationError("grid search requires a [0,1]-scaled training set")
        self.train_data = train_data
        self.family = family
        self.grid = grid or HyperGrid.default()
        self.coef0 = coef0
        self.degree = degree
        self.tolerance = tolerance
        self.max_iterations = max_iterations
        self.workers = max(1, int(workers))

        self.features = train_data.features
        self.targets = train_data.targets
        self.c = derive_c(self.targets)
        folds = kfold_partitions(train_data, k)
        self.folds = [
            (np.array(folds.learning_indices(j)), np.array(folds.validation_indices(j)))
            for j in range(folds.k)
        ]
        self._grams: Dict[int, object] = {}

    def kernel_for(self, gamma: float) -> KernelSpec:
        return KernelSpec(self.family, gamma, self.coef0, self.degree)

    def _gram(self, gamma_index: int):
        """Full training Gram matrix for one gamma, or the error it raised."""
        if gamma_index not in self._grams:
            gamma = self.grid.gamma_values[gamma_index]
            try:
                self._grams[gamma_index] = gram_matrix(self.kernel_for(gamma), self.features)
            except NumericOverflowError as e:
                self._grams[gamma_index] = e
        return self._grams[gamma_index]

    def evaluate_cell(self, gamma_index: int, epsilon_index: int) -> GridCell:
        """Mean validation MSE over the folds for one (gamma, epsilon) pair."""
        gamma = self.grid.gamma_values[gamma_index]
        epsilon = self.grid.epsilon_values[epsilon_index]
        params = SvrParams(self.c, epsilon, self.kernel_for(gamma), self.tolerance, self.max_iterations)
        try:
            gram = self._gram(gamma_index)
            if isinstance(gram, Exception):
                raise gram
            fold_errors = []
            for learning, validation in self.folds:
                model = train(
                    self.features[learning], self.targets[learning], params,
                    gram=gram[np.ix_(learning, learning)],
                )
                predictions = predict_many(model, self.features[validation])
                fold_errors.append(mse(self.targets[validation], predictions))
        except (ConvergenceError, NumericOverflowError) as e:
            logger.warning(
                "%s cell gamma=%s epsilon=%s failed: %s", self.family.cli_name, gamma, epsilon, e,
            )
            return GridCell(gamma_index, epsilon_index, gamma, epsilon, None, failed=True, message=str(e))
        return GridCell(gamma_index, epsilon_index, gamma, epsilon, float(np.mean(fold_errors)))

    def run(self) -> GridSearchReport:
        rows, cols = self.grid.shape
        # Gram matrices are built up front so worker threads only read them.
        for gamma_index in range(rows):
            self._gram(gamma_index)

        keys = list(itertools.product(range(rows), range(cols)))
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                results = list(executor.map(lambda key: self.evaluate_cell(*key), keys))
        else:
            results = [self.evaluate_cell(*key) for key in keys]

        by_key = {(cell.gamma_index, cell.epsilon_index): cell for cell in results}
        cells = tuple(tuple(by_key[(g, e)] for e in range(cols)) for g in range(rows))
        best = select_best(cells)
        logger.info(
            "%s: best cell gamma=%s epsilon=%s validation error %.6g (%d failed cells)",
            self.family.cli_name, best.gamma, best.epsilon, best.validation_error,
            sum(cell.failed for cell in results),
        )
        return GridSearchReport(
            kernel=KernelSpec(self.family, best.gamma, self.coef0, self.degree),
            c_used=self.c,
            grid=self.grid,
            cells=cells,
            best_cell=best,
        )


def select_best(cells: Tuple[Tuple[GridCell, ...], ...]) -> GridCell:
    """Minimum validation error; ties go to the lowest gamma, then epsilon index."""
    candidates = [cell for row in cells for cell in row if not cell.failed]
    if not candidates:
        raise SearchError("every grid cell failed")
    return min(candidates, key=lambda cell: (cell.validation_error, cell.gamma_index, cell.epsilon_index))


def grid_search(train_data: LabeledDataset, kernel_family: KernelFamily,
                grid: Optional[HyperGrid] = None, k: int = 5, **options) -> GridSearchReport:
    """Cross-validated search over the grid for one kernel family."""
    return GridSearch(train_data, kernel_family, grid, k, **options).run()


def evaluate_model(model: SvrModel, data: LabeledDataset) -> EvaluationReport:
    """Evaluate on scaled values, with MMRE in original effort units."""
    predictions = predict_many(model, data.features)
    if data.target_scaling is None:
        return evaluate(data.targets, predictions)
    return evaluate(
        data.targets, predictions,
        data.original_targets, unscale_array(data.target_scaling, predictions),
    )


def retrain_best(train_data: LabeledDataset, report: GridSearchReport,
                 tolerance: float = DEFAULT_TOLERANCE,
                 max_iterations: int = DEFAULT_MAX_ITERATIONS) -> SvrModel:
    """Train on the full training set with the report's selected hyperparameters."""
    best = report.best_cell
    kernel = KernelSpec(report.kernel.family, best.gamma, report.kernel.coef0, report.kernel.degree)
    params = SvrParams(report.c_used, best.epsilon, kernel, tolerance, max_iterations)
    model = train(train_data.features, train_data.targets, params)
    return model.with_scaling(train_data.feature_scaling, train_data.target_scaling)


def select_and_finalize(train_data: LabeledDataset, test_data: LabeledDataset,
                        report: GridSearchReport, **options) -> Tuple[SvrModel, EvaluationReport]:
    """Retrain with the best cell and evaluate the final model on the test set."""
    model = retrain_best(train_data, report, **options)
    training = evaluate_model(model, train_data)
    logger.info(
        "%s final model: train MSE %.6g, %d support vectors",
        report.family.cli_name, training.mse, model.support_count,
    )
    return model, evaluate_model(model, test_data)
