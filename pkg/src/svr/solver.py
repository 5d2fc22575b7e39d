"""
Epsilon-SVR Solver
Two-coordinate (SMO) decomposition of the epsilon-SVR dual

The dual is solved in its doubled form over 2l variables a = (alpha, alpha*):

    min  0.5 * a'Qa + p'a    s.t.  s'a = 0,  0 <= a_t <= C

with s = (+1,...,+1, -1,...,-1), Q = [[K, -K], [-K, K]] and
p = (eps - y, eps + y). The regression coefficients are beta = alpha - alpha*
and f(x) = sum(beta_i * K(x_i, x)) + b.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ConvergenceError, ValidationError
from ..models.data import SvrModel, SvrParams
from .kernels import cross_kernel, gram_matrix

logger = logging.getLogger(__name__)

# Curvature floor for non-positive-definite pairs.
TAU = 1e-12


class DualSolver:
    """SMO over the doubled epsilon-SVR dual with second-order pair selection."""

    def __init__(self, gram: np.ndarray, targets: np.ndarray, params: SvrParams,
                 record_trace: bool = False):
        self.l = len(targets)
        self.targets = np.asarray(targets, dtype=float)
        self.c = params.c
        self.epsilon = params.epsilon
        self.tolerance = params.tolerance
        self.max_iterations = params.max_iterations

        self.signs = np.concatenate([np.ones(self.l), -np.ones(self.l)])
        self.q = np.block([[gram, -gram], [-gram, gram]])
        self.qd = np.diag(self.q).copy()
        self.p = np.concatenate([self.epsilon - self.targets, self.epsilon + self.targets])

        self.alpha = np.zeros(2 * self.l)
        self.grad = self.p.copy()
        self.iterations = 0
        self.gap = np.inf
        self.trace: Optional[List[float]] = [0.0] if record_trace else None

    def objective(self) -> float:
        """Dual objective (to be maximized) at the current iterate."""
        return float(-0.5 * np.dot(self.alpha, self.grad + self.p))

    def select_working_set(self) -> Tuple[int, int, float]:
        """Working pair and the current maximal KKT violation.

        i is the maximal violator in the up set. j is the low-set index with
        the largest second-order gain b^2 / a, where b = m - score_t and
        a = Q_ii + Q_tt - 2 s_i s_t Q_it is floored at TAU. np.argmax/argmin
        break ties by lowest index.
        """
        positive = self.signs > 0
        below_c = self.alpha < self.c
        above_zero = self.alpha > 0
        in_up = (below_c & positive) | (above_zero & ~positive)
        in_low = (below_c & ~positive) | (above_zero & positive)

        score = -self.signs * self.grad
        up_scores = np.where(in_up, score, -np.inf)
        low_scores = np.where(in_low, score, np.inf)
        i = int(np.argmax(up_scores))
        m = up_scores[i]
        gap = float(m - np.min(low_scores))
        if gap <= 0:
            return i, int(np.argmin(low_scores)), gap

        b = m - score
        candidates = in_low & (b > 0)
        curvature = self.qd[i] + self.qd - 2 * self.signs[i] * self.signs * self.q[i]
        curvature = np.where(curvature > 0, curvature, TAU)
        gains = np.where(candidates, -(b * b) / curvature, np.inf)
        j = int(np.argmin(gains))
        return i, j, gap

    def _update(self, i: int, j: int):
        alpha = self.alpha
        c = self.c
        old_i, old_j = alpha[i], alpha[j]

        if self.signs[i] != self.signs[j]:
            quad_coef = self.qd[i] + self.qd[j] + 2 * self.q[i, j]
            if quad_coef <= 0:
                quad_coef = TAU
            delta = (-self.grad[i] - self.grad[j]) / quad_coef
            diff = alpha[i] - alpha[j]
            alpha[i] += delta
            alpha[j] += delta

            if diff > 0:
                if alpha[j] < 0:
                    alpha[j] = 0.0
                    alpha[i] = diff
            else:
                if alpha[i] < 0:
                    alpha[i] = 0.0
                    alpha[j] = -diff

            if diff > 0:
                if alpha[i] > c:
                    alpha[i] = c
                    alpha[j] = c - diff
            else:
                if alpha[j] > c:
                    alpha[j] = c
                    alpha[i] = c + diff
        else:
            quad_coef = self.qd[i] + self.qd[j] - 2 * self.q[i, j]
            if quad_coef <= 0:
                quad_coef = TAU
            delta = (self.grad[i] - self.grad[j]) / quad_coef
            total = alpha[i] + alpha[j]
            alpha[i] -= delta
            alpha[j] += delta

            if total > c:
                if alpha[i] > c:
                    alpha[i] = c
                    alpha[j] = total - c
            else:
                if alpha[j] < 0:
                    alpha[j] = 0.0
                    alpha[i] = total

            if total > c:
                if alpha[j] > c:
                    alpha[j] = c
                    alpha[i] = total - c
            else:
                if alpha[i] < 0:
                    alpha[i] = 0.0
                    alpha[j] = total

        delta_i = alpha[i] - old_i
        delta_j = alpha[j] - old_j
        # Q is symmetric, so rows double as columns
        self.grad += self.q[i] * delta_i + self.q[j] * delta_j

    def solve(self) -> 'DualSolver':
        """Iterate until the maximal KKT violation drops to the tolerance."""
        while True:
            i, j, gap = self.select_working_set()
            if gap <= self.tolerance:
                self.gap = max(gap, 0.0)
                logger.debug("SMO converged after %d steps (gap %.3g)", self.iterations, self.gap)
                return self
            if self.iterations >= self.max_iterations:
                raise ConvergenceError(
                    f"solver did not converge in {self.iterations} steps "
                    f"(KKT violation {gap:.6g} > {self.tolerance})",
                    violation=gap,
                    iterations=self.iterations,
                )
            self._update(i, j)
            self.iterations += 1
            if self.trace is not None:
                self.trace.append(self.objective())

    @property
    def beta(self) -> np.ndarray:
        return self.alpha[:self.l] - self.alpha[self.l:]

    def bias(self) -> float:
        """Offset b from the KKT conditions; see zero_support_bias for beta = 0."""
        if not np.any(self.beta != 0):
            return zero_support_bias(self.targets, self.epsilon)

        y_grad = self.signs * self.grad
        upper = self.alpha >= self.c
        lower = self.alpha <= 0
        free = ~upper & ~lower
        if np.any(free):
            rho = float(np.mean(y_grad[free]))
        else:
            positive = self.signs > 0
            ub_mask = (upper & ~positive) | (lower & positive)
            lb_mask = (upper & positive) | (lower & ~positive)
            ub = float(np.min(y_grad[ub_mask])) if np.any(ub_mask) else np.inf
            lb = float(np.max(y_grad[lb_mask])) if np.any(lb_mask) else -np.inf
            rho = (ub + lb) / 2
        return -rho


def zero_support_bias(targets: np.ndarray, epsilon: float) -> float:
    """Constant model: target mean clipped into [max(y) - eps, min(y) + eps]."""
    low = float(np.max(targets)) - epsilon
    high = float(np.min(targets)) + epsilon
    if low > high:
        return (low + high) / 2
    return min(max(float(np.mean(targets)), low), high)


def _training_arrays(xs, ys) -> Tuple[np.ndarray, np.ndarray]:
    if len(xs) == 0:
        raise ValidationError("training data is empty")
    if len(xs) != len(ys):
        raise ValidationError(f"{len(xs)} inputs but {len(ys)} targets")
    features = np.asarray(xs, dtype=float)
    if features.ndim == 1:
        features = features.reshape(-1, 1)
    targets = np.asarray(ys, dtype=float).reshape(-1)
    if not (np.all(np.isfinite(features)) and np.all(np.isfinite(targets))):
        raise ValidationError("training data contains non-finite values")
    return features, targets


def train(xs, ys: Sequence[float], params: SvrParams,
          gram: Optional[np.ndarray] = None) -> SvrModel:
    """Fit an epsilon-SVR model; a precomputed Gram matrix of xs may be supplied."""
    features, targets = _training_arrays(xs, ys)
    if gram is None:
        gram = gram_matrix(params.kernel, features)
    elif gram.shape != (len(targets), len(targets)):
        raise ValidationError(f"Gram matrix shape {gram.shape} does not match {len(targets)} inputs")

    solver = DualSolver(gram, targets, params).solve()
    beta = solver.beta
    bias = solver.bias()
    support = np.flatnonzero(beta != 0)
    logger.debug(
        "trained %s SVR: %d/%d support vectors, %d steps",
        params.kernel.family.cli_name, len(support), len(targets), solver.iterations,
    )
    return SvrModel(
        support_inputs=tuple(tuple(float(v) for v in features[i]) for i in support),
        dual_coefficients=tuple(float(beta[i]) for i in support),
        bias=float(bias),
        kernel=params.kernel,
        params=params,
        dimension=features.shape[1],
        support_indices=tuple(int(i) for i in support),
    )


def predict_many(model: SvrModel, xs) -> np.ndarray:
    """Predictions for a batch of feature vectors."""
    features = np.asarray(xs, dtype=float)
    if features.ndim == 1:
        features = features.reshape(-1, model.dimension) if model.dimension > 1 else features.reshape(-1, 1)
    if features.shape[1] != model.dimension:
        raise ValidationError(
            f"expected {model.dimension}-dimensional inputs, got {features.shape[1]}"
        )
    if model.support_count == 0:
        return np.full(features.shape[0], model.bias)
    values = cross_kernel(model.kernel, model.support_inputs, features)
    return np.asarray(model.dual_coefficients) @ values + model.bias


def predict(model: SvrModel, x: Sequence[float]) -> float:
    """f(x) = sum(beta_i * K(sv_i, x)) + b."""
    vector = np.asarray(x, dtype=float).reshape(1, -1)
    if vector.shape[1] != model.dimension:
        raise ValidationError(
            f"expected a {model.dimension}-dimensional input, got {vector.shape[1]}"
        )
    return float(predict_many(model, vector)[0])


def dual_objective(state, gram: np.ndarray, ys: Sequence[float], params: SvrParams) -> float:
    """Maximization-form epsilon-SVR dual objective at a solver state.

    ``state`` is either the doubled vector (alpha, alpha*) of length 2l or the
    coefficient vector beta of length l, split as alpha = max(beta, 0),
    alpha* = max(-beta, 0).
    """
    targets = np.asarray(ys, dtype=float)
    values = np.asarray(state, dtype=float)
    l = len(targets)
    if values.size == l:
        values = np.concatenate([np.maximum(values, 0), np.maximum(-values, 0)])
    elif values.size != 2 * l:
        raise ValidationError(f"state of size {values.size} does not match {l} targets")

    alpha, alpha_star = values[:l], values[l:]
    beta = alpha - alpha_star
    return float(
        -0.5 * beta @ np.asarray(gram) @ beta
        + targets @ beta
        - params.epsilon * np.sum(alpha + alpha_star)
    )


def full_coefficients(model: SvrModel, n: int) -> np.ndarray:
    """beta over all n training points (zero for pruned points)."""
    beta = np.zeros(n)
    if len(model.support_indices) != model.support_count:
        raise ValidationError("model does not record its support indices")
    for index, coefficient in zip(model.support_indices, model.dual_coefficients):
        if index >= n:
            raise ValidationError(f"support index {index} outside training data of size {n}")
        beta[index] = coefficient
    return beta


def kkt_violation(model: SvrModel, xs, ys: Sequence[float]) -> float:
    """Largest violation of box, equality and complementarity conditions."""
    features, targets = _training_arrays(xs, ys)
    beta = full_coefficients(model, len(targets))
    c = model.params.c
    eps = model.params.epsilon
    residual = targets - predict_many(model, features)

    violation = np.zeros_like(residual)
    zero = beta == 0
    pos_free = (beta > 0) & (beta < c)
    pos_bound = beta >= c
    neg_free = (beta < 0) & (beta > -c)
    neg_bound = beta <= -c
    violation[zero] = np.maximum(0.0, np.abs(residual[zero]) - eps)
    violation[pos_free] = np.abs(residual[pos_free] - eps)
    violation[pos_bound] = np.maximum(0.0, eps - residual[pos_bound])
    violation[neg_free] = np.abs(residual[neg_free] + eps)
    violation[neg_bound] = np.maximum(0.0, eps + residual[neg_bound])

    box = np.max(np.maximum(0.0, np.abs(beta) - c))
    equality = abs(float(np.sum(beta)))
    return float(max(np.max(violation), box, equality))
