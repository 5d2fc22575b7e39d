"""
Kernel Functions
Linear, polynomial, RBF and sigmoid kernels on real-valued feature vectors
"""

from typing import Sequence

import numpy as np

from ..errors import NumericOverflowError, ValidationError
from ..models.data import KernelFamily, KernelSpec


def _as_vector(values: Sequence[float], name: str) -> np.ndarray:
    vector = np.asarray(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(vector)):
        raise ValidationError(f"{name} has non-finite components")
    return vector


def _as_matrix(rows, name: str) -> np.ndarray:
    matrix = np.asarray(rows, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise ValidationError(f"{name} must be a non-empty list of feature vectors")
    if not np.all(np.isfinite(matrix)):
        raise ValidationError(f"{name} has non-finite components")
    return matrix


def _apply(spec: KernelSpec, inner, squared_distance=None):
    """Map inner products (or squared distances for RBF) to kernel values."""
    with np.errstate(over='ignore', invalid='ignore'):
        if spec.family is KernelFamily.LINEAR:
            return inner
        if spec.family is KernelFamily.POLYNOMIAL:
            return (spec.gamma * inner + spec.coef0) ** spec.degree
        if spec.family is KernelFamily.RBF:
            return np.exp(-spec.gamma * squared_distance)
        return np.tanh(spec.gamma * inner + spec.coef0)


def _check_finite(values, spec: KernelSpec):
    if not np.all(np.isfinite(values)):
        raise NumericOverflowError(
            f"{spec.family.cli_name} kernel overflowed (gamma={spec.gamma}, "
            f"coef0={spec.coef0}, degree={spec.degree})"
        )


def kernel_eval(spec: KernelSpec, a: Sequence[float], b: Sequence[float]) -> float:
    """K(a, b) for the given kernel."""
    va = _as_vector(a, 'a')
    vb = _as_vector(b, 'b')
    if va.shape != vb.shape:
        raise ValidationError(f"dimension mismatch: {va.size} vs {vb.size}")

    if spec.family is KernelFamily.RBF:
        diff = va - vb
        value = _apply(spec, None, np.sum(diff * diff))
    else:
        value = _apply(spec, np.sum(va * vb))
    _check_finite(value, spec)
    return float(value)


def cross_kernel(spec: KernelSpec, left, right) -> np.ndarray:
    """Matrix of K(left_i, right_j)."""
    lm = _as_matrix(left, 'left')
    rm = _as_matrix(right, 'right')
    if lm.shape[1] != rm.shape[1]:
        raise ValidationError(f"dimension mismatch: {lm.shape[1]} vs {rm.shape[1]}")

    if spec.family is KernelFamily.RBF:
        diff = lm[:, None, :] - rm[None, :, :]
        values = _apply(spec, None, np.sum(diff * diff, axis=-1))
    else:
        values = _apply(spec, np.sum(lm[:, None, :] * rm[None, :, :], axis=-1))
    _check_finite(values, spec)
    return values


def gram_matrix(spec: KernelSpec, xs) -> np.ndarray:
    """Symmetric Gram matrix of xs; the upper triangle is mirrored onto the lower."""
    values = cross_kernel(spec, xs, xs)
    upper = np.triu(values)
    gram = upper + np.triu(values, 1).T
    gram.setflags(write=False)
    return gram
