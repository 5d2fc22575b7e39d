"""
SVR Module
Kernel functions and the epsilon-SVR dual solver
"""

from .kernels import kernel_eval, gram_matrix, cross_kernel
from .solver import train, predict, predict_many, dual_objective, kkt_violation, DualSolver

__all__ = [
    'kernel_eval', 'gram_matrix', 'cross_kernel', 'train', 'predict',
    'predict_many', 'dual_objective', 'kkt_violation', 'DualSolver',
]
