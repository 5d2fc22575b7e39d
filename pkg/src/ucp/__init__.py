"""
Use Case Points
Size metric computed from actor and use case counts
"""

from .calculator import (
    actor_weight, classify_use_case, use_case_weight, compute_uaw, compute_uucw,
    compute_uucp, compute_tcf, compute_ef, compute_ucp,
)

__all__ = [
    'actor_weight', 'classify_use_case', 'use_case_weight', 'compute_uaw',
    'compute_uucw', 'compute_uucp', 'compute_tcf', 'compute_ef', 'compute_ucp',
]
