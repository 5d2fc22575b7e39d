"""
Services Module
Estimator operations behind the command-line surface
"""

from .estimation_service import EstimationService

__all__ = ['EstimationService']
