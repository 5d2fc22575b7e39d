"""
Use Case Point Calculator
Karner's sizing procedure: weighted actors and use cases adjusted by technical
and environmental factors
"""

import logging
from typing import Sequence, Tuple

from ..errors import ValidationError
from ..models.data import (
    ActorClass, UseCaseClass, TechnicalRatings, EnvironmentalRatings,
    ProjectDescriptor, UcpBreakdown,
)

logger = logging.getLogger(__name__)

ACTOR_WEIGHTS = {
    ActorClass.SIMPLE: 1.0,
    ActorClass.AVERAGE: 2.0,
    ActorClass.COMPLEX: 3.0,
}

USE_CASE_WEIGHTS = {
    UseCaseClass.SIMPLE: 5.0,
    UseCaseClass.AVERAGE: 10.0,
    UseCaseClass.COMPLEX: 15.0,
}

# T1..T13
TECHNICAL_WEIGHTS = (2.0, 2.0, 1.0, 1.0, 1.0, 0.5, 0.5, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0)

# F1..F8; F7 (part-time workers) counts against the project
ENVIRONMENTAL_WEIGHTS = (1.5, 0.5, 1.0, 0.5, 1.0, 2.0, -1.0, 2.0)

TCF_BASE = 0.6
TCF_SLOPE = 0.01
EF_BASE = 1.4
EF_SLOPE = -0.03

SIMPLE_MAX_TRANSACTIONS = 3
AVERAGE_MAX_TRANSACTIONS = 7


def actor_weight(actor: ActorClass) -> float:
    """Weight of one actor."""
    return ACTOR_WEIGHTS[actor]


def classify_use_case(transactions: int) -> UseCaseClass:
    """Band a use case by its transaction count: <=3 simple, 4-7 average, >=8 complex."""
    if transactions < 0:
        raise ValidationError(f"transaction count must be non-negative, got {transactions}")
    if transactions <= SIMPLE_MAX_TRANSACTIONS:
        return UseCaseClass.SIMPLE
    if transactions <= AVERAGE_MAX_TRANSACTIONS:
        return UseCaseClass.AVERAGE
    return UseCaseClass.COMPLEX


def use_case_weight(use_case: UseCaseClass) -> float:
    """Weight of one use case."""
    return USE_CASE_WEIGHTS[use_case]


def compute_uaw(actors: Sequence[ActorClass]) -> float:
    """Unadjusted Actor Weights."""
    if not actors:
        raise ValidationError("at least one actor is required")
    return sum(actor_weight(actor) for actor in actors)


def compute_uucw(use_cases: Sequence[int]) -> float:
    """Unadjusted Use Case Weights from per-use-case transaction counts."""
    if not use_cases:
        raise ValidationError("at least one use case is required")
    return sum(use_case_weight(classify_use_case(n)) for n in use_cases)


def compute_uucp(uaw: float, uucw: float) -> float:
    """Unadjusted Use Case Points."""
    if uaw < 0 or uucw < 0:
        raise ValidationError("UAW and UUCW must be non-negative")
    return uaw + uucw


def _weighted_sum(weights: Tuple[float, ...], ratings: Tuple[int, ...]) -> float:
    return sum(w * r for w, r in zip(weights, ratings))


def compute_tcf(technical: TechnicalRatings) -> Tuple[float, float]:
    """Return (TFactor, TCF)."""
    tfactor = _weighted_sum(TECHNICAL_WEIGHTS, technical.ratings)
    return tfactor, TCF_BASE + TCF_SLOPE * tfactor


def compute_ef(environmental: EnvironmentalRatings) -> Tuple[float, float]:
    """Return (EFactor, EF)."""
    efactor = _weighted_sum(ENVIRONMENTAL_WEIGHTS, environmental.ratings)
    return efactor, EF_BASE + EF_SLOPE * efactor


def compute_ucp(project: ProjectDescriptor) -> UcpBreakdown:
    """Full use case point breakdown of a project."""
    uaw = compute_uaw(project.actors)
    uucw = compute_uucw(project.use_cases)
    uucp = compute_uucp(uaw, uucw)
    tfactor, tcf = compute_tcf(project.technical)
    efactor, ef = compute_ef(project.environmental)
    ucp = uucp * tcf * ef
    logger.debug("project %s: UUCP=%s TCF=%s EF=%s UCP=%s", project.name, uucp, tcf, ef, ucp)
    return UcpBreakdown(
        uaw=uaw,
        uucw=uucw,
        uucp=uucp,
        tfactor=tfactor,
        tcf=tcf,
        efactor=efactor,
        ef=ef,
        ucp=ucp,
    )
