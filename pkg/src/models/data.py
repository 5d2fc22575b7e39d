"""
Data Models
Represents the value types shared by the sizing, regression and selection packages
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from numbers import Integral, Real
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ValidationError

RATING_MIN = 0
RATING_MAX = 5
TECHNICAL_FACTOR_COUNT = 13
ENVIRONMENTAL_FACTOR_COUNT = 8

DEFAULT_DEGREE = 3
DEFAULT_COEF0 = 0.0
DEFAULT_TOLERANCE = 1e-3
DEFAULT_MAX_ITERATIONS = 10_000_000


class ActorClass(Enum):
    """Actor complexity as rated on the use case diagram."""
    SIMPLE = 'simple'
    AVERAGE = 'average'
    COMPLEX = 'complex'


class UseCaseClass(Enum):
    """Use case complexity, derived from the transaction count."""
    SIMPLE = 'simple'
    AVERAGE = 'average'
    COMPLEX = 'complex'


def _validate_ratings(ratings: Sequence, count: int, prefix: str) -> Tuple[int, ...]:
    if len(ratings) != count:
        raise ValidationError(f"expected {count} {prefix}-ratings, got {len(ratings)}")
    checked = []
    for index, rating in enumerate(ratings, start=1):
        if isinstance(rating, bool) or not isinstance(rating, Integral):
            raise ValidationError(f"{prefix}{index}: rating must be an integer, got {rating!r}")
        if not RATING_MIN <= rating <= RATING_MAX:
            raise ValidationError(
                f"{prefix}{index}: rating {rating} outside [{RATING_MIN}, {RATING_MAX}]"
            )
        checked.append(int(rating))
    return tuple(checked)


@dataclass(frozen=True)
class TechnicalRatings:
    """Influence scores for the technical factors T1..T13."""
    ratings: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, 'ratings', _validate_ratings(self.ratings, TECHNICAL_FACTOR_COUNT, 'T')
        )

    @classmethod
    def uniform(cls, rating: int) -> 'TechnicalRatings':
        return cls(tuple([rating] * TECHNICAL_FACTOR_COUNT))


@dataclass(frozen=True)
class EnvironmentalRatings:
    """Influence scores for the environmental factors F1..F8."""
    ratings: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, 'ratings', _validate_ratings(self.ratings, ENVIRONMENTAL_FACTOR_COUNT, 'F')
        )

    @classmethod
    def uniform(cls, rating: int) -> 'EnvironmentalRatings':
        return cls(tuple([rating] * ENVIRONMENTAL_FACTOR_COUNT))


@dataclass(frozen=True)
class ProjectDescriptor:
    """Raw sizing inputs of one project."""
    name: str
    actors: Tuple[ActorClass, ...]
    use_cases: Tuple[int, ...]
    technical: TechnicalRatings
    environmental: EnvironmentalRatings

    def __post_init__(self):
        object.__setattr__(self, 'actors', tuple(self.actors))
        object.__setattr__(self, 'use_cases', tuple(self.use_cases))
        if not self.actors:
            raise ValidationError(f"project '{self.name}' has no actors")
        if not self.use_cases:
            raise ValidationError(f"project '{self.name}' has no use cases")
        for count in self.use_cases:
            if isinstance(count, bool) or not isinstance(count, Integral) or count < 0:
                raise ValidationError(
                    f"project '{self.name}': transaction count must be a non-negative integer, got {count!r}"
                )


@dataclass(frozen=True)
class UcpBreakdown:
    """Every intermediate quantity of the use case point computation."""
    uaw: float
    uucw: float
    uucp: float
    tfactor: float
    tcf: float
    efactor: float
    ef: float
    ucp: float


class KernelFamily(Enum):
    """Kernel families, valued by their param-string code."""
    LINEAR = 0
    POLYNOMIAL = 1
    RBF = 2
    SIGMOID = 3

    @property
    def code(self) -> int:
        return self.value

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]

    @classmethod
    def from_code(cls, code: int) -> 'KernelFamily':
        try:
            return cls(int(code))
        except ValueError:
            raise ValidationError(f"unknown kernel code {code!r}; expected 0, 1, 2 or 3")

    @classmethod
    def from_name(cls, name: str) -> 'KernelFamily':
        for family, cli_name in _CLI_NAMES.items():
            if name.lower() in (cli_name, family.name.lower()):
                return family
        raise ValidationError(f"unknown kernel '{name}'")


_CLI_NAMES = {
    KernelFamily.LINEAR: 'linear',
    KernelFamily.POLYNOMIAL: 'poly',
    KernelFamily.RBF: 'rbf',
    KernelFamily.SIGMOID: 'sigmoid',
}


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus its parameters (gamma, coef0 = r, degree = d)."""
    family: KernelFamily
    gamma: float = 1.0
    coef0: float = DEFAULT_COEF0
    degree: int = DEFAULT_DEGREE

    def __post_init__(self):
        if not math.isfinite(self.gamma) or not math.isfinite(self.coef0):
            raise ValidationError("kernel parameters must be finite")
        if self.family in (KernelFamily.POLYNOMIAL, KernelFamily.RBF) and self.gamma <= 0:
            raise ValidationError(f"{self.family.cli_name} kernel requires gamma > 0, got {self.gamma}")
        if isinstance(self.degree, bool) or not isinstance(self.degree, Integral) or self.degree < 1:
            raise ValidationError(f"degree must be a positive integer, got {self.degree!r}")


@dataclass(frozen=True)
class SvrParams:
    """Training parameters of the epsilon-SVR solver."""
    c: float
    epsilon: float
    kernel: KernelSpec
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise ValidationError(f"C must be positive, got {self.c}")
        if not (math.isfinite(self.epsilon) and self.epsilon >= 0):
            raise ValidationError(f"epsilon must be non-negative, got {self.epsilon}")
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise ValidationError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValidationError(f"max_iterations must be positive, got {self.max_iterations}")


@dataclass(frozen=True)
class ScalingParams:
    """Min-max scaling constants of one column."""
    min_value: float
    max_value: float

    def __post_init__(self):
        if self.max_value < self.min_value:
            raise ValidationError(
                f"scaling max {self.max_value} is below min {self.min_value}"
            )


@dataclass(frozen=True)
class SvrModel:
    """A trained regressor: f(x) = sum(beta_i * K(sv_i, x)) + bias."""
    support_inputs: Tuple[Tuple[float, ...], ...]
    dual_coefficients: Tuple[float, ...]
    bias: float
    kernel: KernelSpec
    params: SvrParams
    dimension: int
    support_indices: Tuple[int, ...] = ()
    feature_scaling: Optional[ScalingParams] = None
    target_scaling: Optional[ScalingParams] = None

    @property
    def support_count(self) -> int:
        return len(self.dual_coefficients)

    def with_scaling(self, feature_scaling: Optional[ScalingParams],
                     target_scaling: Optional[ScalingParams]) -> 'SvrModel':
        """Attach the dataset scaling so the model can work in original units."""
        return replace(self, feature_scaling=feature_scaling, target_scaling=target_scaling)


@dataclass(frozen=True)
class Record:
    """One (size, effort) pair; raw values are kept once a dataset is scaled."""
    feature: Tuple[float, ...]
    effort: float
    raw_feature: Optional[Tuple[float, ...]] = None
    raw_effort: Optional[float] = None

    @property
    def original_feature(self) -> Tuple[float, ...]:
        return self.raw_feature if self.raw_feature is not None else self.feature

    @property
    def original_effort(self) -> float:
        return self.raw_effort if self.raw_effort is not None else self.effort


@dataclass(frozen=True)
class LabeledDataset:
    """Ordered training data; order is load order and is never permuted."""
    records: Tuple[Record, ...]
    feature_scaling: Optional[ScalingParams] = None
    target_scaling: Optional[ScalingParams] = None

    def __post_init__(self):
        object.__setattr__(self, 'records', tuple(self.records))

    @classmethod
    def from_pairs(cls, features: Sequence, efforts: Sequence[float]) -> 'LabeledDataset':
        """Build an unscaled dataset from parallel feature/effort sequences."""
        if len(features) != len(efforts):
            raise ValidationError("features and efforts differ in length")
        records = []
        for feature, effort in zip(features, efforts):
            if isinstance(feature, Real):
                feature = (feature,)
            records.append(Record(tuple(float(v) for v in feature), float(effort)))
        return cls(tuple(records))

    def __len__(self) -> int:
        return len(self.records)

    @property
    def is_scaled(self) -> bool:
        return self.feature_scaling is not None and self.target_scaling is not None

    @property
    def features(self) -> np.ndarray:
        return np.array([r.feature for r in self.records], dtype=float)

    @property
    def targets(self) -> np.ndarray:
        return np.array([r.effort for r in self.records], dtype=float)

    @property
    def original_targets(self) -> np.ndarray:
        return np.array([r.original_effort for r in self.records], dtype=float)

    def subset(self, indices: Sequence[int]) -> 'LabeledDataset':
        """Records at the given positions, in the given order, scaling kept."""
        return LabeledDataset(
            tuple(self.records[i] for i in indices),
            self.feature_scaling,
            self.target_scaling,
        )


@dataclass(frozen=True)
class FoldAssignment:
    """Validation fold of every training record."""
    fold_index_of: Tuple[int, ...]
    k: int

    def validation_indices(self, fold: int) -> List[int]:
        return [i for i, f in enumerate(self.fold_index_of) if f == fold]

    def learning_indices(self, fold: int) -> List[int]:
        return [i for i, f in enumerate(self.fold_index_of) if f != fold]

    def fold_sizes(self) -> List[int]:
        return [len(self.validation_indices(j)) for j in range(self.k)]


@dataclass(frozen=True)
class HyperGrid:
    """The gamma x epsilon lattice searched during model selection."""
    gamma_values: Tuple[float, ...]
    epsilon_values: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'gamma_values', tuple(float(g) for g in self.gamma_values))
        object.__setattr__(self, 'epsilon_values', tuple(float(e) for e in self.epsilon_values))
        if not self.gamma_values or not self.epsilon_values:
            raise ValidationError("grid must have at least one gamma and one epsilon value")
        if any(e < 0 for e in self.epsilon_values):
            raise ValidationError("grid epsilon values must be non-negative")

    @classmethod
    def default(cls) -> 'HyperGrid':
        return cls.from_exponents(range(-7, 8), (0, 1, 2, 3, 4, 5))

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], epsilon_values: Sequence[float]) -> 'HyperGrid':
        return cls(tuple(2.0 ** e for e in exponents), tuple(epsilon_values))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.gamma_values), len(self.epsilon_values)

    def locate(self, gamma: float, epsilon: float, precision: int = 4) -> Tuple[int, int]:
        """Grid indices of a pair reported at the given decimal precision."""
        def find(values, wanted, name):
            for index, value in enumerate(values):
                if round(value, precision) == round(wanted, precision):
                    return index
            raise ValidationError(f"{name}={wanted} is not on the grid")
        return find(self.gamma_values, gamma, 'gamma'), find(self.epsilon_values, epsilon, 'epsilon')


@dataclass(frozen=True)
class GridCell:
    """Cross-validation outcome of one (gamma, epsilon) pair."""
    gamma_index: int
    epsilon_index: int
    gamma: float
    epsilon: float
    validation_error: Optional[float]
    failed: bool = False
    message: str = ''


@dataclass(frozen=True)
class GridSearchReport:
    """Validation errors over the whole grid and the selected cell."""
    kernel: KernelSpec
    c_used: float
    grid: HyperGrid
    cells: Tuple[Tuple[GridCell, ...], ...]
    best_cell: GridCell

    @property
    def family(self) -> KernelFamily:
        return self.kernel.family

    def error_matrix(self) -> np.ndarray:
        """Validation errors as a gamma x epsilon array, NaN for failed cells."""
        return np.array([
            [np.nan if cell.failed else cell.validation_error for cell in row]
            for row in self.cells
        ])

    def failed_cells(self) -> List[GridCell]:
        return [cell for row in self.cells for cell in row if cell.failed]


@dataclass(frozen=True)
class EvaluationReport:
    """Error and accuracy statistics of a set of predictions."""
    mse: float
    rmse: float
    nrms: float
    mmre: float
    pred: float
    r_squared: float
    n: int


@dataclass(frozen=True)
class ParamString:
    """A parsed '-s 3 -t 2 -c 20 -g 64 -p 1' style parameter string."""
    svm_type: int
    kernel_code: int
    c: float
    gamma: float
    p_epsilon: float
    raw: str = ''
    degree: int = DEFAULT_DEGREE
    coef0: float = DEFAULT_COEF0
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def kernel_family(self) -> KernelFamily:
        return KernelFamily.from_code(self.kernel_code)

    def values(self) -> Tuple:
        """Every parsed value except the raw text."""
        return (self.svm_type, self.kernel_code, self.c, self.gamma, self.p_epsilon,
                self.degree, self.coef0, self.tolerance)

    def to_params(self, max_iterations: int = DEFAULT_MAX_ITERATIONS) -> SvrParams:
        kernel = KernelSpec(self.kernel_family, self.gamma, self.coef0, self.degree)
        return SvrParams(self.c, self.p_epsilon, kernel, self.tolerance, max_iterations)


@dataclass(frozen=True)
class Artifact:
    """One file emitted by a pipeline run."""
    name: str
    kind: str
    sha256: str


@dataclass
class RunManifest:
    """Bookkeeping of a full pipeline run."""
    dataset_path: str
    kernels: List[str]
    grid: HyperGrid
    output_dir: str
    deterministic: bool = True
    started_at: Optional[str] = None
    finished_at: Optional[str] = None
    artifacts: List[Artifact] = field(default_factory=list)

    def artifacts_of_kind(self, kind: str) -> List[Artifact]:
        return [a for a in self.artifacts if a.kind == kind]
