"""
Dataset Loaders
Reads project descriptor and (ucp, effort) CSV files

Effort datasets are headered CSV files with the columns ``ucp,effort``.
Project descriptor files carry the columns::

    name,actors_simple,actors_average,actors_complex,transactions,T1..T13,F1..F8[,effort]

where ``transactions`` lists one transaction count per use case separated by
spaces (``"3 5 9"``).
"""

import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple, Union

import pandas as pd

from ..errors import ValidationError
from ..models.data import (
    ActorClass, EnvironmentalRatings, LabeledDataset, ProjectDescriptor, Record,
    TechnicalRatings, TECHNICAL_FACTOR_COUNT, ENVIRONMENTAL_FACTOR_COUNT,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

EFFORT_COLUMNS = ['ucp', 'effort']
ACTOR_COLUMNS = {
    'actors_simple': ActorClass.SIMPLE,
    'actors_average': ActorClass.AVERAGE,
    'actors_complex': ActorClass.COMPLEX,
}
TECHNICAL_COLUMNS = [f"T{i}" for i in range(1, TECHNICAL_FACTOR_COUNT + 1)]
ENVIRONMENTAL_COLUMNS = [f"F{i}" for i in range(1, ENVIRONMENTAL_FACTOR_COUNT + 1)]
PROJECT_COLUMNS = ['name', *ACTOR_COLUMNS, 'transactions', *TECHNICAL_COLUMNS, *ENVIRONMENTAL_COLUMNS]

# Header is line 1
FIRST_DATA_LINE = 2


def _read_frame(path: PathLike) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, skipinitialspace=True, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise ValidationError(f"{path}: file is empty")
    except pd.errors.ParserError as e:
        raise ValidationError(f"{path}: malformed CSV: {e}")
    frame.columns = [str(column).strip() for column in frame.columns]
    if frame.empty:
        raise ValidationError(f"{path}: no records")
    return frame


def _require_columns(frame: pd.DataFrame, columns: List[str], path: PathLike):
    missing = [column for column in columns if column not in frame.columns]
    if missing:
        raise ValidationError(f"{path}: missing column(s) {', '.join(missing)}")


def _number(text: str, column: str, line: int) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ValidationError(f"line {line}: {column} is not a number: {text!r}")
    if not math.isfinite(value):
        raise ValidationError(f"line {line}: {column} must be finite")
    return value


def _integer(text: str, column: str, line: int) -> int:
    try:
        return int(text.strip())
    except (AttributeError, ValueError):
        raise ValidationError(f"line {line}: {column} must be an integer, got {text!r}")


def load_effort_dataset(path: PathLike) -> LabeledDataset:
    """Records of a ``ucp,effort`` CSV in file order."""
    frame = _read_frame(path)
    _require_columns(frame, EFFORT_COLUMNS, path)

    records = []
    for line, (ucp_text, effort_text) in enumerate(
            zip(frame['ucp'], frame['effort']), start=FIRST_DATA_LINE):
        ucp = _number(ucp_text, 'ucp', line)
        effort = _number(effort_text, 'effort', line)
        if effort <= 0:
            raise ValidationError(f"line {line}: effort must be positive, got {effort}")
        records.append(Record((ucp,), effort))
    logger.info("loaded %d records from %s", len(records), path)
    return LabeledDataset(tuple(records))


def _project_from_row(row: dict, line: int) -> ProjectDescriptor:
    actors: List[ActorClass] = []
    for column, actor_class in ACTOR_COLUMNS.items():
        count = _integer(row[column], column, line)
        if count < 0:
            raise ValidationError(f"line {line}: {column} must be non-negative")
        actors.extend([actor_class] * count)

    transactions = [
        _integer(token, 'transactions', line)
        for token in row['transactions'].replace(';', ' ').split()
    ]
    technical = [_integer(row[column], column, line) for column in TECHNICAL_COLUMNS]
    environmental = [_integer(row[column], column, line) for column in ENVIRONMENTAL_COLUMNS]
    try:
        return ProjectDescriptor(
            name=row['name'].strip(),
            actors=tuple(actors),
            use_cases=tuple(transactions),
            technical=TechnicalRatings(tuple(technical)),
            environmental=EnvironmentalRatings(tuple(environmental)),
        )
    except ValidationError as e:
        raise ValidationError(f"line {line}: {e}")


def read_project_table(path: PathLike) -> Tuple[List[ProjectDescriptor], Optional[List[float]]]:
    """Descriptors plus the optional effort column."""
    frame = _read_frame(path)
    _require_columns(frame, PROJECT_COLUMNS, path)
    has_effort = 'effort' in frame.columns

    projects: List[ProjectDescriptor] = []
    efforts: List[float] = []
    for line, row in enumerate(frame.to_dict('records'), start=FIRST_DATA_LINE):
        projects.append(_project_from_row(row, line))
        if has_effort:
            effort = _number(row['effort'], 'effort', line)
            if effort <= 0:
                raise ValidationError(f"line {line}: effort must be positive, got {effort}")
            efforts.append(effort)
    logger.info("loaded %d projects from %s", len(projects), path)
    return projects, (efforts if has_effort else None)


def load_projects(path: PathLike) -> List[ProjectDescriptor]:
    """One descriptor per row, in file order."""
    projects, _ = read_project_table(path)
    return projects
