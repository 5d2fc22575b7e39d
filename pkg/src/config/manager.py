"""
Configuration Manager
Handles loading and saving estimator settings from/to estimator.toml
"""

import logging
import os
import toml
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..errors import ValidationError
from ..models.data import (
    DEFAULT_COEF0, DEFAULT_DEGREE, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, HyperGrid,
)

logger = logging.getLogger(__name__)

CONFIG_FILENAME = "estimator.toml"

DEFAULTS: Dict[str, Dict[str, Any]] = {
    'grid': {'gamma_exponents': list(range(-7, 8)), 'epsilon': [0, 1, 2, 3, 4, 5], 'folds': 5},
    'split': {'stride': 5},
    'kernel': {'degree': DEFAULT_DEGREE, 'coef0': DEFAULT_COEF0},
    'solver': {'tolerance': DEFAULT_TOLERANCE, 'max_iterations': DEFAULT_MAX_ITERATIONS},
    'search': {'workers': 1},
    'output': {'directory': 'results'},
    'logging': {'level': 'INFO'},
}


class ConfigManager:
    """Manages estimator configuration stored in estimator.toml."""

    def __init__(self, config_file: Optional[Union[str, Path]] = None):
        if config_file is not None:
            self.config_file = Path(config_file)
            self.config_dir = self.config_file.parent
        else:
            self.config_dir = self._get_config_dir()
            self.config_file = self.config_dir / CONFIG_FILENAME
        self._config_data = {}
        self._load_config()

    def _get_config_dir(self) -> Path:
        """Get the user's configuration directory."""
        config_home = os.environ.get('XDG_CONFIG_HOME')
        if config_home:
            return Path(config_home) / "ucp-svr"
        return Path.home() / ".config" / "ucp-svr"

    def _load_config(self):
        """Load configuration from the toml file; a missing file means defaults."""
        if not self.config_file.exists():
            self._config_data = {}
            return
        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                self._config_data = toml.load(f)
        except (toml.TomlDecodeError, IOError) as e:
            logger.warning("ignoring unreadable config %s: %s", self.config_file, e)
            self._config_data = {}

    def _save_config(self):
        self.config_dir.mkdir(parents=True, exist_ok=True)
        with open(self.config_file, 'w', encoding='utf-8') as f:
            toml.dump(self._config_data, f)

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value by dotted key, falling back to the built-in default."""
        for source in (self._config_data, DEFAULTS):
            value = source
            for k in key.split('.'):
                if isinstance(value, dict) and k in value:
                    value = value[k]
                else:
                    value = None
                    break
            if value is not None:
                return value
        return default

    def set(self, key: str, value: Any):
        """Set a configuration value and save."""
        keys = key.split('.')
        config = self._config_data
        for k in keys[:-1]:
            config = config.setdefault(k, {})
        config[keys[-1]] = value
        self._save_config()

    def _number(self, key: str, kind, minimum, inclusive: bool = True):
        raw = self.get(key)
        try:
            value = kind(raw)
        except (TypeError, ValueError):
            raise ValidationError(f"config {key}: expected a number, got {raw!r}")
        if value < minimum or (not inclusive and value == minimum):
            relation = 'at least' if inclusive else 'greater than'
            raise ValidationError(f"config {key}: must be {relation} {minimum}, got {value}")
        return value

    def _list(self, key: str) -> List[float]:
        raw = self.get(key)
        if not isinstance(raw, list) or not raw:
            raise ValidationError(f"config {key}: expected a non-empty list, got {raw!r}")
        return raw

    def get_grid(self) -> HyperGrid:
        exponents = self._list('grid.gamma_exponents')
        epsilons = self._list('grid.epsilon')
        try:
            return HyperGrid.from_exponents([int(e) for e in exponents], [float(e) for e in epsilons])
        except (TypeError, ValueError) as e:
            raise ValidationError(f"config grid: {e}")

    def get_folds(self) -> int:
        return self._number('grid.folds', int, 2)

    def get_stride(self) -> int:
        return self._number('split.stride', int, 1)

    def get_degree(self) -> int:
        return self._number('kernel.degree', int, 1)

    def get_coef0(self) -> float:
        return self._number('kernel.coef0', float, float('-inf'))

    def get_tolerance(self) -> float:
        return self._number('solver.tolerance', float, 0.0, inclusive=False)

    def get_max_iterations(self) -> int:
        return self._number('solver.max_iterations', int, 1)

    def get_workers(self) -> int:
        return self._number('search.workers', int, 1)

    def get_output_dir(self) -> Path:
        return Path(self.get('output.directory'))

    def get_log_level(self) -> str:
        level = str(self.get('logging.level')).upper()
        if level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            raise ValidationError(f"config logging.level: unknown level {level!r}")
        return level

    def get_run_settings(self) -> Dict[str, Any]:
        """Keyword settings for a pipeline run."""
        return {
            'folds': self.get_folds(),
            'stride': self.get_stride(),
            'coef0': self.get_coef0(),
            'degree': self.get_degree(),
            'tolerance': self.get_tolerance(),
            'max_iterations': self.get_max_iterations(),
            'workers': self.get_workers(),
        }
