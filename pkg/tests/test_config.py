import pytest
import toml

from src.config.manager import CONFIG_FILENAME, ConfigManager
from src.errors import ValidationError
from src.models.data import HyperGrid


@pytest.fixture
def config_path(tmp_path):
    return tmp_path / "conf" / CONFIG_FILENAME


def test_defaults_without_a_file(config_path):
    config = ConfigManager(config_path)
    assert config.get_grid() == HyperGrid.default()
    assert config.get_folds() == 5
    assert config.get_stride() == 5
    assert config.get_workers() == 1
    assert config.get_log_level() == 'INFO'
    assert str(config.get_output_dir()) == 'results'


def test_xdg_config_home(tmp_path, monkeypatch):
    monkeypatch.setenv('XDG_CONFIG_HOME', str(tmp_path))
    config = ConfigManager()
    assert config.config_file == tmp_path / "ucp-svr" / CONFIG_FILENAME


def test_file_values_override_defaults(config_path):
    config_path.parent.mkdir(parents=True)
    config_path.write_text(toml.dumps({
        'grid': {'gamma_exponents': [-1, 0, 1], 'epsilon': [0, 0.5]},
        'solver': {'tolerance': 1e-5},
    }), encoding='utf-8')
    config = ConfigManager(config_path)
    assert config.get_grid() == HyperGrid.from_exponents([-1, 0, 1], [0, 0.5])
    assert config.get_tolerance() == 1e-5
    # untouched sections keep their defaults
    assert config.get_folds() == 5


def test_set_saves_and_reloads(config_path):
    ConfigManager(config_path).set('search.workers', 4)
    assert config_path.exists()
    assert ConfigManager(config_path).get_workers() == 4


def test_unreadable_file_falls_back_to_defaults(config_path):
    config_path.parent.mkdir(parents=True)
    config_path.write_text("grid = [unterminated", encoding='utf-8')
    assert ConfigManager(config_path).get_folds() == 5


def test_run_settings(config_path):
    settings = ConfigManager(config_path).get_run_settings()
    assert set(settings) == {'folds', 'stride', 'coef0', 'degree', 'tolerance', 'max_iterations', 'workers'}
    assert settings['degree'] == 3
    assert settings['coef0'] == 0.0


@pytest.mark.parametrize('key, value, getter', [
    ('solver.tolerance', 0, 'get_tolerance'),
    ('solver.tolerance', -1e-3, 'get_tolerance'),
    ('grid.folds', 1, 'get_folds'),
    ('grid.folds', 'five', 'get_folds'),
    ('split.stride', 0, 'get_stride'),
    ('grid.epsilon', [], 'get_grid'),
    ('grid.epsilon', [-1], 'get_grid'),
    ('logging.level', 'LOUD', 'get_log_level'),
])
def test_invalid_values(config_path, key, value, getter):
    config = ConfigManager(config_path)
    config.set(key, value)
    with pytest.raises(ValidationError):
        getattr(config, getter)()
