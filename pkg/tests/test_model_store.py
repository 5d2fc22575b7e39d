import numpy as np
import pytest

from src.errors import FormatError
from src.models.data import KernelFamily, KernelSpec, ScalingParams, SvrParams
from src.pipeline.model_store import load_model, parse_model, render_model, save_model
from src.svr import predict_many, train


def _random_model(seed: int):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 15))
    xs = rng.uniform(0, 1, size=(n, 1))
    ys = rng.uniform(0, 1, size=n)
    family = list(KernelFamily)[seed % 4]
    kernel = KernelSpec(family, float(2.0 ** rng.integers(-3, 4)), float(rng.choice([0.0, 0.5])))
    params = SvrParams(c=float(rng.uniform(0.1, 10)), epsilon=float(rng.choice([0.0, 0.01, 0.1])), kernel=kernel)
    model = train(xs, ys, params)
    return model.with_scaling(ScalingParams(3.7, 812.25), ScalingParams(10.0, 4000.5))


def test_line_model_round_trip(tmp_path, line_points, linear_params):
    xs, ys = line_points
    model = train(xs, ys, linear_params)
    path = save_model(model, tmp_path / "line.svr")
    loaded = load_model(path)
    assert loaded == model
    queries = np.random.default_rng(0).uniform(-1, 2, size=(100, 1))
    np.testing.assert_array_equal(predict_many(loaded, queries), predict_many(model, queries))


@pytest.mark.parametrize('seed', range(100))
def test_random_models_predict_identically(seed):
    model = _random_model(seed)
    loaded = parse_model(render_model(model))
    queries = np.random.default_rng(seed + 1000).uniform(0, 1, size=(100, 1))
    np.testing.assert_array_equal(predict_many(loaded, queries), predict_many(model, queries))


def test_zero_support_model_keeps_bias_exactly():
    model = train([[0.0], [1.0]], [0.1234567890123, 0.2], SvrParams(1.0, 5.0, KernelSpec(KernelFamily.RBF)))
    assert model.support_count == 0
    loaded = parse_model(render_model(model))
    assert loaded.bias == model.bias
    assert loaded.support_count == 0


def test_scaling_constants_survive(tmp_path):
    model = _random_model(3)
    loaded = parse_model(render_model(model))
    assert loaded.feature_scaling == ScalingParams(3.7, 812.25)
    assert loaded.target_scaling == ScalingParams(10.0, 4000.5)
    assert loaded.support_indices == model.support_indices


class TestMalformedFiles:

    def test_truncated_support_vectors(self):
        text = render_model(_random_model(1))
        cut = "\n".join(text.splitlines()[:-3]) + "\n"
        with pytest.raises(FormatError, match="truncated"):
            parse_model(cut)

    def test_truncated_header(self):
        text = render_model(_random_model(1))
        with pytest.raises(FormatError, match="truncated"):
            parse_model("\n".join(text.splitlines()[:5]))

    def test_wrong_version(self):
        text = render_model(_random_model(1)).replace("ucp-svr-model v1", "ucp-svr-model v9", 1)
        with pytest.raises(FormatError, match="version"):
            parse_model(text)

    def test_not_a_model(self):
        with pytest.raises(FormatError):
            parse_model("ucp,effort\n1,2\n")

    def test_corrupted_number(self):
        text = render_model(_random_model(2)).replace("bias ", "bias x", 1)
        with pytest.raises(FormatError):
            parse_model(text)
