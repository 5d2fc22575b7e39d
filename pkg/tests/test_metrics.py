import math

import numpy as np
import pytest

from src.errors import DegenerateInputError, ValidationError
from src.metrics import evaluate, mmre, mse, nrms, pred, r_squared, rmse
from src.metrics.evaluation import format_value, render_report_table, report_csv_row


@pytest.mark.parametrize('actual, predicted, expected', [
    ([1, 2], [1, 2], 0.0),
    ([0, 0], [1, 1], 1.0),
    ([1, 2, 3], [2, 2, 2], 2 / 3),
])
def test_mse(actual, predicted, expected):
    assert mse(actual, predicted) == pytest.approx(expected, abs=1e-15)


def test_mse_length_mismatch():
    with pytest.raises(ValidationError):
        mse([1, 2], [1])


@pytest.mark.parametrize('value, expected', [(0, 0), (4, 2), (0.0026, 0.050990195135927847)])
def test_rmse(value, expected):
    assert rmse(value) == pytest.approx(expected, abs=1e-12)


def test_rmse_of_negative_mse():
    with pytest.raises(ValidationError):
        rmse(-0.1)


def test_rmse_squared_is_mse():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        actual, predicted = rng.uniform(0, 1, size=(2, 10))
        value = mse(actual, predicted)
        assert rmse(value) ** 2 == pytest.approx(value, abs=1e-12)


class TestNrms:

    def test_zero_rmse(self):
        assert nrms(0.0, [0.1, 0.5, 0.9]) == 0.0

    def test_rmse_equal_to_std(self):
        reference = [0.1, 0.5, 0.9, 0.3]
        assert nrms(float(np.std(reference)), reference) == pytest.approx(1.0)

    def test_consistency_with_published_shape(self):
        # NRMS 0.2431 at MSE 0.0026 implies a reference spread near 0.2098
        spread = rmse(0.0026) / 0.2431
        assert spread == pytest.approx(0.2098, abs=1e-4)

    def test_zero_spread(self):
        with pytest.raises(DegenerateInputError):
            nrms(0.1, [0.4, 0.4, 0.4])

    def test_single_reference(self):
        with pytest.raises(DegenerateInputError):
            nrms(0.1, [0.4])


class TestMmre:

    def test_perfect(self):
        assert mmre([0.2, 0.4], [0.2, 0.4]) == 0.0

    def test_half(self):
        assert mmre([0.01], [0.005]) == pytest.approx(0.5)

    def test_hand_arithmetic(self):
        assert mmre([1, 2], [2, 1]) == pytest.approx(0.75)

    def test_zero_actual(self):
        with pytest.raises(ValidationError):
            mmre([0.0, 1.0], [0.1, 1.0])

    def test_scale_invariance(self):
        rng = np.random.default_rng(1)
        actual = rng.uniform(1, 10, 20)
        predicted = rng.uniform(1, 10, 20)
        assert mmre(actual * 7.5, predicted * 7.5) == pytest.approx(mmre(actual, predicted), rel=1e-12)


class TestPred:

    def test_perfect(self):
        assert pred([0.1, 0.7], [0.1, 0.7]) == 100.0

    def test_mean_absolute_error(self):
        assert pred([0.5, 0.5], [0.52, 0.48]) == pytest.approx(98.0)

    def test_single_miss(self):
        assert pred([0.5], [0.0]) == pytest.approx(50.0)

    def test_hundred_only_when_exact(self):
        assert pred([0.5, 0.5], [0.5, 0.5 + 1e-9]) < 100.0


class TestRSquared:

    def test_identity(self):
        assert r_squared([0.1, 0.4, 0.8], [0.1, 0.4, 0.8]) == pytest.approx(1.0)

    @pytest.mark.parametrize('a, b', [(2.0, 0.5), (-3.0, 1.0), (0.01, -4.0)])
    def test_affine_relation(self, a, b):
        actual = np.array([0.1, 0.4, 0.8, 0.95, 0.3])
        assert r_squared(actual, a * actual + b) == pytest.approx(1.0, abs=1e-12)

    def test_independent_samples(self):
        rng = np.random.default_rng(2)
        assert r_squared(rng.uniform(size=10_000), rng.uniform(size=10_000)) < 0.05

    def test_constant_predictions(self):
        with pytest.raises(DegenerateInputError):
            r_squared([0.1, 0.2, 0.3], [0.5, 0.5, 0.5])

    def test_never_above_one(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            actual = rng.uniform(size=5)
            assert r_squared(actual, actual * 3.0 + 1.0) <= 1.0


class TestEvaluate:

    def test_report_fields(self):
        report = evaluate([0.1, 0.5, 0.9], [0.12, 0.5, 0.85])
        assert report.n == 3
        assert report.rmse == pytest.approx(math.sqrt(report.mse), abs=1e-12)
        assert report.pred == pytest.approx(pred([0.1, 0.5, 0.9], [0.12, 0.5, 0.85]))

    def test_mmre_uses_original_units(self):
        report = evaluate([0.0, 1.0], [0.1, 0.9], original_actual=[100.0, 200.0],
                          original_predicted=[110.0, 190.0])
        assert report.mmre == pytest.approx((0.1 + 0.05) / 2)

    def test_degenerate_statistics_become_nan(self, caplog):
        report = evaluate([0.2, 0.4, 0.6], [0.5, 0.5, 0.5])
        assert math.isnan(report.r_squared)
        assert not math.isnan(report.nrms)
        assert 'r squared undefined' in caplog.text

    def test_rendering(self):
        report = evaluate([0.1, 0.5, 0.9], [0.12, 0.5, 0.85])
        table = render_report_table(report, title='Test set')
        assert table.splitlines()[0] == 'Test set'
        assert f"{report.mse:.4f}" in table
        assert report_csv_row(report)[0] == repr(report.mse)

    def test_format_value(self):
        assert format_value(0.98765) == '0.9877'
        assert format_value(float('nan')) == 'nan'
        assert format_value(17) == '17'
