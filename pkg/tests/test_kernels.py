import numpy as np
import pytest

from src.errors import NumericOverflowError, ValidationError
from src.models.data import KernelFamily, KernelSpec
from src.svr import cross_kernel, gram_matrix, kernel_eval


def test_linear_is_dot_product():
    assert kernel_eval(KernelSpec(KernelFamily.LINEAR), [1, 2], [3, 4]) == 11


@pytest.mark.parametrize('gamma', [2.0 ** -7, 1.0, 2.0 ** 7])
def test_rbf_of_identical_points_is_one(gamma):
    assert kernel_eval(KernelSpec(KernelFamily.RBF, gamma), [0.3, 0.7], [0.3, 0.7]) == 1.0


def test_polynomial_defaults():
    assert kernel_eval(KernelSpec(KernelFamily.POLYNOMIAL, 1.0), [1], [2]) == 8


def test_sigmoid_of_orthogonal_points_is_zero():
    assert kernel_eval(KernelSpec(KernelFamily.SIGMOID, 3.5), [1, 0], [0, 1]) == 0.0


def test_dimension_mismatch():
    with pytest.raises(ValidationError):
        kernel_eval(KernelSpec(KernelFamily.LINEAR), [1, 2], [1])


def test_non_positive_gamma_rejected():
    with pytest.raises(ValidationError):
        KernelSpec(KernelFamily.RBF, 0.0)


def test_polynomial_overflow_is_an_error():
    spec = KernelSpec(KernelFamily.POLYNOMIAL, 1e200, degree=3)
    with pytest.raises(NumericOverflowError):
        kernel_eval(spec, [1e10], [1e10])


@pytest.mark.parametrize('family', list(KernelFamily))
def test_symmetry(family):
    rng = np.random.default_rng(1)
    spec = KernelSpec(family, 0.75)
    for _ in range(20):
        a, b = rng.uniform(-1, 1, size=(2, 3))
        assert kernel_eval(spec, a, b) == kernel_eval(spec, b, a)


def test_rbf_bounds():
    rng = np.random.default_rng(2)
    spec = KernelSpec(KernelFamily.RBF, 2.0)
    for _ in range(50):
        a, b = rng.uniform(0, 1, size=(2, 2))
        assert 0 < kernel_eval(spec, a, b) < 1


def test_linear_equals_first_degree_polynomial():
    rng = np.random.default_rng(3)
    linear = KernelSpec(KernelFamily.LINEAR)
    poly = KernelSpec(KernelFamily.POLYNOMIAL, 1.0, 0.0, 1)
    for _ in range(50):
        a, b = rng.uniform(-5, 5, size=(2, 4))
        assert kernel_eval(linear, a, b) == pytest.approx(kernel_eval(poly, a, b), abs=1e-15)


class TestGramMatrix:

    def test_linear_gram(self):
        np.testing.assert_array_equal(gram_matrix(KernelSpec(KernelFamily.LINEAR), [[1], [2]]), [[1, 2], [2, 4]])

    def test_rbf_diagonal(self):
        xs = np.random.default_rng(4).uniform(0, 1, size=(6, 1))
        np.testing.assert_array_equal(np.diag(gram_matrix(KernelSpec(KernelFamily.RBF, 8.0), xs)), np.ones(6))

    def test_matches_entrywise_evaluation(self):
        spec = KernelSpec(KernelFamily.RBF, 2.0)
        xs = np.random.default_rng(5).uniform(0, 1, size=(5, 2))
        gram = gram_matrix(spec, xs)
        for i in range(5):
            for j in range(5):
                assert gram[i, j] == pytest.approx(kernel_eval(spec, xs[i], xs[j]), abs=1e-15)

    @pytest.mark.parametrize('family', list(KernelFamily))
    def test_exactly_symmetric(self, family):
        xs = np.random.default_rng(6).uniform(0, 1, size=(7, 3))
        gram = gram_matrix(KernelSpec(family, 0.5), xs)
        np.testing.assert_array_equal(gram, gram.T)

    def test_rbf_gram_is_positive_semidefinite(self):
        rng = np.random.default_rng(7)
        gram = gram_matrix(KernelSpec(KernelFamily.RBF, 1.0), rng.uniform(0, 1, size=(10, 1)))
        for _ in range(100):
            v = rng.standard_normal(10)
            assert v @ gram @ v >= -1e-9

    def test_gram_is_read_only(self):
        gram = gram_matrix(KernelSpec(KernelFamily.LINEAR), [[1.0], [2.0]])
        with pytest.raises(ValueError):
            gram[0, 0] = 5.0

    def test_cross_kernel_shape(self):
        values = cross_kernel(KernelSpec(KernelFamily.LINEAR), [[1.0], [2.0], [3.0]], [[1.0], [0.5]])
        assert values.shape == (3, 2)
        np.testing.assert_array_equal(values[:, 1], [0.5, 1.0, 1.5])


@pytest.mark.parametrize('code, family', [(0, KernelFamily.LINEAR), (1, KernelFamily.POLYNOMIAL),
                                          (2, KernelFamily.RBF), (3, KernelFamily.SIGMOID)])
def test_param_string_codes(code, family):
    assert KernelFamily.from_code(code) is family
    assert family.code == code
