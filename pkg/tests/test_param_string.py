import pytest

from src.errors import ParamStringError
from src.models.data import HyperGrid, KernelFamily, KernelSpec, SvrParams
from src.pipeline.param_string import (
    format_number, param_string_from, parse_param_string, render_param_string,
)


class TestParse:

    def test_rbf_example(self):
        param = parse_param_string("-s 3 -t 2 -c 20 -g 64 -p 1")
        assert (param.svm_type, param.kernel_family, param.c, param.gamma, param.p_epsilon) == \
            (3, KernelFamily.RBF, 20.0, 64.0, 1.0)
        assert param.raw == "-s 3 -t 2 -c 20 -g 64 -p 1"

    def test_linear_result_line(self):
        param = parse_param_string("-s 3 -t 0 -c 0.9989 -g 0.0078 -p 0")
        assert (param.kernel_family, param.c, param.gamma, param.p_epsilon) == \
            (KernelFamily.LINEAR, 0.9989, 0.0078, 0.0)

    def test_defaults(self):
        param = parse_param_string("-s 3")
        assert (param.kernel_code, param.c, param.gamma, param.p_epsilon) == (2, 1.0, 1.0, 0.1)
        assert (param.degree, param.coef0, param.tolerance) == (3, 0.0, 1e-3)

    def test_kernel_parameter_flags(self):
        param = parse_param_string("-s 3 -t 1 -d 2 -r 0.5 -e 0.0001")
        assert (param.degree, param.coef0, param.tolerance) == (2, 0.5, 1e-4)

    @pytest.mark.parametrize('text, flag', [
        ("-s 3 -x 1", '-x'),
        ("-s 3 -c abc", '-c'),
        ("-s 3 -t 2.5", '-t'),
        ("-s 3 -c", '-c'),
        ("-t 2", '-s'),
        ("-s 0", '-s'),
        ("-s 3 -t 7", '-t'),
        ("-s 3 -c 0", '-c'),
        ("-s 3 -p -1", '-p'),
        ("-s 3 -c nan", '-c'),
    ])
    def test_errors_name_the_flag(self, text, flag):
        with pytest.raises(ParamStringError) as excinfo:
            parse_param_string(text)
        assert excinfo.value.flag == flag
        assert flag in str(excinfo.value)

    def test_to_params(self):
        params = parse_param_string("-s 3 -t 3 -c 0.5 -g 0.5 -p 0.25 -r -1").to_params()
        assert params == SvrParams(0.5, 0.25, KernelSpec(KernelFamily.SIGMOID, 0.5, -1.0, 3))


class TestRender:

    @pytest.mark.parametrize('text', [
        "-s 3 -t 2 -c 20 -g 64 -p 1",
        "-s 3 -t 0 -c 0.9989 -g 0.0078 -p 0",
        "-p 0.123456789012345 -g 0.1 -s 3 -c 3.3333333333333335 -t 1 -d 4 -r 0.7 -e 1e-05",
    ])
    def test_round_trip(self, text):
        parsed = parse_param_string(text)
        assert parse_param_string(render_param_string(parsed)).values() == parsed.values()

    def test_canonical_order(self):
        assert render_param_string(parse_param_string("-p 1 -g 64 -c 20 -t 2 -s 3")) == \
            "-s 3 -t 2 -c 20 -g 64 -p 1"

    def test_report_precision(self):
        params = SvrParams(0.99891234, 0.0, KernelSpec(KernelFamily.LINEAR, 2.0 ** -7))
        assert render_param_string(param_string_from(params), precision=4) == \
            "-s 3 -t 0 -c 0.9989 -g 0.0078 -p 0"

    @pytest.mark.parametrize('value, precision, expected', [
        (20.0, None, '20'), (0.1, None, '0.1'), (1e-05, None, '1e-05'),
        (0.0078125, 4, '0.0078'), (128.0, 4, '128'), (0.0, 4, '0'), (-0.00001, 4, '0'),
    ])
    def test_format_number(self, value, precision, expected):
        assert format_number(value, precision) == expected


# Param lines of the four result blocks and the grid cells they were selected from
@pytest.mark.parametrize('line, family, exponent', [
    ("-s 3 -t 0 -c 0.9989 -g 0.0078 -p 0", KernelFamily.LINEAR, -7),
    ("-s 3 -t 1 -c 0.9989 -g 128 -p 0", KernelFamily.POLYNOMIAL, 7),
    ("-s 3 -t 2 -c 0.9989 -g 1 -p 0", KernelFamily.RBF, 0),
    ("-s 3 -t 3 -c 0.9989 -g 0.5 -p 0", KernelFamily.SIGMOID, -1),
])
def test_result_lines_map_to_grid_cells(line, family, exponent):
    param = parse_param_string(line)
    grid = HyperGrid.default()
    assert param.kernel_family is family
    assert grid.locate(param.gamma, param.p_epsilon) == (exponent + 7, 0)
