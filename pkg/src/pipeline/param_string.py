"""
Parameter Strings
Parses and renders '-s 3 -t 2 -c 20 -g 64 -p 1' style SVR parameter strings
"""

import math
from typing import Dict, Optional

from ..errors import ParamStringError
from ..models.data import (
    DEFAULT_COEF0, DEFAULT_DEGREE, DEFAULT_TOLERANCE, KernelFamily, ParamString, SvrParams,
)

EPSILON_SVR = 3

# flag -> (field, type, default)
FLAGS = {
    '-s': ('svm_type', int, 0),
    '-t': ('kernel_code', int, KernelFamily.RBF.code),
    '-c': ('c', float, 1.0),
    '-g': ('gamma', float, 1.0),
    '-p': ('p_epsilon', float, 0.1),
    '-d': ('degree', int, DEFAULT_DEGREE),
    '-r': ('coef0', float, DEFAULT_COEF0),
    '-e': ('tolerance', float, DEFAULT_TOLERANCE),
}


def _convert(flag: str, kind, text: str):
    try:
        value = kind(text)
    except ValueError:
        raise ParamStringError(f"{flag}: expected {'an integer' if kind is int else 'a number'}, got {text!r}", flag)
    if kind is float and not math.isfinite(value):
        raise ParamStringError(f"{flag}: value must be finite, got {text!r}", flag)
    return value


def parse_param_string(text: str) -> ParamString:
    """Parse flag/value pairs; unspecified flags take the tool defaults."""
    tokens = text.split()
    values: Dict[str, object] = {name: default for name, _, default in FLAGS.values()}

    for position in range(0, len(tokens), 2):
        flag = tokens[position]
        if flag not in FLAGS:
            raise ParamStringError(f"unknown flag {flag!r}", flag)
        if position + 1 >= len(tokens):
            raise ParamStringError(f"{flag}: missing value", flag)
        name, kind, _ = FLAGS[flag]
        values[name] = _convert(flag, kind, tokens[position + 1])

    if values['svm_type'] != EPSILON_SVR:
        raise ParamStringError(
            f"-s: only epsilon-SVR (3) is supported, got {values['svm_type']}", '-s'
        )
    if values['kernel_code'] not in {family.code for family in KernelFamily}:
        raise ParamStringError(f"-t: kernel type must be 0-3, got {values['kernel_code']}", '-t')
    if values['c'] <= 0:
        raise ParamStringError(f"-c: C must be positive, got {values['c']}", '-c')
    if values['p_epsilon'] < 0:
        raise ParamStringError(f"-p: epsilon must be non-negative, got {values['p_epsilon']}", '-p')
    if values['degree'] < 1:
        raise ParamStringError(f"-d: degree must be positive, got {values['degree']}", '-d')
    if values['tolerance'] <= 0:
        raise ParamStringError(f"-e: tolerance must be positive, got {values['tolerance']}", '-e')

    return ParamString(raw=text, **values)


def format_number(value: float, precision: Optional[int] = None) -> str:
    """Full precision by default, otherwise fixed decimals with trailing zeros dropped."""
    if precision is None:
        text = repr(float(value))
        return text[:-2] if text.endswith('.0') else text
    text = f"{value:.{precision}f}".rstrip('0').rstrip('.')
    return '0' if text in ('', '-0') else text


def render_param_string(param: ParamString, precision: Optional[int] = None) -> str:
    """Canonical flag order; optional flags appear only when not at their defaults."""
    parts = [
        f"-s {param.svm_type}",
        f"-t {param.kernel_code}",
        f"-c {format_number(param.c, precision)}",
        f"-g {format_number(param.gamma, precision)}",
        f"-p {format_number(param.p_epsilon, precision)}",
    ]
    if param.degree != DEFAULT_DEGREE:
        parts.append(f"-d {param.degree}")
    if param.coef0 != DEFAULT_COEF0:
        parts.append(f"-r {format_number(param.coef0, precision)}")
    if param.tolerance != DEFAULT_TOLERANCE:
        parts.append(f"-e {format_number(param.tolerance)}")
    return " ".join(parts)


def param_string_from(params: SvrParams) -> ParamString:
    """The parameter string describing trained SVR params."""
    return ParamString(
        svm_type=EPSILON_SVR,
        kernel_code=params.kernel.family.code,
        c=params.c,
        gamma=params.kernel.gamma,
        p_epsilon=params.epsilon,
        degree=params.kernel.degree,
        coef0=params.kernel.coef0,
        tolerance=params.tolerance,
    )
