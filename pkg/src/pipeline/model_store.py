"""
Model Store
Versioned plain-text persistence of trained SVR models

Layout (one item per line, floats in shortest round-trip decimal form)::

    ucp-svr-model v1
    kernel <code>
    gamma <float>
    coef0 <float>
    degree <int>
    c <float>
    epsilon <float>
    tolerance <float>
    max_iterations <int>
    dimension <int>
    bias <float>
    feature_scaling <min> <max> | none
    target_scaling <min> <max> | none
    support_vectors <n>
    sv <training index> <coefficient> <x_1> ... <x_d>     (n lines, training order)
    end
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

from ..errors import FormatError, ValidationError
from ..models.data import KernelFamily, KernelSpec, ScalingParams, SvrModel, SvrParams

logger = logging.getLogger(__name__)

MAGIC = 'ucp-svr-model'
VERSION = 'v1'
HEADER_KEYS = (
    'kernel', 'gamma', 'coef0', 'degree', 'c', 'epsilon', 'tolerance',
    'max_iterations', 'dimension', 'bias', 'feature_scaling', 'target_scaling',
    'support_vectors',
)


def _float(value: float) -> str:
    return repr(float(value))


def _scaling_text(params: Optional[ScalingParams]) -> str:
    if params is None:
        return 'none'
    return f"{_float(params.min_value)} {_float(params.max_value)}"


def render_model(model: SvrModel) -> str:
    """Serialize a model to the versioned text layout."""
    params = model.params
    lines = [
        f"{MAGIC} {VERSION}",
        f"kernel {model.kernel.family.code}",
        f"gamma {_float(model.kernel.gamma)}",
        f"coef0 {_float(model.kernel.coef0)}",
        f"degree {model.kernel.degree}",
        f"c {_float(params.c)}",
        f"epsilon {_float(params.epsilon)}",
        f"tolerance {_float(params.tolerance)}",
        f"max_iterations {params.max_iterations}",
        f"dimension {model.dimension}",
        f"bias {_float(model.bias)}",
        f"feature_scaling {_scaling_text(model.feature_scaling)}",
        f"target_scaling {_scaling_text(model.target_scaling)}",
        f"support_vectors {model.support_count}",
    ]
    indices = model.support_indices or tuple(range(model.support_count))
    for index, coefficient, vector in zip(indices, model.dual_coefficients, model.support_inputs):
        values = " ".join(_float(v) for v in vector)
        lines.append(f"sv {index} {_float(coefficient)} {values}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def _parse_scaling(text: str) -> Optional[ScalingParams]:
    if text == 'none':
        return None
    low, high = text.split()
    return ScalingParams(float(low), float(high))


def parse_model(text: str) -> SvrModel:
    """Rebuild a model; raises FormatError on a bad version or truncation."""
    lines = text.splitlines()
    if not lines or lines[0].split()[:1] != [MAGIC]:
        raise FormatError("not an SVR model file")
    if lines[0] != f"{MAGIC} {VERSION}":
        raise FormatError(f"unsupported model version {lines[0].split()[-1]!r}; expected {VERSION}")

    header = {}
    try:
        for key, line in zip(HEADER_KEYS, lines[1:1 + len(HEADER_KEYS)]):
            name, _, value = line.partition(' ')
            if name != key:
                raise FormatError(f"expected '{key}', found {line!r}")
            header[key] = value
        if len(header) != len(HEADER_KEYS):
            raise FormatError("model file is truncated (incomplete header)")

        dimension = int(header['dimension'])
        count = int(header['support_vectors'])
        body = lines[1 + len(HEADER_KEYS):]
        if len(body) < count + 1 or body[count] != 'end':
            raise FormatError("model file is truncated (missing support vectors or end marker)")

        indices: List[int] = []
        coefficients: List[float] = []
        inputs = []
        for line in body[:count]:
            fields = line.split()
            if fields[0] != 'sv' or len(fields) != 3 + dimension:
                raise FormatError(f"malformed support vector line {line!r}")
            indices.append(int(fields[1]))
            coefficients.append(float(fields[2]))
            inputs.append(tuple(float(v) for v in fields[3:]))

        kernel = KernelSpec(
            KernelFamily.from_code(int(header['kernel'])),
            float(header['gamma']),
            float(header['coef0']),
            int(header['degree']),
        )
        params = SvrParams(
            float(header['c']),
            float(header['epsilon']),
            kernel,
            float(header['tolerance']),
            int(header['max_iterations']),
        )
        return SvrModel(
            support_inputs=tuple(inputs),
            dual_coefficients=tuple(coefficients),
            bias=float(header['bias']),
            kernel=kernel,
            params=params,
            dimension=dimension,
            support_indices=tuple(indices),
            feature_scaling=_parse_scaling(header['feature_scaling']),
            target_scaling=_parse_scaling(header['target_scaling']),
        )
    except (ValueError, IndexError, ValidationError) as e:
        raise FormatError(f"malformed model file: {e}")


def save_model(model: SvrModel, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_model(model), encoding='utf-8')
    logger.info("saved model to %s", path)
    return path


def load_model(path: Union[str, Path]) -> SvrModel:
    text = Path(path).read_text(encoding='utf-8')
    model = parse_model(text)
    logger.debug("loaded %s model with %d support vectors from %s",
                 model.kernel.family.cli_name, model.support_count, path)
    return model
