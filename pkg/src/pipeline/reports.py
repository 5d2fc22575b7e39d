"""
Reports
Renders grid tables, result blocks, the test-set comparison and the summary

Machine-readable CSV output keeps full precision; human tables use 4 decimals.
"""

import math
from typing import Dict, List, Optional, Sequence

import pandas as pd

from ..metrics.evaluation import format_value, render_report_table, report_csv_header, report_csv_row
from ..models.data import EvaluationReport, GridSearchReport, KernelFamily, LabeledDataset, SvrModel
from .param_string import format_number, param_string_from, render_param_string

KERNEL_TITLES = {
    KernelFamily.LINEAR: 'Linear',
    KernelFamily.POLYNOMIAL: 'Polynomial',
    KernelFamily.RBF: 'RBF',
    KernelFamily.SIGMOID: 'Sigmoid',
}


def _csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False)


def _gamma_label(gamma: float) -> str:
    exponent = math.log2(gamma) if gamma > 0 else float('nan')
    if math.isfinite(exponent) and exponent == int(exponent):
        return f"2^{int(exponent)}"
    return format_number(gamma, 4)


def grid_csv(report: GridSearchReport) -> str:
    """Rows gamma, columns epsilon; failed cells read 'failed'."""
    columns = ['gamma'] + [f"epsilon={format_number(e)}" for e in report.grid.epsilon_values]
    rows = []
    for gamma, row in zip(report.grid.gamma_values, report.cells):
        rows.append([format_number(gamma)] + [
            'failed' if cell.failed else repr(cell.validation_error) for cell in row
        ])
    return _csv(pd.DataFrame(rows, columns=columns))


def grid_table(report: GridSearchReport) -> str:
    """Validation error table; the selected cell is marked with '*'."""
    title = (f"Validation errors, SVR {KERNEL_TITLES[report.family]} kernel "
             f"(C = {format_value(report.c_used)})")
    header = ['gamma'] + [f"eps={format_number(e)}" for e in report.grid.epsilon_values]
    lines = [title, "  ".join(f"{h:>9}" for h in header)]
    best = report.best_cell
    for gamma, row in zip(report.grid.gamma_values, report.cells):
        rendered = [_gamma_label(gamma)]
        for cell in row:
            text = 'failed' if cell.failed else format_value(cell.validation_error)
            if cell.gamma_index == best.gamma_index and cell.epsilon_index == best.epsilon_index:
                text += '*'
            rendered.append(text)
        lines.append("  ".join(f"{r:>9}" for r in rendered))
    return "\n".join(lines)


def result_block(model: SvrModel, train_eval: EvaluationReport, test_eval: EvaluationReport,
                 report: Optional[GridSearchReport] = None) -> str:
    """Param line and headline statistics of one kernel, followed by detail tables."""
    family = model.kernel.family
    param_line = render_param_string(param_string_from(model.params), precision=4)
    lines = [
        f"SVR {KERNEL_TITLES[family]} Kernel Result for UCP:",
        f"Param: {param_line}",
        f"* Mean Squared Error (MSE_TEST) = {format_value(test_eval.mse)}",
        f"* Squared correlation coefficient = {format_value(test_eval.r_squared)}",
        f"* NRMS_Test = {format_value(test_eval.nrms)}",
        f"* Support vectors = {model.support_count}",
        "",
        render_report_table(train_eval, title="Training set"),
        "",
        render_report_table(test_eval, title="Test set"),
    ]
    if report is not None:
        lines += ["", grid_table(report)]
    return "\n".join(lines) + "\n"


def comparison_csv(test_data: LabeledDataset, scaled_predictions: Dict[KernelFamily, Sequence[float]],
                   original_predictions: Dict[KernelFamily, Sequence[float]]) -> str:
    """Actual versus per-kernel test predictions, original and scaled.

    The first line documents the scaling constants the scaled columns use.
    """
    preamble = "# scaling"
    if test_data.feature_scaling is not None and test_data.target_scaling is not None:
        preamble += (
            f" ucp_min={format_number(test_data.feature_scaling.min_value)}"
            f" ucp_max={format_number(test_data.feature_scaling.max_value)}"
            f" effort_min={format_number(test_data.target_scaling.min_value)}"
            f" effort_max={format_number(test_data.target_scaling.max_value)}"
        )
    frame = pd.DataFrame({
        'sample': [str(i) for i in range(1, len(test_data) + 1)],
        'ucp': [format_number(r.original_feature[0]) for r in test_data.records],
        'actual_effort': [format_number(r.original_effort) for r in test_data.records],
        'actual_scaled': [format_number(r.effort) for r in test_data.records],
    })
    for family in scaled_predictions:
        name = family.cli_name
        frame[f"{name}_effort"] = [format_number(v) for v in original_predictions[family]]
        frame[f"{name}_scaled"] = [format_number(v) for v in scaled_predictions[family]]
    return preamble + "\n" + _csv(frame)


def summary_csv(evaluations: Dict[KernelFamily, Dict[str, EvaluationReport]],
                models: Dict[KernelFamily, SvrModel]) -> str:
    """One row per kernel and split: every metric at full precision."""
    rows: List[List[str]] = []
    for family, splits in evaluations.items():
        param_line = render_param_string(param_string_from(models[family].params))
        for split in ('train', 'test'):
            rows.append([family.cli_name, param_line, split] + report_csv_row(splits[split]))
    return _csv(pd.DataFrame(rows, columns=['kernel', 'param', 'split'] + report_csv_header()))


def summary_table(evaluations: Dict[KernelFamily, Dict[str, EvaluationReport]]) -> str:
    """MMRE and PRED per kernel on the test set, best MMRE first."""
    lines = [f"{'Kernel':<12}{'MMRE':>10}{'PRED (%)':>12}"]
    for family in rank_by_mmre(evaluations):
        test = evaluations[family]['test']
        lines.append(f"{KERNEL_TITLES[family]:<12}{format_value(test.mmre):>10}{format_value(test.pred):>12}")
    return "\n".join(lines) + "\n"


def rank_by_mmre(evaluations: Dict[KernelFamily, Dict[str, EvaluationReport]]) -> List[KernelFamily]:
    return [family for family, _ in sorted(
        evaluations.items(), key=lambda item: (item[1]['test'].mmre, item[0].code))]
