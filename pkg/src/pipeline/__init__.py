"""
Pipeline Module
Dataset ingestion, parameter strings, model files, reports and the full run
"""

from .param_string import parse_param_string, render_param_string, param_string_from
from .loaders import load_projects, load_effort_dataset, read_project_table
from .model_store import save_model, load_model
from .prediction import predict_effort
from .runner import run_full_pipeline, PipelineRunner, load_manifest

__all__ = [
    'parse_param_string', 'render_param_string', 'param_string_from', 'load_projects',
    'load_effort_dataset', 'read_project_table', 'save_model', 'load_model',
    'predict_effort', 'run_full_pipeline', 'PipelineRunner', 'load_manifest',
]
