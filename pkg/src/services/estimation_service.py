"""
Estimation Service
Connects the command-line surface to sizing, training, search and reporting
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd

from ..config.manager import ConfigManager
from ..errors import ValidationError
from ..models.data import (
    EvaluationReport, GridSearchReport, HyperGrid, KernelFamily, LabeledDataset,
    ParamString, ProjectDescriptor, RunManifest, SvrModel, UcpBreakdown,
)
from ..pipeline.loaders import load_effort_dataset, read_project_table
from ..pipeline.model_store import load_model, save_model
from ..pipeline.prediction import predict_effort
from ..pipeline.runner import PipelineRunner
from ..selection.grid_search import GridSearch, evaluate_model, select_and_finalize
from ..selection.scaling import apply_scaling, scale_dataset
from ..selection.splitting import split_test
from ..svr.solver import train
from ..ucp.calculator import compute_ucp

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class EstimationService:
    """Runs estimator operations with settings taken from the configuration."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager

    def grid(self, gamma_exponents: Optional[List[int]] = None,
             epsilon_values: Optional[List[float]] = None) -> HyperGrid:
        """Configured grid, with either axis optionally overridden."""
        configured = self.config_manager.get_grid()
        gammas = (HyperGrid.from_exponents(gamma_exponents, [0]).gamma_values
                  if gamma_exponents else configured.gamma_values)
        epsilons = epsilon_values if epsilon_values else configured.epsilon_values
        return HyperGrid(gammas, epsilons)

    def size_projects(self, path: PathLike) -> Tuple[List[Tuple[ProjectDescriptor, UcpBreakdown]],
                                                     Optional[List[float]]]:
        projects, efforts = read_project_table(path)
        return [(project, compute_ucp(project)) for project in projects], efforts

    def write_effort_dataset(self, sized: List[Tuple[ProjectDescriptor, UcpBreakdown]],
                             efforts: List[float], path: PathLike) -> Path:
        """Write the ``ucp,effort`` dataset a descriptor file with efforts describes."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame({
            'ucp': [repr(breakdown.ucp) for _, breakdown in sized],
            'effort': [repr(float(effort)) for effort in efforts],
        })
        frame.to_csv(path, index=False)
        logger.info("wrote %d records to %s", len(frame), path)
        return path

    def _prepared(self, dataset_path: PathLike) -> Tuple[LabeledDataset, LabeledDataset]:
        data = scale_dataset(load_effort_dataset(dataset_path))
        return split_test(data, self.config_manager.get_stride())

    def _search(self, train_data: LabeledDataset, family: KernelFamily, grid: HyperGrid) -> GridSearchReport:
        settings = self.config_manager.get_run_settings()
        return GridSearch(
            train_data, family, grid, settings['folds'], coef0=settings['coef0'],
            degree=settings['degree'], tolerance=settings['tolerance'],
            max_iterations=settings['max_iterations'], workers=settings['workers'],
        ).run()

    def grid_search(self, dataset_path: PathLike, families: List[KernelFamily],
                    grid: HyperGrid) -> Dict[KernelFamily, GridSearchReport]:
        train_data, _ = self._prepared(dataset_path)
        return {family: self._search(train_data, family, grid) for family in families}

    def train(self, dataset_path: PathLike, family: KernelFamily, model_path: PathLike,
              grid: HyperGrid, param: Optional[ParamString] = None
              ) -> Tuple[SvrModel, EvaluationReport, Optional[GridSearchReport]]:
        """Fit one kernel (grid search unless a parameter string is given) and save it."""
        train_data, test_data = self._prepared(dataset_path)
        report = None
        if param is not None:
            params = param.to_params(self.config_manager.get_max_iterations())
            model = train(train_data.features, train_data.targets, params).with_scaling(
                train_data.feature_scaling, train_data.target_scaling)
            test = evaluate_model(model, test_data)
        else:
            report = self._search(train_data, family, grid)
            model, test = select_and_finalize(
                train_data, test_data, report,
                tolerance=self.config_manager.get_tolerance(),
                max_iterations=self.config_manager.get_max_iterations(),
            )
        save_model(model, model_path)
        return model, test, report

    def evaluate(self, model_path: PathLike, dataset_path: PathLike) -> EvaluationReport:
        """Evaluate a saved model on a raw dataset scaled with the model's own constants."""
        model = load_model(model_path)
        if model.feature_scaling is None or model.target_scaling is None:
            raise ValidationError(f"{model_path}: model carries no scaling constants")
        data = apply_scaling(load_effort_dataset(dataset_path), model.feature_scaling, model.target_scaling)
        return evaluate_model(model, data)

    def predict(self, model_path: PathLike, ucp: Optional[float] = None,
                projects_path: Optional[PathLike] = None) -> List[Tuple[str, float]]:
        model = load_model(model_path)
        if projects_path is not None:
            projects, _ = read_project_table(projects_path)
            return [(project.name, predict_effort(model, project)) for project in projects]
        if ucp is None:
            raise ValidationError("predict needs a UCP value or a projects file")
        return [(f"ucp={ucp}", predict_effort(model, ucp))]

    def run_report(self, dataset_path: PathLike, families: List[KernelFamily], grid: HyperGrid,
                   output_dir: Optional[PathLike] = None, param: Optional[ParamString] = None
                   ) -> Tuple[RunManifest, PipelineRunner]:
        runner = PipelineRunner(
            output_dir or self.config_manager.get_output_dir(), grid, param=param,
            **self.config_manager.get_run_settings(),
        )
        return runner.run(dataset_path, families), runner
