"""
Pipeline Runner
Drives load -> scale -> split -> grid search -> finalize -> evaluate -> report

All computation finishes before anything touches the output directory; the
artifacts are then written by a single writer that records their checksums.
"""

import hashlib
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import toml

from ..errors import EstimationError, PipelineStageError, ValidationError
from ..models.data import (
    DEFAULT_COEF0, DEFAULT_DEGREE, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
    Artifact, EvaluationReport, GridSearchReport, HyperGrid, KernelFamily,
    LabeledDataset, ParamString, RunManifest, SvrModel,
)
from ..selection.grid_search import GridSearch, evaluate_model, retrain_best
from ..selection.scaling import scale_dataset, unscale_array
from ..selection.splitting import split_test
from ..svr.solver import predict_many, train
from . import reports
from .loaders import load_effort_dataset
from .model_store import render_model

logger = logging.getLogger(__name__)

MANIFEST_NAME = 'manifest.toml'


@contextmanager
def stage(name: str):
    """Tag any failure inside the block with the stage name."""
    logger.debug("stage %s", name)
    try:
        yield
    except PipelineStageError:
        raise
    except (EstimationError, OSError) as e:
        logger.error("stage %s failed: %s", name, e)
        raise PipelineStageError(name, e) from e


@dataclass
class KernelOutcome:
    """Everything computed for one kernel family."""
    model: SvrModel
    training: EvaluationReport
    test: EvaluationReport
    report: Optional[GridSearchReport] = None


@dataclass
class ArtifactWriter:
    """Writes rendered artifacts into one directory, all or nothing."""
    output_dir: Path
    written: List[Path] = field(default_factory=list)

    def write_all(self, artifacts: List[Tuple[str, str, str]]) -> List[Artifact]:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        recorded = []
        try:
            for name, kind, text in artifacts:
                data = text.encode('utf-8')
                path = self.output_dir / name
                path.write_bytes(data)
                self.written.append(path)
                recorded.append(Artifact(name, kind, hashlib.sha256(data).hexdigest()))
                logger.info("wrote %s", path)
        except OSError:
            self.remove_partial()
            raise
        return recorded

    def remove_partial(self):
        for path in self.written:
            path.unlink(missing_ok=True)
        self.written.clear()


def manifest_document(manifest: RunManifest) -> dict:
    return {
        'run': {
            'dataset': manifest.dataset_path,
            'kernels': list(manifest.kernels),
            'output_dir': manifest.output_dir,
            'deterministic': manifest.deterministic,
            'started_at': manifest.started_at,
            'finished_at': manifest.finished_at,
        },
        'grid': {
            'gamma': list(manifest.grid.gamma_values),
            'epsilon': list(manifest.grid.epsilon_values),
        },
        'artifacts': [
            {'name': a.name, 'kind': a.kind, 'sha256': a.sha256} for a in manifest.artifacts
        ],
    }


def load_manifest(path: Union[str, Path]) -> RunManifest:
    """Read back a manifest written by a pipeline run."""
    document = toml.load(str(path))
    run = document['run']
    return RunManifest(
        dataset_path=run['dataset'],
        kernels=list(run['kernels']),
        grid=HyperGrid(document['grid']['gamma'], document['grid']['epsilon']),
        output_dir=run['output_dir'],
        deterministic=run.get('deterministic', True),
        started_at=run.get('started_at'),
        finished_at=run.get('finished_at'),
        artifacts=[Artifact(a['name'], a['kind'], a['sha256']) for a in document.get('artifacts', [])],
    )


class PipelineRunner:
    """One full estimation run over a labeled (ucp, effort) dataset."""

    def __init__(self, output_dir: Union[str, Path], grid: Optional[HyperGrid] = None,
                 folds: int = 5, stride: int = 5, coef0: float = DEFAULT_COEF0,
                 degree: int = DEFAULT_DEGREE, tolerance: float = DEFAULT_TOLERANCE,
                 max_iterations: int = DEFAULT_MAX_ITERATIONS, workers: int = 1,
                 param: Optional[ParamString] = None):
        self.output_dir = Path(output_dir)
        self.grid = grid or HyperGrid.default()
        self.folds = folds
        self.stride = stride
        self.coef0 = coef0
        self.degree = degree
        self.tolerance = tolerance
        self.max_iterations = max_iterations
        self.workers = workers
        self.param = param
        self.outcomes: Dict[KernelFamily, KernelOutcome] = {}

    def _families(self, kernel_families: Iterable[KernelFamily]) -> List[KernelFamily]:
        families = sorted(set(kernel_families), key=lambda f: f.code)
        if self.param is not None:
            requested = self.param.kernel_family
            if families and families != [requested]:
                logger.warning("parameter string fixes the %s kernel; other kernels are skipped",
                               requested.cli_name)
            return [requested]
        if not families:
            raise ValidationError("no kernel family requested")
        return families

    def _fit_kernel(self, family: KernelFamily, train_data: LabeledDataset,
                    test_data: LabeledDataset) -> KernelOutcome:
        report = None
        if self.param is not None:
            with stage(f"train:{family.cli_name}"):
                params = self.param.to_params(self.max_iterations)
                model = train(train_data.features, train_data.targets, params).with_scaling(
                    train_data.feature_scaling, train_data.target_scaling)
        else:
            with stage(f"grid-search:{family.cli_name}"):
                report = GridSearch(
                    train_data, family, self.grid, self.folds, coef0=self.coef0,
                    degree=self.degree, tolerance=self.tolerance,
                    max_iterations=self.max_iterations, workers=self.workers,
                ).run()
            with stage(f"finalize:{family.cli_name}"):
                model = retrain_best(train_data, report, self.tolerance, self.max_iterations)
        with stage(f"evaluate:{family.cli_name}"):
            training = evaluate_model(model, train_data)
            test = evaluate_model(model, test_data)
        logger.info("%s: test MSE %.6g, MMRE %.6g, PRED %.6g",
                    family.cli_name, test.mse, test.mmre, test.pred)
        return KernelOutcome(model, training, test, report)

    def _render(self, outcomes: Dict[KernelFamily, KernelOutcome],
                test_data: LabeledDataset) -> List[Tuple[str, str, str]]:
        artifacts = []
        scaled: Dict[KernelFamily, List[float]] = {}
        original: Dict[KernelFamily, List[float]] = {}
        for family, outcome in outcomes.items():
            name = family.cli_name
            if outcome.report is not None:
                artifacts.append((f"grid_{name}.csv", 'grid', reports.grid_csv(outcome.report)))
            artifacts.append((f"result_{name}.txt", 'result', reports.result_block(
                outcome.model, outcome.training, outcome.test, outcome.report)))
            artifacts.append((f"model_{name}.svr", 'model', render_model(outcome.model)))
            predictions = predict_many(outcome.model, test_data.features)
            scaled[family] = list(predictions)
            original[family] = list(unscale_array(test_data.target_scaling, predictions))

        evaluations = {f: {'train': o.training, 'test': o.test} for f, o in outcomes.items()}
        models = {f: o.model for f, o in outcomes.items()}
        artifacts.append(('comparison.csv', 'summary', reports.comparison_csv(test_data, scaled, original)))
        artifacts.append(('summary.csv', 'summary', reports.summary_csv(evaluations, models)))
        return artifacts

    def run(self, dataset: Union[LabeledDataset, str, Path],
            kernel_families: Iterable[KernelFamily]) -> RunManifest:
        started_at = datetime.now(timezone.utc).isoformat()
        families = self._families(kernel_families)

        with stage('load'):
            data = dataset if isinstance(dataset, LabeledDataset) else load_effort_dataset(dataset)
        with stage('scale'):
            data = scale_dataset(data)
        with stage('split'):
            train_data, test_data = split_test(data, self.stride)
        logger.info("%d training / %d test records, kernels: %s", len(train_data), len(test_data),
                    ", ".join(f.cli_name for f in families))

        outcomes = {family: self._fit_kernel(family, train_data, test_data) for family in families}

        with stage('render'):
            artifacts = self._render(outcomes, test_data)

        manifest = RunManifest(
            dataset_path=str(dataset) if not isinstance(dataset, LabeledDataset) else '<in-memory>',
            kernels=[f.cli_name for f in families],
            grid=self.grid,
            output_dir=str(self.output_dir),
            started_at=started_at,
        )
        writer = ArtifactWriter(self.output_dir)
        with stage('write'):
            manifest.artifacts = writer.write_all(artifacts)
            manifest.finished_at = datetime.now(timezone.utc).isoformat()
            try:
                with open(self.output_dir / MANIFEST_NAME, 'w', encoding='utf-8') as f:
                    toml.dump(manifest_document(manifest), f)
            except OSError:
                writer.remove_partial()
                raise
        self.outcomes = outcomes
        logger.info("run complete: %d artifacts in %s", len(manifest.artifacts), self.output_dir)
        return manifest


def run_full_pipeline(dataset: Union[LabeledDataset, str, Path], kernel_families: Iterable[KernelFamily],
                      grid: Optional[HyperGrid], output_dir: Union[str, Path], **settings) -> RunManifest:
    """Run every step for each kernel family and write the artifacts to output_dir."""
    return PipelineRunner(output_dir, grid, **settings).run(dataset, kernel_families)
