"""
Main Application Module
Command-line surface: argument parsing, logging setup and exit codes
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence

import toml

from .config.manager import ConfigManager
from .errors import EstimationError, ValidationError
from .metrics.evaluation import format_value, render_report_table
from .models.data import KernelFamily
from .pipeline import reports
from .pipeline.param_string import parse_param_string
from .services.estimation_service import EstimationService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = ValidationError.exit_code
EXIT_IO = 3
KERNEL_CHOICES = ['linear', 'poly', 'rbf', 'sigmoid', 'all']


def _int_range(text: str) -> List[int]:
    """'-7:7' (inclusive) or '-7,0,7'."""
    try:
        if ':' in text:
            low, high = (int(part) for part in text.split(':'))
            return list(range(low, high + 1))
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi' or a comma list of integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        if ':' in text:
            low, high = (int(part) for part in text.split(':'))
            return [float(v) for v in range(low, high + 1)]
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi' or a comma list of numbers, got {text!r}")


def _toml_value(text: str) -> Any:
    """A toml literal ('4', '[0, 0.5]', '"DEBUG"'); anything else is kept as a string."""
    try:
        return toml.loads(f"v = {text}")['v']
    except ValueError:
        return text


def kernel_families(choice: str) -> List[KernelFamily]:
    if choice == 'all':
        return list(KernelFamily)
    return [KernelFamily.from_name(choice)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ucp-svr',
        description='Use case point sizing and SVR effort estimation',
    )
    parser.add_argument('--config', type=Path, help='configuration file (default: XDG config dir)')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    commands = parser.add_subparsers(dest='command', required=True)

    def with_grid(sub):
        sub.add_argument('--kernel', choices=KERNEL_CHOICES, default='all')
        sub.add_argument('--grid-gamma', type=_int_range, metavar='EXPONENTS',
                         help="gamma exponents, e.g. --grid-gamma=-7:7")
        sub.add_argument('--grid-epsilon', type=_float_list, metavar='VALUES',
                         help='epsilon values, e.g. 0,0.5,1')

    ucp = commands.add_parser('ucp', help='compute UCP for each project in a descriptor CSV')
    ucp.add_argument('projects', type=Path)
    ucp.add_argument('--dataset-out', type=Path,
                     help='also write the ucp,effort dataset (requires an effort column)')

    train = commands.add_parser('train', help='select and fit one kernel, then save the model')
    train.add_argument('dataset', type=Path)
    with_grid(train)
    train.add_argument('--param', help='parameter string, e.g. "-s 3 -t 2 -c 20 -g 64 -p 1"')
    train.add_argument('--model', type=Path, help='model file (default: <out>/model_<kernel>.svr)')
    train.add_argument('--out', type=Path)

    search = commands.add_parser('grid-search', help='print validation-error tables')
    search.add_argument('dataset', type=Path)
    with_grid(search)
    search.add_argument('--out', type=Path, help='also write grid_<kernel>.csv files here')

    evaluate = commands.add_parser('evaluate', help='evaluate a saved model on a dataset')
    evaluate.add_argument('model', type=Path)
    evaluate.add_argument('dataset', type=Path)

    predict = commands.add_parser('predict', help='predict effort with a saved model')
    predict.add_argument('model', type=Path)
    source = predict.add_mutually_exclusive_group(required=True)
    source.add_argument('--ucp', type=float)
    source.add_argument('--projects', type=Path)

    report = commands.add_parser('report', help='run the full pipeline and write every artifact')
    report.add_argument('dataset', type=Path)
    with_grid(report)
    report.add_argument('--param', help='parameter string; bypasses grid search')
    report.add_argument('--out', type=Path)

    config = commands.add_parser('config', help='show or change a configuration value')
    config.add_argument('key', help='dotted key, e.g. search.workers')
    config.add_argument('value', nargs='?', help='new value as a toml literal, e.g. 4 or [0, 0.5]')
    return parser


class EstimatorApplication:
    """Holds configuration and services for one command-line invocation."""

    def __init__(self, config_file: Optional[Path] = None):
        self.config_manager = ConfigManager(config_file)
        self.service = EstimationService(self.config_manager)

    def _grid(self, args):
        return self.service.grid(args.grid_gamma, args.grid_epsilon)

    def cmd_ucp(self, args) -> int:
        sized, efforts = self.service.size_projects(args.projects)
        for project, b in sized:
            print(f"{project.name}: UAW={b.uaw:g} UUCW={b.uucw:g} UUCP={b.uucp:g} "
                  f"TCF={format_value(b.tcf)} EF={format_value(b.ef)} UCP={format_value(b.ucp)}")
        if args.dataset_out is not None:
            if efforts is None:
                raise ValidationError(f"{args.projects}: no effort column to build a dataset from")
            self.service.write_effort_dataset(sized, efforts, args.dataset_out)
        return EXIT_OK

    def cmd_train(self, args) -> int:
        param = parse_param_string(args.param) if args.param else None
        if param is None and args.kernel == 'all':
            raise ValidationError("train fits one kernel; choose --kernel linear|poly|rbf|sigmoid")
        family = param.kernel_family if param else kernel_families(args.kernel)[0]
        out = args.out or self.config_manager.get_output_dir()
        model_path = args.model or out / f"model_{family.cli_name}.svr"
        model, test, report = self.service.train(args.dataset, family, model_path, self._grid(args), param)
        if report is not None:
            print(reports.grid_table(report))
        print(render_report_table(test, title=f"{reports.KERNEL_TITLES[family]} kernel, test set"))
        print(f"model saved to {model_path} ({model.support_count} support vectors)")
        return EXIT_OK

    def cmd_grid_search(self, args) -> int:
        results = self.service.grid_search(args.dataset, kernel_families(args.kernel), self._grid(args))
        for family, report in results.items():
            print(reports.grid_table(report))
            print()
            if args.out is not None:
                args.out.mkdir(parents=True, exist_ok=True)
                (args.out / f"grid_{family.cli_name}.csv").write_text(reports.grid_csv(report), encoding='utf-8')
        return EXIT_OK

    def cmd_evaluate(self, args) -> int:
        print(render_report_table(self.service.evaluate(args.model, args.dataset), title=str(args.dataset)))
        return EXIT_OK

    def cmd_predict(self, args) -> int:
        for label, effort in self.service.predict(args.model, args.ucp, args.projects):
            print(f"{label}: {effort!r}")
        return EXIT_OK

    def cmd_report(self, args) -> int:
        param = parse_param_string(args.param) if args.param else None
        manifest, runner = self.service.run_report(
            args.dataset, kernel_families(args.kernel), self._grid(args), args.out, param,
        )
        evaluations = {f: {'train': o.training, 'test': o.test} for f, o in runner.outcomes.items()}
        print(reports.summary_table(evaluations), end='')
        print(f"{len(manifest.artifacts)} artifacts written to {manifest.output_dir}")
        return EXIT_OK

    def cmd_config(self, args) -> int:
        if self.config_manager.get(args.key) is None:
            raise ValidationError(f"unknown configuration key {args.key!r}")
        if args.value is not None:
            self.config_manager.set(args.key, _toml_value(args.value))
            logger.info("saved %s to %s", args.key, self.config_manager.config_file)
        print(f"{args.key} = {toml.dumps({'v': self.config_manager.get(args.key)})[4:].strip()}")
        return EXIT_OK

    def run(self, args) -> int:
        handler = getattr(self, 'cmd_' + args.command.replace('-', '_'))
        return handler(args)


def configure_logging(level: str):
    logging.basicConfig(level=getattr(logging, level), format='%(levelname)s %(name)s: %(message)s')


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one command and map failures to exit codes."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # usage errors share the validation exit code; --help exits 0
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        app = EstimatorApplication(args.config)
        configure_logging('DEBUG' if args.verbose else app.config_manager.get_log_level())
        return app.run(args)
    except EstimationError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
