"""
Commands - run one configured CLI invocation and map failures to exit codes
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..conditioning import Selection, condition_report
from ..core import TlsProblem, solve_tls
from ..exceptions import (DimensionMismatchError, NotGenericError, NotInSubspaceError,
                          OracleRefusedError, ProblemParseError, SelectionNullSolutionError,
                          StructureError, TlsError)
from ..experiments import PerturbationSpec, make_example1, make_example2, make_example3, run_experiment
from ..numeric_config import EXIT_CODES, get_example_defaults
from ..structured import LinearStructure, StructuredCoordinates, decompose, structured_condition_report
from .matrix_market import load_problem, load_structure, write_problem
from .reports import build_report, format_solution, format_table, report_frame, to_csv, to_json
from .run_config import RunConfig

logger = logging.getLogger(__name__)

# Most specific first: several of these also derive from ValueError
ERROR_EXIT_CODES = [
    (ProblemParseError, 'PARSE'),
    (DimensionMismatchError, 'DIMENSION'),
    (NotGenericError, 'NOT_GENERIC'),
    (SelectionNullSolutionError, 'SELECTION_NULL'),
    (NotInSubspaceError, 'NOT_IN_SUBSPACE'),
    (OracleRefusedError, 'ORACLE_REFUSED'),
    (StructureError, 'USAGE'),
    (TlsError, 'ERROR'),
    (ValueError, 'USAGE'),
    (IndexError, 'USAGE'),
    (OSError, 'ERROR'),
]


@dataclass
class RunResult:
    exit_code: int
    report: Optional[Dict] = None
    text: str = ""
    paths: List[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_CODES['OK']


def exit_code_for(error: Exception) -> int:
    for cls, name in ERROR_EXIT_CODES:
        if isinstance(error, cls):
            return EXIT_CODES[name]
    return EXIT_CODES['ERROR']


def build_problem(config: RunConfig) -> Tuple[TlsProblem, Optional[LinearStructure], Optional[StructuredCoordinates]]:
    """Problem from files or an example generator, plus the structure when one applies"""
    structure = coords = None
    if config.uses_example:
        params = get_example_defaults(config.example)
        params.update(config.example_params)
        if config.example == 'example1':
            problem = make_example1(**params)
        elif config.example == 'example2':
            problem = make_example2(seed=config.seed, **params)
        else:
            problem, structure, coords = make_example3(seed=config.seed, **params)
    else:
        problem = load_problem(config.matrix, config.vector)

    if config.structure is not None:
        structure = load_structure(config.structure, problem.m, problem.n)
        coords = decompose(structure, problem.A)
    return problem, structure, coords


def parse_selections(specs: List[str], x) -> List[Selection]:
    selections = []
    for spec in specs:
        selections.extend(Selection.parse(spec, x))
    return selections


def _execute(config: RunConfig) -> RunResult:
    problem, structure, coords = build_problem(config)
    logger.info("problem %s", problem)

    if config.command == 'example':
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        matrix_path, vector_path = out / 'A.mtx', out / 'b.txt'
        write_problem(problem, matrix_path, vector_path, sparse=config.example == 'example1')
        paths = [str(matrix_path), str(vector_path)]
        return RunResult(EXIT_CODES['OK'], report={'command': 'example', 'paths': paths},
                         text="wrote " + ", ".join(paths), paths=paths)

    sol = solve_tls(problem, config.tol)

    if config.command == 'solve':
        report = build_report('solve', sol)
        text = format_solution(sol)
    elif config.command == 'experiment':
        selections = parse_selections(config.selections, sol.x)
        spec = PerturbationSpec(epsilon=config.epsilon, seed=config.seed,
                                structured=structure, coordinates=coords)
        table = run_experiment(problem, selections, spec, config.trials,
                               tol=config.tol, workers=config.workers)
        report = build_report('experiment', sol, experiment=table,
                              structure_name=structure.name if structure else None)
        text = format_table(report_frame(report))
    else:
        selections = parse_selections(config.selections, sol.x)
        conditions = [condition_report(sol, s) for s in selections]
        structured = None
        if config.command == 'scond':
            structured = [structured_condition_report(sol, s, structure, coords) for s in selections]
        report = build_report(config.command, sol, conditions=conditions, structured=structured,
                              structure_name=structure.name if structure else None)
        text = format_table(report_frame(report))

    if config.output_format == 'json':
        text = to_json(report)
    elif config.output_format == 'csv':
        text = to_csv(report_frame(report))

    paths = []
    if config.out is not None:
        Path(config.out).write_text(text if text.endswith("\n") else text + "\n")
        paths.append(config.out)
    return RunResult(EXIT_CODES['OK'], report=report, text=text, paths=paths)


def run(config: RunConfig) -> RunResult:
    """
    Execute solve, cond, scond, experiment or example for one configuration.

    Nothing is written when the run fails; the result carries the exit code
    and the error message instead of a report.
    """
    try:
        config.validate()
        return _execute(config)
    except Exception as e:
        code = exit_code_for(e)
        if code == EXIT_CODES['ERROR'] and not isinstance(e, (TlsError, OSError)):
            raise
        logger.error("%s failed: %s", config.command, e)
        return RunResult(code, error=str(e))
