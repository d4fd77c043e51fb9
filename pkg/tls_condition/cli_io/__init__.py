from .run_config import RunConfig, COMMANDS
from .matrix_market import (
    read_matrix_market, read_vector, load_problem, load_structure, write_problem, write_vector
)
from .reports import build_report, format_table, format_solution, report_frame, to_json, to_csv, json_number
from .commands import RunResult, run, exit_code_for, build_problem, parse_selections

__all__ = [
    'RunConfig', 'COMMANDS',
    'read_matrix_market', 'read_vector', 'load_problem', 'load_structure',
    'write_problem', 'write_vector',
    'build_report', 'format_table', 'format_solution', 'report_frame', 'to_json', 'to_csv',
    'json_number',
    'RunResult', 'run', 'exit_code_for', 'build_problem', 'parse_selections'
]
