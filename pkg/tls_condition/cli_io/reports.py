"""
Reports - tables, JSON and CSV output of solve, condition and experiment runs
"""
import json
import math
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from tabulate import tabulate

from ..conditioning import ConditionReport
from ..core import TlsSolution
from ..numeric_config import REPORT_SCHEMA_VERSION
from ..structured import StructuredConditionReport

# Column order of the condition number tables, errors next to the quantity they bound
TABLE_COLUMNS = [
    ('label', 'L'),
    ('cond_rel', 'cond_rel'),
    ('r2_rel', 'r2_rel'),
    ('kappa_inf_rel', 'k_inf_rel'),
    ('rinf_rel', 'rinf_rel'),
    ('kappa_c', 'k_c'),
    ('rc_rel', 'rc_rel'),
    ('kappa_inf_upper', 'k_inf_U'),
    ('kappa_c_upper', 'k_c_U'),
    ('kappa2_bound', 'k2_bound'),
    ('kappa_s_inf_rel', 'ks_inf_rel'),
    ('kappa_s_c', 'ks_c'),
    ('kappa_s2_bound', 'ks2_bound'),
    ('failed_trials', 'failed'),
]


def json_number(value):
    """Finite floats pass through, ±inf becomes "inf"/"-inf" and NaN becomes null"""
    if value is None:
        return None
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    if math.isnan(value):
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _clean(record: Dict) -> Dict:
    return {k: (v if isinstance(v, str) else json_number(v)) for k, v in record.items()}


def solution_record(sol: TlsSolution) -> Dict:
    g = sol.genericity
    return {
        'm': sol.m,
        'n': sol.n,
        'x': [json_number(v) for v in sol.x],
        'residual_norm': json_number(np.linalg.norm(sol.r)),
        'sigma_np1': json_number(sol.sigma_np1),
        'genericity': _clean({
            'sigma_tilde_n': g.sigma_tilde_n,
            'sigma_np1': g.sigma_np1,
            'relative_gap': g.relative_gap,
            'v_last_last': g.v_last_last,
            'tol': g.tol,
            'is_generic': g.is_generic,
        }),
    }


def build_report(command: str, sol: TlsSolution,
                 conditions: Optional[List[ConditionReport]] = None,
                 structured: Optional[List[StructuredConditionReport]] = None,
                 experiment=None, structure_name: Optional[str] = None) -> Dict:
    """Versioned JSON-ready report; see docs/report_schema.json"""
    report = {
        'schema_version': REPORT_SCHEMA_VERSION,
        'command': command,
        'solution': solution_record(sol),
    }
    if conditions is not None:
        report['conditions'] = [_clean(c.to_dict()) for c in conditions]
    if structured is not None:
        report['structure'] = structure_name
        report['structured_conditions'] = [_clean(s.to_dict()) for s in structured]
    if experiment is not None:
        report['experiment'] = {
            'epsilon': experiment.spec.epsilon,
            'seed': experiment.spec.seed,
            'trials': experiment.trial_count,
            'summary': [_clean(row.summary()) for row in experiment.rows],
            'trial_results': [_clean(t.to_dict()) for row in experiment.rows for t in row.trials],
        }
    return report


def _table_view(df: pd.DataFrame) -> pd.DataFrame:
    present = [(key, title) for key, title in TABLE_COLUMNS if key in df.columns]
    return df[[key for key, _ in present]].rename(columns=dict(present))


def format_table(df: pd.DataFrame) -> str:
    """Grid table, numbers as 3 significant digits (8.43e+00)"""
    return tabulate(_table_view(df), headers='keys', tablefmt='grid', floatfmt='.2e', showindex=False)


def format_solution(sol: TlsSolution) -> str:
    rows = [[i + 1, value] for i, value in enumerate(sol.x)]
    lines = [
        tabulate(rows, headers=['i', 'x_i'], tablefmt='simple', floatfmt='.6e'),
        "",
        f"sigma_n+1 = {sol.sigma_np1:.6e}   |r|_2 = {np.linalg.norm(sol.r):.6e}",
        str(sol.genericity),
    ]
    return "\n".join(lines)


def to_json(report: Dict) -> str:
    return json.dumps(report, indent=2)


def to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False)


def report_frame(report: Dict) -> pd.DataFrame:
    """Flat rows of a report for the CSV and table outputs"""
    if 'experiment' in report:
        return pd.DataFrame(report['experiment']['summary'])
    if 'conditions' in report:
        df = pd.DataFrame(report['conditions'])
        if 'structured_conditions' in report:
            sdf = pd.DataFrame(report['structured_conditions']).drop(columns=['label', 'k'])
            df = pd.concat([df, sdf], axis=1)
        return df
    sol = report['solution']
    return pd.DataFrame({'i': range(1, sol['n'] + 1), 'x': sol['x']})
