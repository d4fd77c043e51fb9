"""
Experiment Runner - solve once, compute every condition number, then
re-solve under seeded perturbations and compare errors against the bounds
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import pandas as pd

from ..conditioning import ConditionReport, Selection, condition_report
from ..core import TlsProblem, TlsSolution, solve_tls
from ..exceptions import NotGenericError
from ..numeric_config import BOUND_SLACK, DEFAULT_GENERICITY_TOL
from ..structured import StructuredConditionReport, structured_condition_report
from .perturbation import PerturbationSpec, TrialResult, perturbed_problem, relative_errors, trial_seed

logger = logging.getLogger(__name__)


@dataclass
class ExperimentRow:
    """One selection: its condition numbers plus the worst case over all trials"""
    selection: Selection
    report: ConditionReport
    structured: Optional[StructuredConditionReport]
    trials: List[TrialResult] = field(default_factory=list)

    @property
    def label(self) -> str:
        return self.report.label

    def completed(self) -> List[TrialResult]:
        return [t for t in self.trials if not t.failed]

    @property
    def failed_trials(self) -> int:
        return sum(1 for t in self.trials if t.failed)

    def worst(self, measure: str) -> Optional[float]:
        values = [getattr(t, measure) for t in self.completed()]
        return max(values) if values else None

    def satisfied_fraction(self, flag: str) -> Optional[float]:
        flags = [getattr(t, flag) for t in self.completed()]
        flags = [f for f in flags if f is not None]
        return sum(flags) / len(flags) if flags else None

    def summary(self) -> dict:
        row = self.report.to_dict()
        if self.structured is not None:
            row.update({k: v for k, v in self.structured.to_dict().items() if k not in ('label', 'k')})
        row.update({
            'r2_rel': self.worst('r2_rel'),
            'rinf_rel': self.worst('rinf_rel'),
            'rc_rel': self.worst('rc_rel'),
            'failed_trials': self.failed_trials,
            'satisfied_2': self.satisfied_fraction('satisfied_2'),
            'satisfied_inf': self.satisfied_fraction('satisfied_inf'),
            'satisfied_c': self.satisfied_fraction('satisfied_c'),
        })
        if self.structured is not None:
            row['satisfied_s_inf'] = self.satisfied_fraction('satisfied_s_inf')
        return row


@dataclass
class ExperimentTable:
    solution: TlsSolution
    spec: PerturbationSpec
    trial_count: int
    rows: List[ExperimentRow]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.summary() for row in self.rows])

    def trials_frame(self) -> pd.DataFrame:
        return pd.DataFrame([t.to_dict() for row in self.rows for t in row.trials])


def _within(error: float, bound: float, slack: float) -> bool:
    return error <= bound * (1.0 + slack)


def _trial_results(trial: int, sol: TlsSolution, rows: Sequence[ExperimentRow],
                   spec: PerturbationSpec, tol: float, slack: float) -> List[TrialResult]:
    eps = spec.epsilon
    try:
        sol_pert = solve_tls(perturbed_problem(sol.problem, spec.with_seed(trial_seed(spec.seed, trial))), tol)
    except NotGenericError as e:
        logger.warning("trial %d: perturbed problem is not generic (%s)", trial, e)
        nan = float('nan')
        return [TrialResult(trial=trial, label=row.label, r2_rel=nan, rinf_rel=nan, rc_rel=nan,
                            bound_2=row.report.cond_rel * eps,
                            bound_inf=row.report.kappa_inf_rel * eps,
                            bound_c=row.report.kappa_c * eps,
                            satisfied_2=False, satisfied_inf=False, satisfied_c=False,
                            error=str(e))
                for row in rows]

    results = []
    for row in rows:
        report = row.report
        r2, rinf, rc = relative_errors(sol, sol_pert, row.selection)
        bound_s_inf = satisfied_s_inf = None
        if row.structured is not None:
            bound_s_inf = row.structured.kappa_s_inf_rel * eps
            satisfied_s_inf = _within(rinf, bound_s_inf, slack)
        results.append(TrialResult(
            trial=trial,
            label=report.label,
            r2_rel=r2,
            rinf_rel=rinf,
            rc_rel=rc,
            bound_2=report.cond_rel * eps,
            bound_inf=report.kappa_inf_rel * eps,
            bound_c=report.kappa_c * eps,
            bound_s_inf=bound_s_inf,
            satisfied_2=_within(r2, report.cond_rel * eps, slack),
            satisfied_inf=_within(rinf, report.kappa_inf_rel * eps, slack),
            satisfied_c=_within(rc, report.kappa_c * eps, slack),
            satisfied_s_inf=satisfied_s_inf,
        ))
    return results


def run_experiment(problem: TlsProblem, selections: Optional[Sequence[Selection]] = None,
                   spec: PerturbationSpec = None, trials: int = 1,
                   tol: float = DEFAULT_GENERICITY_TOL, workers: int = 1,
                   slack: float = BOUND_SLACK) -> ExperimentTable:
    """
    Run the perturbation experiment for every selection.

    Args:
        problem: generic TLS problem
        selections: selections L; the standard set {I, [e₁ e₂]⊤, e_max, e_min} when None
        spec: perturbation size, base seed and optional structure
        trials: number of perturbation draws, at least 1
        tol: genericity tolerance for every solve
        workers: threads used for the trials; results keep trial order
        slack: relative slack on the first-order bounds

    Returns:
        ExperimentTable

    Raises:
        NotGenericError: if the unperturbed problem is not generic
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    spec = spec or PerturbationSpec()

    sol = solve_tls(problem, tol)
    if selections is None:
        selections = Selection.standard_set(sol.x)

    rows = []
    for selection in selections:
        report = condition_report(sol, selection)
        structured = None
        if spec.structured is not None:
            structured = structured_condition_report(sol, selection, spec.structured, spec.coordinates)
        rows.append(ExperimentRow(selection=selection, report=report, structured=structured))

    def one_trial(t: int) -> List[TrialResult]:
        return _trial_results(t, sol, rows, spec, tol, slack)

    if workers == 1:
        per_trial = [one_trial(t) for t in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            per_trial = list(executor.map(one_trial, range(trials)))

    for results in per_trial:
        for row, result in zip(rows, results):
            row.trials.append(result)

    failed = sum(1 for results in per_trial if results and results[0].failed)
    if failed:
        logger.warning("%d of %d trials produced a non-generic perturbed problem", failed, trials)
    logger.debug("experiment finished: %d selections x %d trials", len(rows), trials)
    return ExperimentTable(solution=sol, spec=spec, trial_count=trials, rows=rows)
