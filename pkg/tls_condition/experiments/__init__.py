from .examples import make_example1, make_example2, make_example3, gaussian_kernel_column
from .perturbation import (
    PerturbationSpec, TrialResult, trial_seed, open_uniform,
    gen_perturbation, perturbed_problem, relative_errors
)
from .runner import ExperimentRow, ExperimentTable, run_experiment

__all__ = [
    'make_example1', 'make_example2', 'make_example3', 'gaussian_kernel_column',
    'PerturbationSpec', 'TrialResult', 'trial_seed', 'open_uniform',
    'gen_perturbation', 'perturbed_problem', 'relative_errors',
    'ExperimentRow', 'ExperimentTable', 'run_experiment'
]
