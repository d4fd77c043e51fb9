"""
Numeric Configuration - tolerances, defaults and exit codes
"""
import os

TOLERANCES = {
    # (σ̃_n − σ_{n+1}) / σ̃_1 and |v_{n+1,n+1}| must both exceed this
    'GENERICITY': 1e-12,
    # ‖A − Σ aᵢSᵢ‖_F / ‖A‖_F accepted by decompose
    'DECOMPOSE': 1e-12,
    # relative cutoff on the Gram matrix eigenvalues of a structure basis
    'BASIS_RANK': 1e-10,
}

DEFAULT_GENERICITY_TOL = TOLERANCES['GENERICITY']
DEFAULT_DECOMPOSE_TOL = TOLERANCES['DECOMPOSE']

# Entry count of the explicit Kronecker matrices an oracle may form
ORACLE_SIZE_CAP = 10**6

PERTURBATION_DEFAULTS = {
    'epsilon': 1e-8,
    'trials': 1,
    'bound_slack': 0.1,
}

DEFAULT_EPSILON = PERTURBATION_DEFAULTS['epsilon']
DEFAULT_TRIALS = PERTURBATION_DEFAULTS['trials']
BOUND_SLACK = PERTURBATION_DEFAULTS['bound_slack']

EXAMPLE_DEFAULTS = {
    'example1': {'delta': 1e-3},
    'example2': {'e_p': 1e-4, 'm': 100, 'n': 20},
    'example3': {'alpha': 1.25, 'omega': 8, 'm': 200, 'gamma': 1e-3},
}

SEED_ENV_VAR = 'TLS_CONDITION_SEED'
DEFAULT_SEED = 2024

REPORT_SCHEMA_VERSION = '1.0'
OUTPUT_FORMATS = ('table', 'json', 'csv')

EXIT_CODES = {
    'OK': 0,
    'ERROR': 1,
    'USAGE': 2,
    'PARSE': 3,
    'DIMENSION': 4,
    'NOT_GENERIC': 5,
    'SELECTION_NULL': 6,
    'NOT_IN_SUBSPACE': 7,
    'ORACLE_REFUSED': 8,
}


def get_default_seed() -> int:
    """Seed from the environment variable, falling back to DEFAULT_SEED."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    try:
        return int(raw.strip(), 0)
    except ValueError:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}")


def get_example_defaults(name: str) -> dict:
    name = name.lower()
    if name not in EXAMPLE_DEFAULTS:
        raise ValueError(f"Unknown example: {name}")
    return dict(EXAMPLE_DEFAULTS[name])
