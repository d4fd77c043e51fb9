"""
Perturbation - seeded componentwise perturbations and relative error measures
"""
import logging
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..conditioning import Selection
from ..core import TlsProblem, TlsSolution
from ..exceptions import SelectionNullSolutionError
from ..numeric_config import DEFAULT_EPSILON
from ..structured import LinearStructure, StructuredCoordinates, assemble

logger = logging.getLogger(__name__)

_UNIFORM_BITS = 53


@dataclass(frozen=True, eq=False)
class PerturbationSpec:
    """
    ΔA = ε ΔA₁ ⊙ A and Δb = ε Δb₁ ⊙ b with ΔA₁, Δb₁ uniform on (−1, 1).

    When `structured` is set the coordinates are perturbed instead,
    Δa = ε Δa₁ ⊙ a, and ΔA is assembled from Δa.
    """
    epsilon: float = DEFAULT_EPSILON
    seed: int = 0
    structured: Optional[LinearStructure] = None
    coordinates: Optional[StructuredCoordinates] = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if (self.structured is None) != (self.coordinates is None):
            raise ValueError("structured perturbations need both a structure and coordinates")
        if self.coordinates is not None:
            coordinates = self.coordinates
            if not isinstance(coordinates, StructuredCoordinates):
                coordinates = StructuredCoordinates(coordinates)
            self.structured.check_coordinates(coordinates)
            object.__setattr__(self, 'coordinates', coordinates)

    def with_seed(self, seed: int) -> 'PerturbationSpec':
        return PerturbationSpec(self.epsilon, seed, self.structured, self.coordinates)


@dataclass(frozen=True)
class TrialResult:
    """Relative errors of one perturbed solve for one selection, with ε-scaled bounds"""
    trial: int
    label: str
    r2_rel: float
    rinf_rel: float
    rc_rel: float
    bound_2: float
    bound_inf: float
    bound_c: float
    bound_s_inf: Optional[float] = None
    satisfied_2: bool = True
    satisfied_inf: bool = True
    satisfied_c: bool = True
    satisfied_s_inf: Optional[bool] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    def to_dict(self) -> dict:
        return asdict(self)


def trial_seed(seed: int, trial: int) -> int:
    """Independent 64-bit seed for one trial, split from the base seed"""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def open_uniform(rng: np.random.Generator, shape) -> np.ndarray:
    """Uniform draws on the open interval (−1, 1)"""
    k = rng.integers(0, 2 ** _UNIFORM_BITS, size=shape, dtype=np.int64)
    u = (k + 0.5) / 2.0 ** _UNIFORM_BITS
    return 2.0 * u - 1.0


def gen_perturbation(problem: TlsProblem, spec: PerturbationSpec):
    """
    Draw one componentwise perturbation of (A, b).

    Zero entries of A and b (or of the coordinates a) stay exactly zero.

    Returns:
        Tuple (dA, db)
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    eps = spec.epsilon

    if spec.structured is not None:
        spec.structured.check_shape(problem.m, problem.n)
        a = spec.coordinates.a
        da = eps * open_uniform(rng, a.shape) * a
        dA = assemble(spec.structured, da)
    else:
        dA = eps * open_uniform(rng, problem.A.shape) * problem.A
    db = eps * open_uniform(rng, problem.b.shape) * problem.b
    return dA, db


def perturbed_problem(problem: TlsProblem, spec: PerturbationSpec) -> TlsProblem:
    dA, db = gen_perturbation(problem, spec)
    return TlsProblem(problem.A + dA, problem.b + db)


def relative_errors(sol: TlsSolution, sol_pert: TlsSolution, selection: Selection):
    """
    Normwise, mixed and componentwise relative errors of L·x.

    r_c is max |(LΔx)ᵢ| / |(Lx)ᵢ| over the components with (Lx)ᵢ ≠ 0.

    Returns:
        Tuple (r2, rinf, rc)

    Raises:
        SelectionNullSolutionError: if L x = 0
    """
    selection.check_columns(sol.n)
    Lx = selection.L @ sol.x
    L_dx = selection.L @ (sol_pert.x - sol.x)

    nonzero = Lx != 0
    if not np.any(nonzero):
        raise SelectionNullSolutionError("L x = 0, relative errors are undefined")

    r2 = float(np.linalg.norm(L_dx) / np.linalg.norm(Lx))
    rinf = float(np.max(np.abs(L_dx)) / np.max(np.abs(Lx)))
    rc = float(np.max(np.abs(L_dx[nonzero]) / np.abs(Lx[nonzero])))
    return r2, rinf, rc
