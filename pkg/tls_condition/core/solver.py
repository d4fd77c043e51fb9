"""
Solver - classical SVD solution of the TLS problem and the P⁻¹ factorization
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..exceptions import DimensionMismatchError, NotGenericError
from ..numeric_config import DEFAULT_GENERICITY_TOL
from .problem import TlsProblem
from .svd import SvdBundle, compute_svd_bundle

logger = logging.getLogger(__name__)


class PInverseMethod(Enum):
    """How P⁻¹ = (A⊤A − σ_{n+1}² I)⁻¹ is applied"""
    FACTORED = "FACTORED"    # Q₁ Q Q₁ with Q = V₁₁ D⁻¹ V₁₁⊤
    SPECTRAL = "SPECTRAL"    # Ṽ diag(σ̃ᵢ² − σ_{n+1}²)⁻¹ Ṽ⊤


@dataclass(frozen=True)
class GenericityReport:
    """Outcome of the genericity test σ̃_n > σ_{n+1} and v_{n+1,n+1} ≠ 0"""
    sigma_tilde_n: float
    sigma_np1: float
    relative_gap: float
    v_last_last: float
    tol: float
    is_generic: bool

    def __str__(self):
        status = "generic" if self.is_generic else "NOT generic"
        return (f"[{status}] sigma~_n={self.sigma_tilde_n:.3e} "
                f"sigma_n+1={self.sigma_np1:.3e} gap={self.relative_gap:.3e}")


@dataclass(frozen=True, eq=False)
class PInverseFactors:
    """
    Factors of P⁻¹.

    Q1 = I + x x⊤, Q = V₁₁ D⁻¹ V₁₁⊤ and D = σᵢ² − σ_{n+1}² (i ≤ n) give
    P⁻¹ = Q1 Q Q1. D_tilde = σ̃ᵢ² − σ_{n+1}² with the right singular
    vectors of A give the spectral form.
    """
    Q1: np.ndarray
    Q: np.ndarray
    D: np.ndarray
    D_tilde: np.ndarray


@dataclass(frozen=True, eq=False)
class TlsSolution:
    """TLS solution x with everything the condition number formulas reuse"""
    problem: TlsProblem
    x: np.ndarray
    r: np.ndarray
    sigma_np1: float
    svd: SvdBundle
    genericity: GenericityReport
    pinv_factors: PInverseFactors

    @property
    def m(self) -> int:
        return self.problem.m

    @property
    def n(self) -> int:
        return self.problem.n

    @property
    def A(self) -> np.ndarray:
        return self.problem.A

    @property
    def b(self) -> np.ndarray:
        return self.problem.b

    def __str__(self):
        return (f"TlsSolution(n={self.n}, |x|_inf={np.max(np.abs(self.x)):.3e}, "
                f"|r|_2={np.linalg.norm(self.r):.3e}, sigma_n+1={self.sigma_np1:.3e})")


def _genericity_from_bundle(bundle: SvdBundle, tol: float) -> GenericityReport:
    sigma_tilde_1 = float(bundle.sigma_tilde[0])
    sigma_tilde_n = float(bundle.sigma_tilde[-1])
    sigma_np1 = bundle.sigma_np1

    if sigma_tilde_1 > 0:
        relative_gap = (sigma_tilde_n - sigma_np1) / sigma_tilde_1
    else:
        relative_gap = 0.0

    v_last_last = bundle.v_last_last
    is_generic = relative_gap > tol and abs(v_last_last) > tol

    return GenericityReport(
        sigma_tilde_n=sigma_tilde_n,
        sigma_np1=sigma_np1,
        relative_gap=float(relative_gap),
        v_last_last=v_last_last,
        tol=tol,
        is_generic=bool(is_generic),
    )


def _check_tol(tol: float):
    if not tol > 0:
        raise ValueError(f"Genericity tolerance must be positive, got {tol}")


def check_genericity(problem: TlsProblem, tol: float = DEFAULT_GENERICITY_TOL) -> GenericityReport:
    """
    Test whether the TLS problem has a unique solution.

    Args:
        problem: TLS data
        tol: cutoff on the relative gap (σ̃_n − σ_{n+1})/σ̃₁ and on |v_{n+1,n+1}|

    Returns:
        GenericityReport
    """
    _check_tol(tol)
    return _genericity_from_bundle(compute_svd_bundle(problem), tol)


def solve_tls(problem: TlsProblem, tol: float = DEFAULT_GENERICITY_TOL) -> TlsSolution:
    """
    Solve the TLS problem from the SVD of [A, b].

    x = −v_{n+1}[:n] / v_{n+1,n+1} and r = b − A x.

    Args:
        problem: TLS data
        tol: genericity tolerance

    Returns:
        TlsSolution with both SVDs and the P⁻¹ factors populated

    Raises:
        NotGenericError: if the problem is not generic at `tol`
    """
    _check_tol(tol)
    bundle = compute_svd_bundle(problem)
    report = _genericity_from_bundle(bundle, tol)
    if not report.is_generic:
        raise NotGenericError(f"TLS problem is not generic: {report}", report)

    n = problem.n
    v_last = bundle.v_last
    x = -v_last[:n] / bundle.v_last_last
    r = problem.b - problem.A @ x
    sigma_np1 = bundle.sigma_np1

    D = bundle.sigma_aug[:n] ** 2 - sigma_np1 ** 2
    D_tilde = bundle.sigma_tilde ** 2 - sigma_np1 ** 2
    if np.any(D <= 0) or np.any(D_tilde <= 0):
        raise NotGenericError(
            f"P = A'A - sigma_n+1^2 I is not positive definite (min D={D.min():.3e})", report)

    V11 = bundle.V_aug[:n, :n]
    Q = (V11 / D) @ V11.T
    Q1 = np.eye(n) + np.outer(x, x)

    for arr in (x, r, Q, Q1, D, D_tilde):
        arr.setflags(write=False)

    logger.debug("solved TLS %dx%d: sigma_n+1=%.3e gap=%.3e", problem.m, n,
                 sigma_np1, report.relative_gap)

    return TlsSolution(
        problem=problem,
        x=x,
        r=r,
        sigma_np1=sigma_np1,
        svd=bundle,
        genericity=report,
        pinv_factors=PInverseFactors(Q1=Q1, Q=Q, D=D, D_tilde=D_tilde),
    )


def _divide_rows(y: np.ndarray, d: np.ndarray) -> np.ndarray:
    return y / d.reshape((-1,) + (1,) * (y.ndim - 1))


def apply_p_inverse(sol: TlsSolution, y, method: PInverseMethod = PInverseMethod.SPECTRAL) -> np.ndarray:
    """
    Apply P⁻¹ = (A⊤A − σ_{n+1}² I)⁻¹ to a vector or to the columns of a matrix.

    P is never formed or inverted. FACTORED evaluates Q₁(Q(Q₁ y)); SPECTRAL
    evaluates Ṽ (D̃⁻¹ (Ṽ⊤ y)), which avoids the ‖x‖² growth of Q₁ on
    badly scaled data.

    Args:
        sol: generic TLS solution
        y: array with n rows
        method: evaluation route

    Returns:
        P⁻¹ y with the shape of y
    """
    y = np.asarray(y, dtype=float)
    if y.ndim == 0 or y.shape[0] != sol.n:
        raise DimensionMismatchError("rows of y", sol.n, y.shape[0] if y.ndim else 0)

    factors = sol.pinv_factors
    if method == PInverseMethod.FACTORED:
        return factors.Q1 @ (factors.Q @ (factors.Q1 @ y))

    V_tilde = sol.svd.V_tilde
    return V_tilde @ _divide_rows(V_tilde.T @ y, factors.D_tilde)
