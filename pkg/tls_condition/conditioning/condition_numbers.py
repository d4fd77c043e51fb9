"""
Condition Numbers - normwise, mixed and componentwise conditioning of L·x
"""
import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
import scipy.linalg

from ..core import PInverseMethod, TlsSolution
from ..exceptions import SelectionNullSolutionError
from .selection import Selection
from .sensitivity import SensitivityCore, build_sensitivity_core

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConditionReport:
    """All unstructured condition numbers of L·x for one (L, A, b)"""
    label: str
    k: int
    cond_abs: float
    cond_rel: float
    kappa_inf: float
    kappa_inf_rel: float
    kappa_c: float
    kappa2_bound: float
    kappa_inf_upper: float
    kappa_c_upper: float

    def to_dict(self) -> dict:
        return asdict(self)


def componentwise_max(numerator: np.ndarray, denominator: np.ndarray) -> float:
    """
    ‖D⁺_d · numerator‖∞ with the zero-component convention.

    Components with dᵢ = 0 contribute zero when the numerator is zero too
    and make the result +∞ otherwise.
    """
    numerator = np.asarray(numerator, dtype=float)
    denominator = np.asarray(denominator, dtype=float)
    zero = denominator == 0
    if np.any(numerator[zero] != 0):
        logger.warning("L x has %d zero component(s) with nonzero sensitivity; "
                       "componentwise condition number is infinite", int(zero.sum()))
        return math.inf
    if np.all(zero):
        return 0.0
    return float(np.max(numerator[~zero] / np.abs(denominator[~zero])))


def _selected_solution(sol: TlsSolution, selection: Selection) -> np.ndarray:
    selection.check_columns(sol.n)
    return selection.L @ sol.x


def _nonzero_norm(Lx: np.ndarray, ord, what: str) -> float:
    value = float(np.linalg.norm(Lx, ord))
    if value == 0:
        raise SelectionNullSolutionError(f"L x = 0, {what} is undefined")
    return value


def mixed_sensitivity(sol: TlsSolution, core: SensitivityCore) -> np.ndarray:
    """
    |L𝓝| vec(|A|) + |L𝓗| |b| without forming the k×mn matrix L𝓝.

    Column j of A contributes Σᵢ |a_ij| |Z1[:, j] rᵢ − x_j Z2[:, i]|, summed
    over the nonzero rows of that column only.
    """
    abs_A = np.abs(sol.A)
    r, x = sol.r, sol.x
    total = np.zeros(core.Z1.shape[0])
    for j in range(sol.n):
        rows = np.flatnonzero(abs_A[:, j])
        if rows.size == 0:
            continue
        block = np.outer(core.Z1[:, j], r[rows]) - x[j] * core.Z2[:, rows]
        total += np.abs(block) @ abs_A[rows, j]
    return total + core.H_abs_b


def componentwise_sensitivity(sol: TlsSolution, selection: Selection,
                              method: PInverseMethod = PInverseMethod.SPECTRAL) -> np.ndarray:
    """The k-vector whose ∞-norm is κ∞ (one entry per row of L)"""
    return mixed_sensitivity(sol, build_sensitivity_core(sol, selection, method))


def normwise_cond(sol: TlsSolution, selection: Selection):
    """
    Normwise condition number from the SVDs of A and [A, b].

    cond = √(1 + ‖x‖²) ‖L Ṽ D′ [Ṽ⊤ 0] V [D″ 0]⊤‖₂ with
    D′ = diag(σ̃ᵢ² − σ_{n+1}²)⁻¹ and D″ = diag(σᵢ² + σ_{n+1}²)^{1/2}.

    Returns:
        Tuple (cond_abs, cond_rel), cond_rel = cond_abs ‖[A, b]‖_F / ‖L x‖₂
    """
    Lx = _selected_solution(sol, selection)
    svd = sol.svd
    n = sol.n
    sigma2 = sol.sigma_np1 ** 2

    d_prime = 1.0 / (svd.sigma_tilde ** 2 - sigma2)
    d_second = np.sqrt(svd.sigma_aug[:n] ** 2 + sigma2)

    left = (selection.L @ svd.V_tilde) * d_prime
    right = (svd.V_tilde.T @ svd.V_aug[:n, :n]) * d_second
    spectral = scipy.linalg.svdvals(left @ right)[0]

    cond_abs = math.sqrt(1.0 + float(sol.x @ sol.x)) * float(spectral)
    cond_rel = cond_abs * np.linalg.norm(sol.problem.augmented, 'fro') / _nonzero_norm(Lx, 2, "cond_rel")
    return cond_abs, float(cond_rel)


def mixed_cond(sol: TlsSolution, selection: Selection):
    """
    Mixed condition number κ∞ = ‖|L𝓝| vec(|A|) + |L𝓗| |b|‖∞.

    Returns:
        Tuple (kappa_inf, kappa_inf_rel) with kappa_inf_rel = κ∞ / ‖L x‖∞
    """
    Lx = _selected_solution(sol, selection)
    kappa_inf = float(np.max(componentwise_sensitivity(sol, selection)))
    return kappa_inf, kappa_inf / _nonzero_norm(Lx, np.inf, "kappa_inf_rel")


def comp_cond(sol: TlsSolution, selection: Selection) -> float:
    """Componentwise condition number κ_c = ‖D⁺_{Lx}(|L𝓝| vec(|A|) + |L𝓗| |b|)‖∞"""
    Lx = _selected_solution(sol, selection)
    return componentwise_max(componentwise_sensitivity(sol, selection), Lx)


def two_norm_bound(kappa_inf: float, k: int) -> float:
    """Upper bound √k κ∞ on the condition number with the 2-norm on the solution"""
    if kappa_inf < 0:
        raise ValueError(f"kappa_inf must be nonnegative, got {kappa_inf}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return math.sqrt(k) * kappa_inf


def _upper_bound_terms(sol: TlsSolution, core: SensitivityCore):
    abs_Z1 = np.abs(core.Z1)
    abs_A = np.abs(sol.A)
    t_weight = abs_Z1 @ (np.abs(core.W) @ (abs_A @ np.abs(sol.x)))
    t_residual = abs_Z1 @ (abs_A.T @ np.abs(sol.r))
    return t_weight, t_residual, core.H_abs_b


def upper_bounds(sol: TlsSolution, selection: Selection):
    """
    Kronecker-free upper bounds κ∞ᵁ ≥ κ∞ʳᵉˡ and κ_cᵁ ≥ κ_c.

    Each is the sum of three separately ∞-normed terms built from
    |L P⁻¹| |W| |A| |x|, |L P⁻¹| |A⊤| |r| and |L P⁻¹ W| |b|.

    Returns:
        Tuple (kappa_inf_upper, kappa_c_upper)
    """
    Lx = _selected_solution(sol, selection)
    core = build_sensitivity_core(sol, selection)
    return _upper_bounds_from_core(sol, core, Lx)


def _upper_bounds_from_core(sol: TlsSolution, core: SensitivityCore, Lx: np.ndarray):
    terms = _upper_bound_terms(sol, core)
    inf_norm = _nonzero_norm(Lx, np.inf, "kappa_inf_upper")
    kappa_inf_upper = sum(float(np.max(t)) for t in terms) / inf_norm
    kappa_c_upper = sum(componentwise_max(t, Lx) for t in terms)
    return kappa_inf_upper, kappa_c_upper


def condition_report(sol: TlsSolution, selection: Selection) -> ConditionReport:
    """
    Compute every unstructured condition number for one selection.

    Args:
        sol: generic TLS solution
        selection: L

    Returns:
        ConditionReport
    """
    Lx = _selected_solution(sol, selection)
    core = build_sensitivity_core(sol, selection)

    cond_abs, cond_rel = normwise_cond(sol, selection)
    sensitivity = mixed_sensitivity(sol, core)
    kappa_inf = float(np.max(sensitivity))
    kappa_inf_rel = kappa_inf / _nonzero_norm(Lx, np.inf, "kappa_inf_rel")
    kappa_c = componentwise_max(sensitivity, Lx)
    kappa_inf_upper, kappa_c_upper = _upper_bounds_from_core(sol, core, Lx)

    report = ConditionReport(
        label=selection.label,
        k=selection.k,
        cond_abs=cond_abs,
        cond_rel=cond_rel,
        kappa_inf=kappa_inf,
        kappa_inf_rel=kappa_inf_rel,
        kappa_c=kappa_c,
        kappa2_bound=two_norm_bound(kappa_inf, selection.k),
        kappa_inf_upper=kappa_inf_upper,
        kappa_c_upper=kappa_c_upper,
    )
    logger.debug("condition report %s", report)
    return report
