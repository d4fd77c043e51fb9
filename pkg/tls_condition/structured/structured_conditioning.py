"""
Structured Conditioning - condition numbers of L·x when A stays inside a
linear structure and only its coordinates a (and b) are perturbed
"""
import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from ..conditioning import Selection, build_sensitivity_core, componentwise_max, two_norm_bound
from ..conditioning.oracles import check_oracle_size
from ..conditioning.sensitivity import SensitivityCore
from ..core import TlsSolution, apply_p_inverse
from ..exceptions import (DimensionMismatchError, NotInSubspaceError, OracleRefusedError,
                          SelectionNullSolutionError)
from ..numeric_config import DEFAULT_DECOMPOSE_TOL, ORACLE_SIZE_CAP
from .structure import LinearStructure, StructuredCoordinates, assemble

logger = logging.getLogger(__name__)

# ‖r‖₂ at or below this multiple of ‖[A, b]‖_F counts as a consistent system
CONSISTENT_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class StructuredSensitivity:
    """
    V  = [v₁ … v_q], vᵢ = Sᵢ⊤r − W Sᵢ x     (n×q)
    Ns = L P⁻¹ V = L𝓝_s                     (k×q)
    """
    V: np.ndarray
    Ns: np.ndarray
    core: SensitivityCore


@dataclass(frozen=True)
class StructuredConditionReport:
    label: str
    k: int
    kappa_s_inf: float
    kappa_s_inf_rel: float
    kappa_s_c: float
    kappa_s2_bound: float

    def to_dict(self) -> dict:
        return asdict(self)


def _coordinates(structure: LinearStructure, a) -> StructuredCoordinates:
    if not isinstance(a, StructuredCoordinates):
        a = StructuredCoordinates(a)
    structure.check_coordinates(a)
    return a


def _check_in_structure(sol: TlsSolution, structure: LinearStructure, a: StructuredCoordinates,
                        tol: float = DEFAULT_DECOMPOSE_TOL):
    structure.check_shape(sol.m, sol.n)
    norm_A = np.linalg.norm(sol.A, 'fro')
    residual = np.linalg.norm(sol.A - assemble(structure, a), 'fro')
    relative = residual / norm_A if norm_A > 0 else residual
    if relative > tol:
        raise NotInSubspaceError(float(relative), tol)


def structured_sensitivity(sol: TlsSolution, selection: Selection,
                           structure: LinearStructure) -> StructuredSensitivity:
    """
    Build V and L P⁻¹ V column block by column block of the basis.

    With M_j the rows of M^st holding column j of every Sᵢ,
    S⊤r stacks M_j⊤r over j and S x = Σ_j x_j M_j.
    """
    structure.check_shape(sol.m, sol.n)
    core = build_sensitivity_core(sol, selection)
    x, r = sol.x, sol.r

    STr = np.empty((sol.n, structure.q))
    Sx = np.zeros((sol.m, structure.q))
    for j, M_j in structure.column_blocks():
        STr[j] = M_j.T @ r
        if x[j] != 0:
            Sx += x[j] * M_j.toarray()
    V = STr - core.W @ Sx
    return StructuredSensitivity(V=V, Ns=core.Z1 @ V, core=core)


def structured_frechet(sol: TlsSolution, selection: Selection, structure: LinearStructure,
                       da, db) -> np.ndarray:
    """
    Evaluate J_s(da, db) = L P⁻¹ V da + L P⁻¹ W db.

    Args:
        sol: generic TLS solution
        selection: L
        structure: basis of the matrix subspace holding A
        da: q-vector direction in the coordinates
        db: m-vector direction in b

    Returns:
        k-vector
    """
    da = np.asarray(da, dtype=float).reshape(-1)
    db = np.asarray(db, dtype=float).reshape(-1)
    if da.shape != (structure.q,):
        raise DimensionMismatchError("length of da", structure.q, da.shape[0])
    if db.shape != (sol.m,):
        raise DimensionMismatchError("length of db", sol.m, db.shape[0])
    sens = structured_sensitivity(sol, selection, structure)
    return sens.Ns @ da + sens.core.Z2 @ db


def structured_frechet_adjoint(sol: TlsSolution, selection: Selection,
                               structure: LinearStructure, u):
    """J_s*(u) = (V⊤ P⁻¹ L⊤ u, W⊤ P⁻¹ L⊤ u)"""
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape != (selection.k,):
        raise DimensionMismatchError("length of u", selection.k, u.shape[0])
    sens = structured_sensitivity(sol, selection, structure)
    return sens.Ns.T @ u, sens.core.Z2.T @ u


def _structured_numerator(sol: TlsSolution, sens: StructuredSensitivity,
                          a: StructuredCoordinates) -> np.ndarray:
    return np.abs(sens.Ns) @ np.abs(a.a) + sens.core.H_abs_b


def structured_mixed_cond(sol: TlsSolution, selection: Selection, structure: LinearStructure, a):
    """
    κ_{s,∞} = ‖|L P⁻¹ V| |a| + |L P⁻¹ W| |b|‖∞ and its relative form.

    Returns:
        Tuple (kappa_s_inf, kappa_s_inf_rel)

    Raises:
        SelectionNullSolutionError: if L x = 0
    """
    a = _coordinates(structure, a)
    _check_in_structure(sol, structure, a)
    sens = structured_sensitivity(sol, selection, structure)
    kappa = float(np.max(_structured_numerator(sol, sens, a)))
    norm_Lx = float(np.linalg.norm(selection.L @ sol.x, np.inf))
    if norm_Lx == 0:
        raise SelectionNullSolutionError("L x = 0, kappa_s_inf_rel is undefined")
    return kappa, kappa / norm_Lx


def structured_comp_cond(sol: TlsSolution, selection: Selection, structure: LinearStructure, a) -> float:
    """κ_{s,c} = ‖D⁺_{Lx}(|L P⁻¹ V| |a| + |L P⁻¹ W| |b|)‖∞"""
    a = _coordinates(structure, a)
    _check_in_structure(sol, structure, a)
    sens = structured_sensitivity(sol, selection, structure)
    return componentwise_max(_structured_numerator(sol, sens, a), selection.L @ sol.x)


def structured_condition_report(sol: TlsSolution, selection: Selection, structure: LinearStructure,
                                a) -> StructuredConditionReport:
    a = _coordinates(structure, a)
    _check_in_structure(sol, structure, a)
    sens = structured_sensitivity(sol, selection, structure)
    numerator = _structured_numerator(sol, sens, a)
    Lx = selection.L @ sol.x

    kappa_s_inf = float(np.max(numerator))
    norm_Lx = float(np.linalg.norm(Lx, np.inf))
    if norm_Lx == 0:
        raise SelectionNullSolutionError("L x = 0, kappa_s_inf_rel is undefined")

    report = StructuredConditionReport(
        label=selection.label,
        k=selection.k,
        kappa_s_inf=kappa_s_inf,
        kappa_s_inf_rel=kappa_s_inf / norm_Lx,
        kappa_s_c=componentwise_max(numerator, Lx),
        kappa_s2_bound=two_norm_bound(kappa_s_inf, selection.k),
    )
    logger.debug("structured condition report %s", report)
    return report


def li_jia_oracle(sol: TlsSolution, structure: LinearStructure, a,
                  size_cap: int = ORACLE_SIZE_CAP) -> float:
    """
    Structured mixed condition number m_s(A, b) of x from explicit matrices.

    K = P⁻¹(2 A⊤ r r⊤ G(x) / ‖r‖₂² − A⊤ G(x) + [I_n ⊗ r⊤  0]) with
    G(x) = [x⊤ −1] ⊗ I_m, applied to blockdiag(M^st, I_m).

    Raises:
        OracleRefusedError: for consistent systems (r = 0) or above size_cap
    """
    a = _coordinates(structure, a)
    _check_in_structure(sol, structure, a)
    m, n = sol.m, sol.n
    check_oracle_size(n * m * (n + 1), size_cap, "the Kronecker matrix K")

    A, r, x = sol.A, sol.r, sol.x
    r_norm2 = float(r @ r)
    if math.sqrt(r_norm2) <= CONSISTENT_RESIDUAL_TOL * np.linalg.norm(sol.problem.augmented, 'fro'):
        raise OracleRefusedError("structured mixed oracle needs an inconsistent system (r != 0)")

    x_ext = np.append(x, -1.0)
    K_inner = (2.0 / r_norm2) * np.outer(A.T @ r, np.kron(x_ext, r))
    K_inner -= np.kron(x_ext[np.newaxis, :], A.T)
    K_inner[:, :m * n] += np.kron(np.eye(n), r[np.newaxis, :])
    K = apply_p_inverse(sol, K_inner)

    KM = np.hstack([np.asarray(structure.M_st.T @ K[:, :m * n].T).T, K[:, m * n:]])
    data = np.concatenate([np.abs(a.a), np.abs(sol.b)])
    m_s = float(np.max(np.abs(KM) @ data)) / float(np.max(np.abs(x)))
    logger.debug("structured mixed oracle: m_s=%.6e", m_s)
    return m_s
