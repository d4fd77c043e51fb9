"""
Sensitivity - Fréchet derivative of Ψ(A, b) = L·x and its adjoint
"""
from dataclasses import dataclass

import numpy as np

from ..core import PInverseMethod, TlsSolution, apply_p_inverse
from ..exceptions import DimensionMismatchError
from .selection import Selection


@dataclass(frozen=True, eq=False)
class SensitivityCore:
    """
    Products shared by every unstructured formula.

    W  = A⊤ + 2 x r⊤ / (1 + x⊤x)      (n×m)
    Z1 = L P⁻¹                         (k×n)
    Z2 = L P⁻¹ W = L𝓗                  (k×m)
    H_abs_b = |Z2| |b|                 (k)

    Column (i, j) of L𝓝 is rᵢ Z1[:, j] − x_j Z2[:, i].
    """
    W: np.ndarray
    Z1: np.ndarray
    Z2: np.ndarray
    H_abs_b: np.ndarray


def tls_weight_matrix(sol: TlsSolution) -> np.ndarray:
    """W = A⊤ + 2 x r⊤ / (1 + x⊤x)"""
    x = sol.x
    return sol.A.T + np.outer(2.0 * x, sol.r) / (1.0 + x @ x)


def build_sensitivity_core(sol: TlsSolution, selection: Selection,
                           method: PInverseMethod = PInverseMethod.SPECTRAL) -> SensitivityCore:
    selection.check_columns(sol.n)
    W = tls_weight_matrix(sol)
    # P⁻¹ is symmetric, so L P⁻¹ = (P⁻¹ L⊤)⊤
    Z1 = apply_p_inverse(sol, selection.L.T, method=method).T
    Z2 = Z1 @ W
    H_abs_b = np.abs(Z2) @ np.abs(sol.b)
    return SensitivityCore(W=W, Z1=Z1, Z2=Z2, H_abs_b=H_abs_b)


def _check_data_direction(sol: TlsSolution, dA, db):
    dA = np.asarray(dA, dtype=float)
    db = np.asarray(db, dtype=float).reshape(-1)
    if dA.shape != (sol.m, sol.n):
        raise DimensionMismatchError("shape of dA", (sol.m, sol.n), dA.shape)
    if db.shape != (sol.m,):
        raise DimensionMismatchError("length of db", sol.m, db.shape[0])
    return dA, db


def frechet_apply(sol: TlsSolution, selection: Selection, dA, db) -> np.ndarray:
    """
    Evaluate J(dA, db) = L P⁻¹[(dA)⊤ r − W dA x] + L P⁻¹ W db.

    Args:
        sol: generic TLS solution
        selection: L
        dA: m×n direction in A
        db: m-vector direction in b

    Returns:
        k-vector, the first-order change of L·x
    """
    selection.check_columns(sol.n)
    dA, db = _check_data_direction(sol, dA, db)
    W = tls_weight_matrix(sol)
    inner = dA.T @ sol.r - W @ (dA @ sol.x) + W @ db
    return selection.L @ apply_p_inverse(sol, inner)


def frechet_adjoint(sol: TlsSolution, selection: Selection, u):
    """
    Evaluate J*(u) = (r u⊤ L P⁻¹ − W⊤ P⁻¹ L⊤ u x⊤,  W⊤ P⁻¹ L⊤ u).

    Args:
        sol: generic TLS solution
        selection: L
        u: k-vector

    Returns:
        Tuple (m×n matrix, m-vector) paired with (dA, db) by the trace inner product
    """
    selection.check_columns(sol.n)
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape != (selection.k,):
        raise DimensionMismatchError("length of u", selection.k, u.shape[0])
    g = apply_p_inverse(sol, selection.L.T @ u)
    Wg = tls_weight_matrix(sol).T @ g
    adj_A = np.outer(sol.r, g) - np.outer(Wg, sol.x)
    return adj_A, Wg
