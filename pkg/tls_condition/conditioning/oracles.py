"""
Oracles - explicit Kronecker-matrix formulas used to cross-check the
Kronecker-free condition numbers on small instances
"""
import logging

import numpy as np

from ..core import TlsSolution, apply_p_inverse
from ..exceptions import OracleRefusedError
from ..numeric_config import ORACLE_SIZE_CAP
from .condition_numbers import componentwise_max
from .selection import Selection
from .sensitivity import build_sensitivity_core

logger = logging.getLogger(__name__)


def check_oracle_size(entries: int, size_cap: int, what: str):
    if entries > size_cap:
        raise OracleRefusedError(
            f"{what} would hold {entries} entries, above the oracle cap of {size_cap}")


def vec(A: np.ndarray) -> np.ndarray:
    """Stack the columns of A into one vector"""
    return np.asarray(A).ravel(order='F')


def explicit_sensitivity(sol: TlsSolution, selection: Selection, size_cap: int = ORACLE_SIZE_CAP):
    """
    Form L𝓝 (k×mn) and L𝓗 (k×m) explicitly.

    𝓝 = P⁻¹[I_n ⊗ r⊤ − x⊤ ⊗ W] and 𝓗 = P⁻¹ W, columns of 𝓝 ordered like vec(A).

    Returns:
        Tuple (LN, LH)
    """
    m, n = sol.m, sol.n
    check_oracle_size(n * n * m, size_cap, "the Kronecker matrix N")
    core = build_sensitivity_core(sol, selection)
    kron_part = np.kron(np.eye(n), sol.r[np.newaxis, :]) - np.kron(sol.x[np.newaxis, :], core.W)
    return core.Z1 @ kron_part, core.Z2


def zhou_oracle(sol: TlsSolution, size_cap: int = ORACLE_SIZE_CAP):
    """
    Relative mixed and componentwise condition numbers m(A, b) and c(A, b) of x.

    Builds the explicit matrices
        M = [P⁻¹ ⊗ b⊤ − x⊤ ⊗ (P⁻¹A⊤) − P⁻¹ ⊗ (Ax)⊤,  P⁻¹A⊤]
        N = 2 σ_{n+1} P⁻¹ x (v_{n+1}⊤ ⊗ u_{n+1}⊤)
    and evaluates |M + N| [vec(|A|); |b|].

    Args:
        sol: generic TLS solution
        size_cap: largest number of entries of M allowed

    Returns:
        Tuple (m_ab, c_ab)
    """
    m, n = sol.m, sol.n
    check_oracle_size(n * m * (n + 1), size_cap, "the Kronecker matrix M")

    A, b, x = sol.A, sol.b, sol.x
    P_inv = apply_p_inverse(sol, np.eye(n))
    P_inv_At = P_inv @ A.T

    M = np.hstack([
        np.kron(P_inv, b[np.newaxis, :])
        - np.kron(x[np.newaxis, :], P_inv_At)
        - np.kron(P_inv, (A @ x)[np.newaxis, :]),
        P_inv_At,
    ])
    svd = sol.svd
    N = 2.0 * sol.sigma_np1 * np.outer(P_inv @ x, np.kron(svd.v_last, svd.u_last))

    data = np.concatenate([vec(np.abs(A)), np.abs(b)])
    numerator = np.abs(M + N) @ data

    m_ab = float(np.max(numerator)) / float(np.max(np.abs(x)))
    c_ab = componentwise_max(numerator, x)
    logger.debug("zhou oracle: m(A,b)=%.6e c(A,b)=%.6e", m_ab, c_ab)
    return m_ab, c_ab
