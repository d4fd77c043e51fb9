"""
SVD Bundle - both singular value decompositions used by the TLS formulas
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .problem import TlsProblem

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SvdBundle:
    """
    SVDs of the augmented matrix [A, b] = U Σ V⊤ and of A = Ũ Σ̃ Ṽ⊤.

    The pair (v_{n+1}, u_{n+1}) is sign-normalized so that v_{n+1,n+1} >= 0.
    """
    sigma_aug: np.ndarray      # n+1 values, nonincreasing
    V_aug: np.ndarray          # (n+1)×(n+1)
    U_aug: np.ndarray          # m×m
    sigma_tilde: np.ndarray    # n values, nonincreasing
    V_tilde: np.ndarray        # n×n

    @property
    def n(self) -> int:
        return self.V_tilde.shape[0]

    @property
    def sigma_np1(self) -> float:
        return float(self.sigma_aug[self.n])

    @property
    def v_last(self) -> np.ndarray:
        return self.V_aug[:, self.n]

    @property
    def v_last_last(self) -> float:
        return float(self.V_aug[self.n, self.n])

    @property
    def u_last(self) -> np.ndarray:
        return self.U_aug[:, self.n]


def compute_svd_bundle(problem: TlsProblem) -> SvdBundle:
    """
    Compute the full SVD of [A, b] and the thin SVD of A.

    Args:
        problem: TLS data

    Returns:
        SvdBundle with the sign convention v_{n+1,n+1} >= 0 applied
    """
    n = problem.n
    U, sigma, Vh = scipy.linalg.svd(problem.augmented, full_matrices=True,
                                    lapack_driver='gesvd')
    V = Vh.T.copy()

    # v_{n+1} and u_{n+1} flip together so [A, b] v = σ u still holds
    if V[n, n] < 0:
        V[:, n] *= -1.0
        U[:, n] *= -1.0

    _, sigma_tilde, Vh_tilde = scipy.linalg.svd(problem.A, full_matrices=False,
                                                lapack_driver='gesvd')

    for arr in (sigma, V, U, sigma_tilde):
        arr.setflags(write=False)
    V_tilde = Vh_tilde.T.copy()
    V_tilde.setflags(write=False)

    logger.debug("sigma_aug=%s sigma_tilde=%s", sigma, sigma_tilde)
    return SvdBundle(sigma_aug=sigma, V_aug=V, U_aug=U,
                     sigma_tilde=sigma_tilde, V_tilde=V_tilde)
