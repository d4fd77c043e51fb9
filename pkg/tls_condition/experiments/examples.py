"""
Example Problems - the three test problems of the numerical experiments

Example 1 is a fixed sparse 9×4 problem, Example 2 a random problem with a
prescribed spectrum and Example 3 a perturbed Toeplitz convolution problem.
"""
import logging
import math

import numpy as np
import scipy.linalg

from ..core import TlsProblem
from ..numeric_config import get_example_defaults
from ..structured import assemble, decompose, toeplitz_structure

logger = logging.getLogger(__name__)

EXAMPLE1 = get_example_defaults('example1')
EXAMPLE2 = get_example_defaults('example2')
EXAMPLE3 = get_example_defaults('example3')


def make_example1(delta: float = EXAMPLE1['delta']) -> TlsProblem:
    """
    9×4 problem with a₁₁ = a₃₂ = δ, a₇₃ = a₉₄ = 1 and b = ones.

    Its solution grows like 1/δ while the mixed and componentwise
    condition numbers stay fixed.
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    A = np.zeros((9, 4))
    A[0, 0] = delta
    A[2, 1] = delta
    A[6, 2] = 1.0
    A[8, 3] = 1.0
    return TlsProblem(A, np.ones(9))


def _householder(v: np.ndarray) -> np.ndarray:
    return np.eye(v.shape[0]) - 2.0 * np.outer(v, v)


def _random_unit_vector(rng: np.random.Generator, size: int) -> np.ndarray:
    v = rng.standard_normal(size)
    return v / np.linalg.norm(v)


def make_example2(e_p: float = EXAMPLE2['e_p'], m: int = EXAMPLE2['m'], n: int = EXAMPLE2['n'],
                  seed: int = 0) -> TlsProblem:
    """
    Random problem [A, b] = Y [D; 0] Z⊤ with singular values n, …, 1, 1 − e_p.

    Y = I − 2yy⊤ and Z = I − 2zz⊤ for seeded random unit vectors y, z.
    Smaller e_p closes the gap between σ̃_n and σ_{n+1}; e_p = 1 gives a
    consistent system.

    Args:
        e_p: distance of the smallest singular value below 1
        m: rows, m > n + 1
        n: columns of A
        seed: generator seed
    """
    if not e_p > 0:
        raise ValueError(f"e_p must be positive, got {e_p}")
    if n < 1 or m <= n + 1:
        raise ValueError(f"Example 2 needs m > n + 1 >= 2, got m={m}, n={n}")

    rng = np.random.Generator(np.random.PCG64(seed))
    Y = _householder(_random_unit_vector(rng, m))
    Z = _householder(_random_unit_vector(rng, n + 1))
    d = np.append(np.arange(n, 0, -1, dtype=float), 1.0 - e_p)

    C = (Y[:, :n + 1] * d) @ Z.T
    logger.debug("example2: m=%d n=%d e_p=%.1e seed=%d", m, n, e_p, seed)
    return TlsProblem(C[:, :n], C[:, n])


def gaussian_kernel_column(alpha: float, omega: int, m: int) -> np.ndarray:
    """First column of the convolution matrix: a sampled Gaussian over 2ω+1 rows"""
    i = np.arange(1, 2 * omega + 2)
    column = np.zeros(m)
    column[:2 * omega + 1] = np.exp(-((omega - i + 1) ** 2) / (2.0 * alpha ** 2)) / math.sqrt(2.0 * math.pi * alpha ** 2)
    return column


def make_example3(alpha: float = EXAMPLE3['alpha'], omega: int = EXAMPLE3['omega'],
                  m: int = EXAMPLE3['m'], gamma: float = EXAMPLE3['gamma'], seed: int = 0):
    """
    Perturbed m×(m−2ω) Toeplitz convolution problem.

    Ā has a Gaussian kernel in its first column and a zero first row apart
    from a₁₁; b̄ = ones. A = Ā + E and b = b̄ + e where E is a random Toeplitz
    matrix over all m + n − 1 diagonals and e a random vector, scaled so that
    ‖E‖₂/‖Ā‖₂ = ‖e‖₂/‖b̄‖₂ = γ.

    Returns:
        Tuple (problem, toeplitz structure, coordinates of A)
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    if omega < 1 or m <= 2 * omega:
        raise ValueError(f"Example 3 needs m > 2*omega >= 2, got m={m}, omega={omega}")
    n = m - 2 * omega

    column = gaussian_kernel_column(alpha, omega, m)
    row = np.zeros(n)
    row[0] = column[0]
    A_bar = scipy.linalg.toeplitz(column, row)
    b_bar = np.ones(m)

    structure = toeplitz_structure(m, n)
    rng = np.random.Generator(np.random.PCG64(seed))

    # E spans all m + n − 1 diagonals
    E = assemble(structure, rng.standard_normal(structure.q))
    e = rng.standard_normal(m)

    if gamma > 0:
        E *= gamma * np.linalg.norm(A_bar, 2) / np.linalg.norm(E, 2)
        e *= gamma * np.linalg.norm(b_bar) / np.linalg.norm(e)
    else:
        E[:] = 0.0
        e[:] = 0.0

    A = A_bar + E
    problem = TlsProblem(A, b_bar + e)
    logger.debug("example3: %dx%d alpha=%.2f omega=%d gamma=%.1e seed=%d",
                 m, n, alpha, omega, gamma, seed)
    return problem, structure, decompose(structure, A)
