"""
Linear Structure - a matrix subspace spanned by a basis {S₁, …, S_q}
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse

from ..exceptions import DimensionMismatchError, NotInSubspaceError, StructureError
from ..numeric_config import DEFAULT_DECOMPOSE_TOL, TOLERANCES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StructuredCoordinates:
    """Coordinates a with A = Σ aᵢ Sᵢ"""
    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float).reshape(-1)
        if not np.all(np.isfinite(a)):
            raise ValueError("Structured coordinates must be finite")
        a.setflags(write=False)
        object.__setattr__(self, 'a', a)

    @property
    def q(self) -> int:
        return self.a.shape[0]


def _vectorized_basis(basis: Sequence[scipy.sparse.spmatrix], m: int) -> scipy.sparse.csr_matrix:
    """M^st = [vec(S₁) … vec(S_q)] as an mn×q sparse matrix (column-major vec)"""
    rows, cols, vals = [], [], []
    for idx, S in enumerate(basis):
        coo = S.tocoo()
        rows.append(coo.col.astype(np.int64) * m + coo.row)
        cols.append(np.full(coo.nnz, idx, dtype=np.int64))
        vals.append(coo.data)
    m_times_n = m * basis[0].shape[1]
    return scipy.sparse.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(m_times_n, len(basis)))


def _has_disjoint_supports(M_st: scipy.sparse.csr_matrix) -> bool:
    """True when no entry position is covered by two basis matrices"""
    support = abs(M_st) > 0
    return int(support.sum(axis=1).max()) <= 1


@dataclass(frozen=True, eq=False)
class LinearStructure:
    """
    Basis S₁, …, S_q (each m×n, stored sparse) of a linear matrix subspace.

    abs_additive asserts |A| = Σ|aᵢ||Sᵢ| for every A in the subspace; it is
    verified through pairwise disjoint supports. Pass None to detect it.
    """
    basis: Tuple[scipy.sparse.csr_matrix, ...]
    name: str = "custom"
    abs_additive: Optional[bool] = None
    M_st: scipy.sparse.csr_matrix = field(init=False, repr=False)
    _gram_diagonal: Optional[np.ndarray] = field(init=False, repr=False)
    _gram_factor: Optional[tuple] = field(init=False, repr=False)

    def __post_init__(self):
        basis = tuple(scipy.sparse.csr_matrix(S, dtype=float) for S in self.basis)
        if not basis:
            raise StructureError("Structure basis must contain at least one matrix")
        shape = basis[0].shape
        for idx, S in enumerate(basis):
            if S.shape != shape:
                raise StructureError(f"Basis matrix {idx + 1} has shape {S.shape}, expected {shape}")
            if S.nnz == 0 or not np.all(np.isfinite(S.data)):
                raise StructureError(f"Basis matrix {idx + 1} is zero or not finite")

        M_st = _vectorized_basis(basis, shape[0])
        disjoint = _has_disjoint_supports(M_st)
        if disjoint:
            # disjoint supports give a diagonal Gram matrix
            gram_diagonal = np.asarray(M_st.multiply(M_st).sum(axis=0)).reshape(-1)
            if np.any(gram_diagonal == 0):
                raise StructureError("Structure basis contains a matrix with only explicit zeros")
            gram_factor = None
        else:
            gram = (M_st.T @ M_st).toarray()
            eigenvalues = scipy.linalg.eigvalsh(gram)
            if eigenvalues[0] <= TOLERANCES['BASIS_RANK'] * eigenvalues[-1]:
                raise StructureError("Structure basis matrices are linearly dependent")
            gram_diagonal = None
            gram_factor = scipy.linalg.cho_factor(gram)

        abs_additive = self.abs_additive
        if abs_additive is None:
            abs_additive = disjoint
        elif abs_additive and not disjoint:
            raise StructureError("abs_additive requires pairwise disjoint basis supports")

        object.__setattr__(self, 'basis', basis)
        object.__setattr__(self, 'abs_additive', bool(abs_additive))
        object.__setattr__(self, 'M_st', M_st)
        object.__setattr__(self, '_gram_diagonal', gram_diagonal)
        object.__setattr__(self, '_gram_factor', gram_factor)

    @property
    def q(self) -> int:
        return len(self.basis)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.basis[0].shape

    def check_shape(self, m: int, n: int):
        if self.shape != (m, n):
            raise DimensionMismatchError("structure shape", (m, n), self.shape)

    def solve_gram(self, rhs: np.ndarray) -> np.ndarray:
        """Solve (M^st)⊤ M^st a = rhs"""
        if self._gram_diagonal is not None:
            return rhs / self._gram_diagonal
        return scipy.linalg.cho_solve(self._gram_factor, rhs)

    def check_coordinates(self, coords: StructuredCoordinates):
        if coords.q != self.q:
            raise DimensionMismatchError("number of structured coordinates", self.q, coords.q)

    def column_blocks(self):
        """Yield (j, M_j) where M_j holds row j-blocks of M^st, i.e. column j of every Sᵢ"""
        m, n = self.shape
        for j in range(n):
            yield j, self.M_st[j * m:(j + 1) * m, :]

    def __str__(self):
        m, n = self.shape
        flag = ", abs-additive" if self.abs_additive else ""
        return f"{self.name} structure ({m}x{n}, q={self.q}{flag})"


def toeplitz_structure(m: int, n: int) -> LinearStructure:
    """
    Toeplitz basis with q = m + n − 1 single-diagonal matrices.

    S₁ … S_n run from the top-right corner diagonal to the main diagonal,
    S_{n+1} … S_{m+n−1} from the first subdiagonal down to the bottom-left corner.
    """
    if m < 1 or n < 1:
        raise ValueError(f"Toeplitz dimensions must be positive, got {m}x{n}")
    offsets = [n - i for i in range(1, n + 1)] + [-i for i in range(1, m)]
    basis = [scipy.sparse.eye(m, n, k=offset, format='csr') for offset in offsets]
    return LinearStructure(basis=tuple(basis), name="toeplitz", abs_additive=True)


def full_structure(m: int, n: int) -> LinearStructure:
    """All eᵢe_j⊤ in vec order, i.e. no structure at all"""
    basis = []
    for j in range(n):
        for i in range(m):
            basis.append(scipy.sparse.csr_matrix(([1.0], ([i], [j])), shape=(m, n)))
    return LinearStructure(basis=tuple(basis), name="full", abs_additive=True)


def diagonal_structure(m: int, n: int) -> LinearStructure:
    """eᵢeᵢ⊤ for i < min(m, n)"""
    basis = [scipy.sparse.csr_matrix(([1.0], ([i], [i])), shape=(m, n)) for i in range(min(m, n))]
    return LinearStructure(basis=tuple(basis), name="diagonal", abs_additive=True)


def assemble(structure: LinearStructure, coords) -> np.ndarray:
    """Σ aᵢ Sᵢ as a dense m×n matrix"""
    if not isinstance(coords, StructuredCoordinates):
        coords = StructuredCoordinates(coords)
    structure.check_coordinates(coords)
    m, n = structure.shape
    return np.asarray(structure.M_st @ coords.a).reshape((m, n), order='F')


def decompose(structure: LinearStructure, A, tol: float = DEFAULT_DECOMPOSE_TOL) -> StructuredCoordinates:
    """
    Coordinates of A in the structure basis by a least-squares fit.

    Args:
        structure: basis
        A: m×n matrix expected to lie in span(basis)
        tol: accepted relative residual ‖A − Σ aᵢSᵢ‖_F / ‖A‖_F

    Returns:
        StructuredCoordinates

    Raises:
        NotInSubspaceError: if the fit residual exceeds tol
    """
    A = np.asarray(A, dtype=float)
    structure.check_shape(*A.shape)
    vec_A = A.ravel(order='F')
    a = structure.solve_gram(structure.M_st.T @ vec_A)

    norm_A = np.linalg.norm(vec_A)
    residual = np.linalg.norm(vec_A - structure.M_st @ a)
    relative = residual / norm_A if norm_A > 0 else residual
    if relative > tol:
        raise NotInSubspaceError(float(relative), tol)
    return StructuredCoordinates(a)
