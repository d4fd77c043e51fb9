"""
Problem - the (A, b) data pair of an over-determined TLS problem
"""
from dataclasses import dataclass

import numpy as np

from ..exceptions import DimensionMismatchError


def _frozen_copy(values, ndim: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if ndim == 1 and arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0].copy()
    if arr.ndim != ndim:
        raise DimensionMismatchError(f"{name} dimensions", ndim, arr.ndim)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TlsProblem:
    """
    Over-determined TLS data: minimize ‖[A, b] − [Â, b̂]‖_F subject to b̂ ∈ R(Â).

    A is m×n and b has m entries with m > n ≥ 1. Both are copied and
    frozen on construction.
    """
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = _frozen_copy(self.A, 2, "A")
        b = _frozen_copy(self.b, 1, "b")

        if A.shape[0] != b.shape[0]:
            raise DimensionMismatchError("rows of A vs length of b", A.shape[0], b.shape[0])
        m, n = A.shape
        if n < 1 or m <= n:
            raise ValueError(f"TLS problem must be over-determined (m > n >= 1), got {m}x{n}")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("A and b must contain only finite values")

        object.__setattr__(self, 'A', A)
        object.__setattr__(self, 'b', b)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def augmented(self) -> np.ndarray:
        """The m×(n+1) matrix [A, b]"""
        return np.column_stack([self.A, self.b])

    def __str__(self):
        return f"TlsProblem({self.m}x{self.n}, nnz(A)={np.count_nonzero(self.A)})"
