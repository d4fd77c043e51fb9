"""
Selection - the k×n matrix L choosing which linear function L·x is analyzed
"""
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..exceptions import DimensionMismatchError


@dataclass(frozen=True, eq=False)
class Selection:
    """
    Linear selection L ∈ R^{k×n} of the TLS solution.

    Constructors take 0-based indices; `parse` accepts the 1-based command
    line syntax (identity | rows=i,j | index=i | max | min).
    """
    L: np.ndarray
    label: str = "L"

    def __post_init__(self):
        L = np.array(self.L, dtype=float)
        if L.ndim == 1:
            L = L[np.newaxis, :]
        if L.ndim != 2:
            raise DimensionMismatchError("selection dimensions", 2, L.ndim)
        k, n = L.shape
        if k < 1 or n < 1:
            raise ValueError(f"Selection must be non-empty, got {k}x{n}")
        if k > n:
            raise ValueError(f"Selection may have at most n={n} rows, got k={k}")
        if not np.all(np.isfinite(L)):
            raise ValueError("Selection entries must be finite")
        L.setflags(write=False)
        object.__setattr__(self, 'L', L)

    @property
    def k(self) -> int:
        return self.L.shape[0]

    @property
    def n(self) -> int:
        return self.L.shape[1]

    def check_columns(self, n: int):
        if self.n != n:
            raise DimensionMismatchError("columns of L", n, self.n)

    @classmethod
    def identity(cls, n: int) -> 'Selection':
        return cls(np.eye(n), label="I_n")

    @classmethod
    def rows(cls, n: int, indices: Sequence[int], label: str = None) -> 'Selection':
        """Rows of I_n, e.g. [e₁ e₂]⊤ for indices (0, 1)"""
        indices = list(indices)
        if not indices:
            raise ValueError("rows selection needs at least one index")
        for idx in indices:
            if not 0 <= idx < n:
                raise IndexError(f"Selection index {idx} out of range for n={n}")
        if label is None:
            label = "rows=" + ",".join(str(i + 1) for i in indices)
        return cls(np.eye(n)[indices, :], label=label)

    @classmethod
    def index(cls, n: int, i: int) -> 'Selection':
        """Single component eᵢ⊤"""
        return cls.rows(n, [i], label=f"e_{i + 1}")

    @classmethod
    def max_component(cls, x) -> 'Selection':
        """e_max⊤ at the first occurrence of max |xᵢ|"""
        x = np.asarray(x, dtype=float)
        i = int(np.argmax(np.abs(x)))
        return cls.rows(x.shape[0], [i], label=f"e_max({i + 1})")

    @classmethod
    def min_component(cls, x) -> 'Selection':
        """e_min⊤ at the first occurrence of min |xᵢ|"""
        x = np.asarray(x, dtype=float)
        i = int(np.argmin(np.abs(x)))
        return cls.rows(x.shape[0], [i], label=f"e_min({i + 1})")

    @classmethod
    def standard_set(cls, x) -> List['Selection']:
        """L₀ = I, L₁ = [e₁ e₂]⊤, L₂ = e_max⊤, L₃ = e_min⊤"""
        x = np.asarray(x, dtype=float)
        n = x.shape[0]
        selections = [cls.identity(n)]
        if n >= 2:
            selections.append(cls.rows(n, [0, 1], label="L1=[e1 e2]'"))
        selections.append(cls.max_component(x))
        selections.append(cls.min_component(x))
        return selections

    @classmethod
    def parse(cls, spec: str, x) -> List['Selection']:
        """
        Build selections from a command line spec.

        Args:
            spec: identity | rows=i,j,... | index=i | max | min | standard (1-based)
            x: TLS solution, needed for max/min and for n

        Returns:
            List of selections (several for 'standard')
        """
        x = np.asarray(x, dtype=float)
        n = x.shape[0]
        spec = spec.strip().lower()

        if spec in ('identity', 'i'):
            return [cls.identity(n)]
        if spec == 'max':
            return [cls.max_component(x)]
        if spec == 'min':
            return [cls.min_component(x)]
        if spec == 'standard':
            return cls.standard_set(x)
        if spec.startswith('rows='):
            indices = [int(tok) - 1 for tok in spec[5:].split(',') if tok.strip()]
            return [cls.rows(n, indices)]
        if spec.startswith('index='):
            return [cls.index(n, int(spec[6:]) - 1)]
        raise ValueError(f"Unknown selection: {spec!r}")

    def __str__(self):
        return f"{self.label} ({self.k}x{self.n})"
