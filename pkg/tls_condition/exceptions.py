"""
Exceptions raised by the TLS solver, condition numbers and file I/O
"""
from typing import Optional


class TlsError(Exception):
    """Base class for every error raised by this package"""


class DimensionMismatchError(TlsError, ValueError):
    """Operand shapes do not conform"""

    def __init__(self, what: str, expected, got):
        self.what = what
        self.expected = expected
        self.got = got
        super().__init__(f"{what}: expected {expected}, got {got}")


class NotGenericError(TlsError):
    """The TLS problem has no unique solution at the requested tolerance"""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class SelectionNullSolutionError(TlsError, ValueError):
    """L·x vanishes where a relative measure divides by its norm"""


class NotInSubspaceError(TlsError, ValueError):
    """A matrix does not lie in the span of a structure basis"""

    def __init__(self, residual: float, tol: float):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"Matrix is not in the structure subspace: relative residual "
            f"{residual:.3e} exceeds {tol:.1e}")


class StructureError(TlsError, ValueError):
    """Invalid structure basis"""


class OracleRefusedError(TlsError):
    """An explicit-matrix oracle declined the instance"""


class ProblemParseError(TlsError, ValueError):
    """Malformed input file"""

    def __init__(self, path, message: str, line: Optional[int] = None):
        self.path = str(path)
        self.line = line
        location = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{location}: {message}")
