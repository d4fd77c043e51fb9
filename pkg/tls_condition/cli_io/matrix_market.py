"""
Matrix Market I/O - read and write problems and structure bases
"""
import logging
from pathlib import Path
from typing import List, Optional

import numpy as np
import scipy.io
import scipy.sparse

from ..core import TlsProblem
from ..exceptions import DimensionMismatchError, ProblemParseError, StructureError
from ..structured import LinearStructure, diagonal_structure, full_structure, toeplitz_structure

logger = logging.getLogger(__name__)

MM_HEADER = '%%MatrixMarket'
BUILTIN_STRUCTURES = {
    'toeplitz': toeplitz_structure,
    'full': full_structure,
    'diagonal': diagonal_structure,
}


def _find_bad_line(path: Path) -> Optional[int]:
    """First line of a Matrix Market body that does not parse as numbers"""
    expected = None
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            text = line.strip()
            if not text or text.startswith('%'):
                continue
            tokens = text.split()
            try:
                [float(tok) for tok in tokens]
            except ValueError:
                return lineno
            if expected is None:
                # size line: 3 tokens for coordinate, 2 for array
                expected = 3 if len(tokens) == 3 else 1
            elif len(tokens) != expected:
                return lineno
    return None


def read_matrix_market(path) -> np.ndarray:
    """
    Read a real Matrix Market file (coordinate or array) into a dense array.

    Raises:
        ProblemParseError: on malformed content or a complex/pattern field
    """
    path = Path(path)
    try:
        with open(path) as f:
            header = f.readline()
    except OSError as e:
        raise ProblemParseError(path, f"cannot read file ({e.strerror})")
    if not header.startswith(MM_HEADER):
        raise ProblemParseError(path, "missing %%MatrixMarket header", line=1)

    try:
        info = scipy.io.mminfo(str(path))
    except Exception as e:
        raise ProblemParseError(path, f"bad Matrix Market header ({e})", line=1)
    field = info[4]
    if field in ('complex', 'pattern'):
        raise ProblemParseError(path, f"field must be real or integer, got {field}", line=1)

    try:
        data = scipy.io.mmread(str(path))
    except Exception as e:
        raise ProblemParseError(path, f"malformed entry ({e})", line=_find_bad_line(path))

    if scipy.sparse.issparse(data):
        data = data.toarray()
    logger.debug("read %s: %s %s %s", path, info[3], field, data.shape)
    return np.asarray(data, dtype=float)


def read_vector(path) -> np.ndarray:
    """
    Read a vector: one real number per line, or a single-column or single-row
    Matrix Market array. Blank lines are skipped.
    """
    path = Path(path)
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as e:
        raise ProblemParseError(path, f"cannot read file ({e.strerror})")

    if lines and lines[0].startswith(MM_HEADER):
        data = read_matrix_market(path)
        if min(data.shape) != 1:
            raise ProblemParseError(path, f"expected a single column, got shape {data.shape}")
        return data.ravel()

    values = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            values.append(float(text))
        except ValueError:
            raise ProblemParseError(path, f"not a real number: {text!r}", line=lineno)
    if not values:
        raise ProblemParseError(path, "vector file is empty")
    return np.array(values)


def load_problem(matrix_path, vector_path) -> TlsProblem:
    """
    Load (A, b) from a Matrix Market matrix and a vector file.

    Raises:
        ProblemParseError: malformed file, with its line number when known
        DimensionMismatchError: rows of A differ from the length of b
    """
    A = read_matrix_market(matrix_path)
    b = read_vector(vector_path)
    if A.shape[0] != b.shape[0]:
        raise DimensionMismatchError("rows of A vs length of b", A.shape[0], b.shape[0])
    return TlsProblem(A, b)


def load_structure(spec: str, m: int, n: int) -> LinearStructure:
    """
    Built-in structure name (toeplitz, full, diagonal) or a directory holding
    one Matrix Market file per basis matrix, taken in file name order.
    """
    builder = BUILTIN_STRUCTURES.get(spec.strip().lower())
    if builder is not None:
        return builder(m, n)

    directory = Path(spec)
    if not directory.is_dir():
        raise StructureError(f"Unknown structure {spec!r}: not a built-in name or a directory")
    files: List[Path] = sorted(directory.glob('*.mtx'))
    if not files:
        raise StructureError(f"No .mtx basis files in {directory}")

    basis = [scipy.sparse.csr_matrix(read_matrix_market(path)) for path in files]
    structure = LinearStructure(basis=tuple(basis), name=directory.name)
    structure.check_shape(m, n)
    logger.info("loaded %s from %d files", structure, len(files))
    return structure


def write_vector(path, values):
    with open(path, 'w') as f:
        for value in np.asarray(values, dtype=float):
            f.write(repr(float(value)) + '\n')


def write_problem(problem: TlsProblem, matrix_path, vector_path, sparse: bool = False):
    """
    Write A as Matrix Market (array, or coordinate when sparse) and b as text.

    17 significant digits make a reloaded problem bit-identical.
    """
    A = scipy.sparse.coo_matrix(problem.A) if sparse else np.asarray(problem.A)
    scipy.io.mmwrite(str(matrix_path), A, field='real', precision=17)
    write_vector(vector_path, problem.b)
    logger.info("wrote %s and %s", matrix_path, vector_path)
