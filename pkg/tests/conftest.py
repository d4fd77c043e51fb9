"""Shared fixtures: example problems and seeded random instances"""
from pathlib import Path

import numpy as np
import pytest

from tls_condition.core import TlsProblem, check_genericity, solve_tls
from tls_condition.experiments import make_example1
from tls_condition.structured import assemble, toeplitz_structure

DATA_DIR = Path(__file__).parent / "data"

# random instances below this relative gap are redrawn
MIN_GAP = 0.05


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def example1_problem():
    return make_example1(1e-3)


@pytest.fixture
def example1_solution(example1_problem):
    return solve_tls(example1_problem)


@pytest.fixture
def consistent_solution():
    """A = [e1 e2], b = (1, 1, 0): x = (1, 1), r = 0"""
    A = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    return solve_tls(TlsProblem(A, np.array([1.0, 1.0, 0.0])))


def _draw_generic(seed: int, draw):
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(100):
        problem = draw(rng)
        if check_genericity(problem).relative_gap > MIN_GAP:
            return problem
    raise RuntimeError(f"no well separated instance for seed {seed}")


@pytest.fixture(scope="session")
def make_random_problem():
    """Factory: seeded dense Gaussian problem with a comfortable genericity gap"""
    def make(seed: int, m: int = 8, n: int = 4) -> TlsProblem:
        return _draw_generic(seed, lambda rng: TlsProblem(rng.standard_normal((m, n)),
                                                          rng.standard_normal(m)))
    return make


@pytest.fixture(scope="session")
def make_toeplitz_problem():
    """Factory: seeded Toeplitz problem with random b, returned with its structure and coordinates"""
    def make(seed: int, m: int = 8, n: int = 4):
        structure = toeplitz_structure(m, n)
        holder = {}

        def draw(rng):
            a = rng.standard_normal(structure.q)
            holder['a'] = a
            return TlsProblem(assemble(structure, a), rng.standard_normal(m))

        problem = _draw_generic(seed, draw)
        return problem, structure, holder['a']
    return make
