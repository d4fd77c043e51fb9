import numpy as np
import pytest
import scipy.sparse
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from tls_condition.conditioning import (Selection, comp_cond, frechet_apply,
                                        mixed_cond, zhou_oracle)
from tls_condition.core import TlsProblem, solve_tls
from tls_condition.exceptions import (DimensionMismatchError, NotInSubspaceError, OracleRefusedError,
                                      StructureError)
from tls_condition.experiments import make_example3
from tls_condition.structured import (
    LinearStructure, assemble, decompose, diagonal_structure, full_structure, li_jia_oracle,
    structured_comp_cond, structured_condition_report, structured_frechet, structured_frechet_adjoint,
    structured_mixed_cond, toeplitz_structure
)


class TestToeplitzStructure:
    def test_two_by_two(self):
        structure = toeplitz_structure(2, 2)
        assert structure.q == 3
        dense = [S.toarray() for S in structure.basis]
        assert_allclose(dense[0], [[0, 1], [0, 0]])
        assert_allclose(dense[1], [[1, 0], [0, 1]])
        assert_allclose(dense[2], [[0, 0], [1, 0]])

    def test_supports_cover_the_matrix_once(self):
        structure = toeplitz_structure(3, 2)
        assert structure.q == 4
        total = sum(abs(S).toarray() for S in structure.basis)
        assert_allclose(total, np.ones((3, 2)))
        assert structure.abs_additive

    def test_example3_geometry(self):
        assert toeplitz_structure(200, 184).q == 383

    def test_rejects_empty_dimensions(self):
        with pytest.raises(ValueError):
            toeplitz_structure(0, 3)


class TestLinearStructure:
    def test_dependent_basis(self):
        S = scipy.sparse.csr_matrix(np.eye(3, 2))
        with pytest.raises(StructureError):
            LinearStructure(basis=(S, 2.0 * S))

    def test_shape_mismatch(self):
        with pytest.raises(StructureError):
            LinearStructure(basis=(np.eye(3, 2), np.eye(3, 3)))

    def test_zero_basis_matrix(self):
        with pytest.raises(StructureError):
            LinearStructure(basis=(np.eye(3, 2), np.zeros((3, 2))))

    def test_abs_additive_needs_disjoint_supports(self):
        overlapping = (np.eye(3, 2), np.ones((3, 2)))
        with pytest.raises(StructureError):
            LinearStructure(basis=overlapping, abs_additive=True)
        assert not LinearStructure(basis=overlapping).abs_additive

    def test_builtin_bases(self):
        assert full_structure(3, 2).q == 6
        assert diagonal_structure(4, 2).q == 2
        assert full_structure(3, 2).abs_additive

    def test_large_disjoint_basis_stays_sparse(self):
        # a dense 20000×20000 Gram matrix would need 3.2 GB
        structure = full_structure(200, 100)
        A = np.random.Generator(np.random.PCG64(0)).standard_normal((200, 100))
        assert_allclose(decompose(structure, A).a, A.ravel(order='F'), rtol=1e-15)

    def test_overlapping_basis_decomposes(self):
        structure = LinearStructure(basis=(np.eye(3, 2), np.ones((3, 2))))
        a = decompose(structure, 2.0 * np.eye(3, 2) - np.ones((3, 2)))
        assert_allclose(a.a, [2.0, -1.0], atol=1e-14)


class TestDecompose:
    def test_basis_element(self):
        structure = toeplitz_structure(4, 3)
        a = decompose(structure, structure.basis[1].toarray())
        assert_allclose(a.a, np.eye(structure.q)[1], atol=1e-15)

    def test_zero_matrix(self):
        structure = toeplitz_structure(4, 3)
        assert_allclose(decompose(structure, np.zeros((4, 3))).a, 0.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_round_trip(self, seed):
        structure = toeplitz_structure(7, 4)
        a0 = np.random.Generator(np.random.PCG64(seed)).standard_normal(structure.q)
        a = decompose(structure, assemble(structure, a0))
        assert_allclose(a.a, a0, rtol=1e-12, atol=1e-12 * np.linalg.norm(a0))

    def test_not_in_subspace(self):
        A = np.arange(12.0).reshape(4, 3)
        with pytest.raises(NotInSubspaceError):
            decompose(toeplitz_structure(4, 3), A)

    def test_shape_checked(self):
        with pytest.raises(DimensionMismatchError):
            decompose(toeplitz_structure(4, 3), np.zeros((3, 3)))

    def test_assemble_checks_length(self):
        with pytest.raises(DimensionMismatchError):
            assemble(toeplitz_structure(4, 3), np.ones(5))


class TestStructuredFrechet:
    def test_zero_direction(self, make_toeplitz_problem):
        problem, structure, _ = make_toeplitz_problem(0)
        sol = solve_tls(problem)
        value = structured_frechet(sol, Selection.identity(4), structure, np.zeros(structure.q), np.zeros(8))
        assert_allclose(value, 0.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_unstructured_derivative(self, make_toeplitz_problem, seed):
        problem, structure, _ = make_toeplitz_problem(seed, 9, 5)
        sol = solve_tls(problem)
        rng = np.random.Generator(np.random.PCG64(10_000 + seed))
        da = rng.standard_normal(structure.q)
        db = rng.standard_normal(9)
        selection = Selection(rng.standard_normal((2, 5)))

        structured = structured_frechet(sol, selection, structure, da, db)
        unstructured = frechet_apply(sol, selection, assemble(structure, da), db)
        assert_allclose(structured, unstructured, rtol=1e-10, atol=1e-10 * np.linalg.norm(unstructured))

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_adjoint_identity(self, make_toeplitz_problem, seed):
        problem, structure, _ = make_toeplitz_problem(seed % 10)
        sol = solve_tls(problem)
        rng = np.random.Generator(np.random.PCG64(seed))
        selection = Selection(rng.standard_normal((2, 4)))
        da = rng.standard_normal(structure.q)
        db = rng.standard_normal(8)
        u = rng.standard_normal(2)

        J = structured_frechet(sol, selection, structure, da, db)
        adj_a, adj_b = structured_frechet_adjoint(sol, selection, structure, u)
        lhs = u @ J
        rhs = adj_a @ da + adj_b @ db
        scale = np.linalg.norm(u) * np.linalg.norm(J) + \
            np.sqrt(adj_a @ adj_a + adj_b @ adj_b) * np.sqrt(da @ da + db @ db)
        assert abs(lhs - rhs) <= 1e-12 * scale

    def test_dimension_checks(self, make_toeplitz_problem):
        problem, structure, _ = make_toeplitz_problem(0)
        sol = solve_tls(problem)
        with pytest.raises(DimensionMismatchError):
            structured_frechet(sol, Selection.identity(4), structure, np.zeros(3), np.zeros(8))
        with pytest.raises(DimensionMismatchError):
            structured_frechet_adjoint(sol, Selection.identity(4), structure, np.zeros(3))


class TestStructuredConditionNumbers:
    @pytest.mark.parametrize("seed", range(100))
    def test_structured_never_exceeds_unstructured(self, make_toeplitz_problem, seed):
        problem, structure, a = make_toeplitz_problem(seed, 10, 5)
        sol = solve_tls(problem)
        for selection in Selection.standard_set(sol.x):
            _, kappa_s_rel = structured_mixed_cond(sol, selection, structure, a)
            assert kappa_s_rel <= mixed_cond(sol, selection)[1] * (1 + 1e-10)
            assert structured_comp_cond(sol, selection, structure, a) <= comp_cond(sol, selection) * (1 + 1e-10)

    @pytest.mark.parametrize("seed", range(5))
    def test_full_basis_imposes_no_constraint(self, make_random_problem, seed):
        problem = make_random_problem(seed, 7, 3)
        sol = solve_tls(problem)
        structure = full_structure(7, 3)
        a = decompose(structure, problem.A)
        identity = Selection.identity(3)

        assert structured_mixed_cond(sol, identity, structure, a)[1] == pytest.approx(
            mixed_cond(sol, identity)[1], rel=1e-10)
        assert structured_comp_cond(sol, identity, structure, a) == pytest.approx(
            comp_cond(sol, identity), rel=1e-10)
        assert li_jia_oracle(sol, structure, a) == pytest.approx(zhou_oracle(sol)[0], rel=1e-10)

    def test_single_entry_basis_matches_restricted_oracle(self):
        problem = TlsProblem(np.array([[2.0], [0.0], [0.0], [0.0]]), np.ones(4))
        sol = solve_tls(problem)
        structure = LinearStructure(basis=(scipy.sparse.csr_matrix(([1.0], ([0], [0])), shape=(4, 1)),))
        a = decompose(structure, problem.A)
        m_ab, c_ab = zhou_oracle(sol)
        identity = Selection.identity(1)
        assert structured_comp_cond(sol, identity, structure, a) == pytest.approx(c_ab, rel=1e-10)
        assert structured_mixed_cond(sol, identity, structure, a)[1] == pytest.approx(m_ab, rel=1e-10)

    def test_diagonal_structure_on_consistent_system(self, consistent_solution):
        structure = diagonal_structure(3, 2)
        a = decompose(structure, consistent_solution.A)
        identity = Selection.identity(2)
        report = structured_condition_report(consistent_solution, identity, structure, a)
        assert report.kappa_s_inf_rel == pytest.approx(mixed_cond(consistent_solution, identity)[1], rel=1e-10)
        assert report.kappa_s_c == pytest.approx(2.0, rel=1e-10)

    def test_two_norm_bound(self, make_toeplitz_problem):
        problem, structure, a = make_toeplitz_problem(3)
        sol = solve_tls(problem)
        report = structured_condition_report(sol, Selection.rows(4, [0, 1, 2]), structure, a)
        assert report.kappa_s2_bound == np.sqrt(3) * report.kappa_s_inf
        assert report.k == 3

    def test_matrix_must_lie_in_structure(self, make_random_problem):
        problem = make_random_problem(0, 8, 4)
        sol = solve_tls(problem)
        structure = toeplitz_structure(8, 4)
        with pytest.raises(NotInSubspaceError):
            structured_mixed_cond(sol, Selection.identity(4), structure, np.ones(structure.q))


class TestLiJiaOracle:
    @pytest.mark.parametrize("seed", range(20))
    def test_matches_structured_mixed_condition_number(self, make_toeplitz_problem, seed):
        rng = np.random.Generator(np.random.PCG64(500 + seed))
        n = int(rng.integers(2, 13))
        m = int(rng.integers(n + 1, 21))
        problem, structure, a = make_toeplitz_problem(seed, m, n)
        sol = solve_tls(problem)
        _, kappa_s_rel = structured_mixed_cond(sol, Selection.identity(n), structure, a)
        assert li_jia_oracle(sol, structure, a) == pytest.approx(kappa_s_rel, rel=1e-10)

    def test_small_example3(self):
        problem, structure, a = make_example3(m=40, seed=7)
        sol = solve_tls(problem)
        _, kappa_s_rel = structured_mixed_cond(sol, Selection.identity(problem.n), structure, a)
        assert li_jia_oracle(sol, structure, a) == pytest.approx(kappa_s_rel, rel=1e-6)

    def test_refuses_consistent_system(self, consistent_solution):
        structure = diagonal_structure(3, 2)
        a = decompose(structure, consistent_solution.A)
        with pytest.raises(OracleRefusedError):
            li_jia_oracle(consistent_solution, structure, a)

    def test_refuses_large_instances(self, make_toeplitz_problem):
        problem, structure, a = make_toeplitz_problem(1)
        with pytest.raises(OracleRefusedError):
            li_jia_oracle(solve_tls(problem), structure, a, size_cap=10)
