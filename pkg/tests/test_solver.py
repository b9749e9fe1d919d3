import numpy as np
import pytest

from finpolylog import build, characterize, kernels_equal, lemma417_sequence
from finpolylog.solver import (
    PRESETS,
    columns_matrix,
    equation_columns,
    kernel_basis,
    basis_residuals,
    in_span,
    polylog_vector,
    substitute_into_columns,
    tau_family_rank,
    tau_satisfies_three_term,
)


class TestLinearAlgebra:
    def test_kernel_of_zero_map_is_everything(self):
        mat = np.zeros((2, 4), dtype=np.int64)
        assert len(kernel_basis(mat, 5)) == 4

    def test_kernel_of_identity_is_trivial(self):
        assert kernel_basis(np.eye(3, dtype=np.int64), 5) == []

    def test_kernel_vectors_annihilate(self):
        rng = np.random.default_rng(1)
        mat = rng.integers(0, 7, size=(4, 9)).astype(np.int64)
        for v in kernel_basis(mat, 7):
            assert not np.any((mat @ np.array(v)) % 7)

    def test_in_span(self):
        basis = [np.array([1, 0, 2]), np.array([0, 1, 3])]
        assert in_span(basis, np.array([1, 1, 5]), 7)
        assert not in_span(basis, np.array([0, 0, 1]), 7)


class TestEquationColumns:
    def test_polylog_solves_its_own_equation(self):
        p = 7
        s = build("feit", p)
        cols = equation_columns(s, p)
        assert substitute_into_columns(cols, polylog_vector(1, p), p).is_zero()

    def test_nonsolution_leaves_residual(self):
        p = 7
        s = build("feit", p)
        cols = equation_columns(s, p)
        vec = np.zeros(p, dtype=np.int64)
        vec[2] = 1  # T^2 is not a solution
        assert not substitute_into_columns(cols, vec, p).is_zero()

    def test_columns_matrix_shape(self):
        p = 7
        mat = columns_matrix(equation_columns(build("feit", p), p), p)
        assert mat.shape[1] == p  # unknowns a_0..a_{p-1}


class TestPresets:
    @pytest.mark.parametrize("preset", sorted(PRESETS))
    def test_dimension_and_target_at_seven(self, preset):
        r = characterize(preset, 7)
        expected = PRESETS[preset]["expected_dim"]
        if expected is None:
            expected = (7 - 1) // 3 + 1
        assert r.dimension == expected
        assert r.contains_target

    @pytest.mark.parametrize("preset", ("FEIT", "KS", "J"))
    def test_basis_is_sound(self, preset):
        r = characterize(preset, 7)
        assert basis_residuals(preset, 7, r.basis)

    def test_kernels_equal_for_both_weight_two_presets(self):
        assert kernels_equal("KS", "J", 7)

    def test_distinct_kernels_detected(self):
        assert not kernels_equal("FEIT", "KS", 7)


class TestTauFamily:
    @pytest.mark.parametrize("p", (5, 7, 11, 13))
    def test_tau_members_satisfy_cyclic_equation(self, p):
        for i in range((p - 1) // 3 + 1):
            assert tau_satisfies_three_term(i, p)

    @pytest.mark.parametrize("p", (5, 7, 11, 13))
    def test_family_has_full_rank(self, p):
        assert tau_family_rank(p) == (p - 1) // 3 + 1


class TestDescendingSequences:
    @pytest.mark.parametrize("p", (5, 7, 11, 13, 31))
    def test_closed_form_and_antisymmetry(self, p):
        r = lemma417_sequence(p)
        assert r["matches_closed_form"] and r["antisymmetric"]

    def test_known_sequence_mod_five(self):
        assert lemma417_sequence(5, 1)["sequence"] == (1, 3, 2, 4)

    def test_scaling_in_initial_value(self):
        r1 = lemma417_sequence(11, 1)["sequence"]
        r2 = lemma417_sequence(11, 3)["sequence"]
        assert tuple((3 * v) % 11 for v in r1) == r2
