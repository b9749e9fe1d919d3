from fractions import Fraction

import pytest

from finpolylog import (
    BadParams,
    DepthExceeded,
    DiffRing,
    SingularChoice,
    besser_coefficients,
    build_Fn,
    clean_check,
    construct_family,
    verify_recursion,
    verify_reformulated,
)


class TestDiffRing:
    def test_operator_on_generators(self):
        r = DiffRing(4)
        z, L = r.gen("z"), r.gen("L")
        one = r.const(1)
        assert r.big_D(z) == z * (one - z)
        assert r.big_D(L) == one - z
        assert r.big_D(r.gen("P1")) == z
        assert r.big_D(r.gen("P2")) == (one - z) * r.gen("P1")

    def test_leibniz(self):
        r = DiffRing(3)
        f = r.gen("z") * r.gen("L") + r.gen("P2")
        g = r.gen("P1") * r.gen("P1")
        assert r.big_D(f * g) == r.big_D(f) * g + f * r.big_D(g)

    def test_depth_guard(self):
        r = DiffRing(3)
        with pytest.raises(DepthExceeded):
            build_Fn(r, besser_coefficients(5), 5)


class TestCleanCoefficients:
    @pytest.mark.parametrize("n", range(2, 13))
    def test_clean_condition(self, n):
        assert clean_check(besser_coefficients(n), n)

    def test_level_two_values(self):
        assert list(besser_coefficients(2)) == [Fraction(-2), Fraction(1)]

    def test_perturbed_coefficients_fail(self):
        coeffs = list(besser_coefficients(4))
        coeffs[1] += Fraction(1, 3)
        assert not clean_check(coeffs, 4)


class TestRecursion:
    @pytest.mark.parametrize("n", range(3, 8))
    def test_linking_identity(self, n):
        assert verify_recursion(n)

    @pytest.mark.parametrize("n", (3, 4, 5))
    def test_factorial_rescaling(self, n):
        assert verify_reformulated(n)

    def test_perturbed_coefficients_break_recursion(self):
        coeffs = list(besser_coefficients(4))
        coeffs[2] += 1
        assert not verify_recursion(4, coeffs=coeffs)


class TestFamilyConstruction:
    def test_besser_choice_is_reproduced(self):
        choices = {n: Fraction(1, n - 1) for n in range(3, 7)}
        fam = construct_family(6, choices)
        for n in range(3, 7):
            assert fam.lambdas[n] == Fraction(1, n - 1)
            assert fam.mus[n] == Fraction(-1, n - 1)
            assert tuple(fam.levels[n]) == besser_coefficients(n)

    def test_constraint_chain(self):
        lam3 = Fraction(3, 7)
        fam = construct_family(4, {3: lam3, 4: Fraction(1, 2 - lam3) + Fraction(1, 5)})
        assert fam.lambdas[3] - fam.mus[3] == 1
        assert fam.lambdas[4] - fam.mus[4] == Fraction(1, 2 - lam3)

    def test_singular_choice_raises(self):
        with pytest.raises(SingularChoice):
            construct_family(4, {3: Fraction(2), 4: Fraction(1)})

    def test_missing_lambda_raises(self):
        with pytest.raises(BadParams):
            construct_family(4, {3: Fraction(1, 2)})
