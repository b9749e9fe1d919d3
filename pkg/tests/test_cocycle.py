import random
from fractions import Fraction

import numpy as np
import pytest

from finpolylog import (
    BadParams,
    NoAdmissibleOrdering,
    all_ordering_values,
    check_cocycle,
    check_equation_B,
    check_equation_C,
    check_homogeneity,
    coboundary_solve,
    entropy_mod_p,
    group_check,
    group_inverse,
    group_mul,
    h_table,
    main_identity_check,
    phi,
    phi_table,
    reduce_distribution,
    verify_certificate,
)
from finpolylog.cocycle import H
from finpolylog.finlog import ltilde
from finpolylog.fields import FieldDescriptor


class TestEntropyFunction:
    def test_pinned_values(self):
        assert H(3, 5) == 3
        assert phi(1, 1, 5) == 1

    @pytest.mark.parametrize("p", (5, 7, 11))
    def test_matches_weight_one_polylog(self, p):
        f = FieldDescriptor(p)
        table = h_table(p)
        for x in range(p):
            assert int(ltilde(1, f.element(x))) == table[x]


class TestCocycle:
    @pytest.mark.parametrize("p", (5, 7, 11, 13))
    def test_cocycle_and_symmetry(self, p):
        assert check_cocycle(p).holds

    @pytest.mark.parametrize("p", (5, 7, 11))
    def test_homogeneity(self, p):
        assert check_homogeneity(p).holds

    @pytest.mark.parametrize("p", (5, 7, 11, 13))
    def test_equation_B_pointwise(self, p):
        assert check_equation_B(p).holds

    @pytest.mark.parametrize("p", (5, 7, 11, 13))
    def test_equation_C_pointwise(self, p):
        assert check_equation_C(p).holds

    def test_perturbed_table_fails(self):
        t = phi_table(7).copy()
        t[2, 3] = (t[2, 3] + 1) % 7
        t[3, 2] = t[2, 3]
        r = check_cocycle(7, table=t)
        assert not r.holds and r.counterexample is not None


class TestCoboundary:
    @pytest.mark.parametrize("p", (5, 7, 11, 13))
    def test_inconsistent_with_verified_certificate(self, p):
        res = coboundary_solve(p)
        assert not res["consistent"]
        assert verify_certificate(p, res["certificate"])

    def test_zero_cocycle_is_a_coboundary(self):
        res = coboundary_solve(5, table=np.zeros((5, 5), dtype=np.int64))
        assert res["consistent"]

    def test_actual_coboundary_is_consistent(self):
        # phi(x,y) = psi(x) + psi(y) - psi(x+y) for psi(x) = x^2
        p = 7
        t = np.zeros((p, p), dtype=np.int64)
        for x in range(p):
            for y in range(p):
                t[x, y] = (x * x + y * y - (x + y) ** 2) % p
        res = coboundary_solve(p, table=t)
        assert res["consistent"]
        psi = res["psi"]
        for x in range(p):
            for y in range(p):
                assert (psi[x] + psi[y] - psi[(x + y) % p]) % p == t[x, y]


class TestExtensionGroup:
    @pytest.mark.parametrize("p", (5, 7))
    def test_axioms_exhaustive(self, p):
        r = group_check(p)
        assert r.holds and r.checked == (p * p * (p - 1)) ** 3

    def test_axioms_sampled(self):
        assert group_check(11, exhaustive=False, samples=10**4).holds

    def test_inverse_formula(self):
        p = 7
        g = (3, 5, 2)
        assert group_mul(g, group_inverse(g, p), p) == (0, 0, 1)

    def test_non_cocycle_breaks_associativity(self):
        p = 5
        t = phi_table(p).copy()
        t[2, 3] = (t[2, 3] + 1) % p
        t[3, 2] = t[2, 3]
        assert not group_check(p, table=t).holds


class TestEntropyModP:
    def test_fair_coin(self):
        assert entropy_mod_p([Fraction(1, 2), Fraction(1, 2)], 5) == 3

    def test_invalid_distribution(self):
        with pytest.raises(BadParams):
            entropy_mod_p([Fraction(1, 2), Fraction(1, 3)], 5)
        with pytest.raises(BadParams):
            entropy_mod_p([Fraction(1, 5), Fraction(4, 5)], 5)

    def test_zero_probabilities_are_dropped(self):
        a = entropy_mod_p([Fraction(1, 2), Fraction(0), Fraction(1, 2)], 7)
        b = entropy_mod_p([Fraction(1, 2), Fraction(1, 2)], 7)
        assert a == b

    def test_reduce_distribution(self):
        assert reduce_distribution(["1/2", "1/2"], 5) == [3, 3]

    @pytest.mark.parametrize("p", (5, 7, 11))
    def test_order_independence_random(self, p):
        rng = random.Random(p)
        done = 0
        while done < 25:
            k = rng.randint(2, 6)
            weights = [rng.randint(1, 9) for _ in range(k)]
            total = sum(weights)
            if total % p == 0:
                continue
            probs = [Fraction(w, total) for w in weights]
            values = all_ordering_values(probs, p)
            if not values:
                continue  # no admissible ordering; nothing to compare
            assert len(values) == 1
            assert entropy_mod_p(probs, p) in values
            done += 1

    @pytest.mark.parametrize("p", (5, 7, 11))
    def test_main_identity_random_refinements(self, p):
        rng = random.Random(100 + p)
        done = 0
        while done < 15:
            k = rng.randint(2, 3)
            weights = [rng.randint(1, 7) for _ in range(k)]
            total = sum(weights)
            if total % p == 0 or any(w % p == 0 for w in weights):
                continue
            coarse = [Fraction(w, total) for w in weights]
            refinement = []
            ok = True
            for c in coarse:
                parts = rng.randint(1, 3)
                sub = [rng.randint(1, 5) for _ in range(parts)]
                s = sum(sub)
                if s % p == 0:
                    ok = False
                    break
                refinement.append([c * Fraction(w, s) for w in sub])
            if not ok:
                continue
            try:
                assert main_identity_check(coarse, refinement, p).holds
            except NoAdmissibleOrdering:
                continue
            done += 1
