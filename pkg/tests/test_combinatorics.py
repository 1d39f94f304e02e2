import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicslopes.combinatorics import (
    all_row_indices,
    build_interior_annihilator,
    build_matrix_M,
    build_rho_annihilator,
    c_constants,
    comb0,
    ecal_of,
    lambda_defining_residual,
    trinomial_revision_check,
    factor_and_rank_checks,
    interior_rank_report,
    interior_row_indices,
    lambda_coefficients,
    lambda_values_by_differences,
    rho_of,
    rho_prime_of,
    rho_zero_row_identity,
    solve_interior_system,
    vartheta,
    vartheta_profile,
    verify_vanishing_double_sum,
)
from padicslopes.padic import generalized_binomial, valuation


class TestLambdaTables:
    def test_R0(self):
        t = lambda_coefficients(5, 0, 3)
        assert t.values == {3: Fraction(1)}

    @pytest.mark.parametrize("p,alpha", [(5, 4), (7, 10), (11, 2), (13, 30)])
    def test_R1_closed_forms(self, p, alpha):
        t = lambda_coefficients(p, 1, alpha)
        assert t[alpha - 1] == Fraction(-1, p - 1)
        assert t[alpha] == Fraction(p - 1 + alpha, p - 1)
        # closed-form cross-check: Lambda_1(a,a)(p-1) - (p-1) - a = 0
        assert t[alpha] * (p - 1) - (p - 1) - alpha == 0

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    @pytest.mark.parametrize("R,alpha", [(2, 5), (6, 6), (9, 21), (14, 40)])
    def test_defining_identity(self, p, R, alpha):
        t = lambda_coefficients(p, R, alpha)
        assert all(c == 0 for c in lambda_defining_residual(t))

    @pytest.mark.parametrize("p", [5, 13])
    @pytest.mark.parametrize("R,alpha", [(1, 1), (3, 7), (8, 8), (12, 25), (20, 33)])
    def test_two_routes_agree(self, p, R, alpha):
        t = lambda_coefficients(p, R, alpha)
        d = lambda_values_by_differences(p, R, alpha)
        assert t.values == d

    def test_rejects_R_above_alpha(self):
        with pytest.raises(ValueError):
            lambda_coefficients(5, 4, 3)


class TestCConstants:
    def test_rho_prime_example(self):
        # p=5, r=20, alpha=4: rho=3 < 4, rho' = ceil(16/5)-1 = 3, four entries
        cc = c_constants(5, 20, 4)
        assert cc.rho_prime == 3
        assert sorted(cc.values) == [1, 2, 3, 4]

    @pytest.mark.parametrize("p,r,alpha", [(5, 20, 4), (7, 40, 6), (11, 60, 6)])
    def test_eq130_defining_identity(self, p, r, alpha):
        # sum_l C_l C(r,alpha-l)^(-1) C((p-1)X+alpha, alpha-l) = C(rho'-X, rho'),
        # checked at degree+1 integer points
        cc = c_constants(p, r, alpha)
        rp = cc.rho_prime
        for x in range(rp + 2):
            lhs = sum(
                c / comb0(r, alpha - l) * generalized_binomial((p - 1) * x + alpha, alpha - l)
                for l, c in cc.values.items()
            )
            assert lhs == generalized_binomial(rp - x, rp)

    def test_cleared_values_integral(self):
        cc = c_constants(5, 20, 4)
        for l, c in cc.values.items():
            assert valuation(c / comb0(20, 4 - l), 5) >= 0

    def test_rho_case_requires_shape(self):
        with pytest.raises(ValueError):
            c_constants(5, 14, 2, variant="rho_case")
        cc = c_constants(5, 19, 3, variant="rho_case")  # r = 3*6+1
        assert cc.rho_prime == 3

    def test_general_requires_alpha_above_rho(self):
        with pytest.raises(ValueError):
            c_constants(5, 20, 3)  # rho = 3


class TestVartheta:
    def test_w0_is_sum(self):
        D = {-2: Fraction(3), 0: Fraction(5), 4: Fraction(-1)}
        assert vartheta(D, 0, 5) == 7

    def test_single_term(self):
        D = {1: Fraction(1)}
        for w in range(6):
            assert vartheta(D, w, 7) == math.comb(6, w)

    def test_interior_annihilator_row_family(self):
        # claim: zero for 0 <= w < alpha
        sys = build_interior_annihilator(5, 20, 1)
        assert vartheta(sys.row_values, 0, 5) == 0


class TestMatrixM:
    def test_shape(self):
        m = build_matrix_M(5, 20, 3)
        assert m.ncols == rho_of(5, 20) + 1
        assert m.nrows <= m.ncols
        assert m.col_indices == (0, 1, 2, 3)

    def test_entry_and_revision_example(self):
        # p=5, r=20, alpha=3, i=2, j=1: entry C(18,9) = 48620 = 167960*55/190
        m = build_matrix_M(5, 20, 3)
        e = m.entries[m.row_indices.index(2)][m.col_indices.index(1)]
        assert e == 48620
        assert 167960 * 55 == 48620 * 190
        assert trinomial_revision_check(m)

    def test_empty_rows_legal(self):
        m = build_matrix_M(5, 5, 0)  # rho=1, window (1,4) has no i(p-1)
        assert m.nrows == 0
        assert m.ncols == rho_of(5, 5) + 1

    @pytest.mark.parametrize("p", [5, 7])
    def test_revision_sweep(self, p):
        for r in range(1, 60):
            for a in range(0, rho_of(p, r)):
                assert trinomial_revision_check(build_matrix_M(p, r, a))


class TestFactorAndRank:
    def test_R1(self):
        rep = factor_and_rank_checks(5, 1, 0)
        assert rep.det_binomial == 1 and rep.det_matches_closed_form

    def test_R2(self):
        # det [[1,0],[1,p-1]] = p-1 = (p-1)^(2*1/2); the linear power (p-1)^2 disagrees
        rep = factor_and_rank_checks(5, 2, 4)
        assert rep.det_binomial == 4
        assert rep.det_matches_closed_form
        assert not rep.linear_power_agrees

    def test_R3(self):
        rep = factor_and_rank_checks(7, 3, 2)
        assert rep.det_binomial == 6**3
        assert rep.det_matches_closed_form

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    @pytest.mark.parametrize("R", range(1, 9))
    def test_grid(self, p, R):
        for gamma in (0, 1, 5, 12):
            rep = factor_and_rank_checks(p, R, gamma)
            assert rep.factorization_ok
            assert rep.unitriangular_ok
            assert rep.det_matches_closed_form
            assert rep.full_rank_mod_p

    def test_interior_rank(self):
        rep = interior_rank_report(5, 26, 2)
        assert rep.permutation_ok and rep.full_rank_mod_p
        assert rep.gamma == rep.R * 0 + interior_row_indices(5, 26, 2)[0] * 4 + 2


class TestInteriorSystem:
    def test_unit_target_example(self):
        # p=5, r=26: k=28, rho=4, ecal = floor(log_5 27) = 2, scale p^2 = 25
        assert ecal_of(5, 26) == 2
        rows = interior_row_indices(5, 26, 2)
        sol = solve_interior_system(5, 26, 2, rows[1])
        for i in rows:
            got = sum(c * comb0(26 - 2 + l, i * 4 + l) for l, c in sol.items())
            assert got == (25 if i == rows[1] else 0)

    def test_cleared_solution_integral(self):
        # C_l / C(r, alpha-l) is p-integral on a sample sweep
        for (p, r, a) in [(5, 26, 2), (5, 50, 0), (7, 60, 3), (11, 90, 5)]:
            for u in interior_row_indices(p, r, a):
                sol = solve_interior_system(p, r, a, u)
                for l, c in sol.items():
                    if c:
                        assert valuation(c / comb0(r, a - l), p) >= 0

    def test_rejects_non_interior_u(self):
        with pytest.raises(ValueError):
            solve_interior_system(5, 26, 2, -3)


class TestInteriorAnnihilator:
    @pytest.mark.parametrize("p,r,alpha", [(5, 26, 2), (5, 47, 0), (7, 33, 1), (11, 100, 7), (13, 60, 0)])
    def test_residual_zero(self, p, r, alpha):
        sys = build_interior_annihilator(p, r, alpha)
        assert sys.residual() == {}

    @pytest.mark.parametrize("p,r,alpha", [(5, 26, 2), (5, 47, 3), (7, 62, 4), (13, 90, 2)])
    def test_theta_functional_profile(self, p, r, alpha):
        sys = build_interior_annihilator(p, r, alpha)
        prof = vartheta_profile(sys)
        assert prof.zero_below_alpha
        assert prof.valuation_at_alpha_is_ecal
        assert prof.valuations_ok_up_to >= 2 * rho_of(p, r)

    def test_row_values_support(self):
        sys = build_interior_annihilator(5, 40, 3)
        assert sorted(sys.row_values) == [1, 2, 3, 4]
        assert sys.row_values[1] == 5 ** ecal_of(5, 40)

    def test_rejects_alpha_at_rho(self):
        with pytest.raises(ValueError):
            build_interior_annihilator(5, 26, 4)  # rho = 4


class TestIdentity88:
    @pytest.mark.parametrize(
        "p,r,alpha",
        [(5, 14, 3), (7, 18, 3), (5, 20, 4), (7, 50, 7), (11, 70, 6), (13, 100, 8)],
    )
    def test_holds(self, p, r, alpha):
        rep = verify_vanishing_double_sum(p, r, alpha)
        assert rep.holds
        assert len(rep.row_sums) == rep.rho_prime

    def test_example_parameters(self):
        rep = verify_vanishing_double_sum(5, 14, 3)
        assert rho_of(5, 14) == 2 and rep.rho_prime == 2


class TestRhoAnnihilator:
    @pytest.mark.parametrize("p,rho", [(5, 2), (5, 5), (7, 3), (11, 2), (13, 4)])
    def test_residual_and_target(self, p, rho):
        r = rho * (p + 1) + p - 2
        sys = build_rho_annihilator(p, r)
        assert sys.residual() == {}
        assert sys.target.startswith(f"p^{ecal_of(p, r)} * theta^{rho} * y^")

    def test_known_parameter_cell(self):
        # p=5, rho=2, r=15: 15 - 12 = 3 = p-2
        sys = build_rho_annihilator(5, 15)
        assert sys.residual() == {}

    def test_zero_row_vs_theta(self):
        # exact r-level identity: D_0 (1-p)^rho = vartheta_rho(D);
        # the two agree up to the unit (1-p)^rho = 1 mod p
        for (p, rho) in [(5, 2), (7, 4), (11, 3)]:
            sys = build_rho_annihilator(p, rho * (p + 1) + p - 2)
            d0, th, exact = rho_zero_row_identity(sys)
            assert exact
            assert d0 == p ** ecal_of(p, sys.r)
            assert (th - d0) % p ** (ecal_of(p, sys.r) + 1) == 0

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            build_rho_annihilator(5, 14)


class TestRowIndexing:
    @given(st.sampled_from([5, 7, 11, 13]), st.integers(10, 120), st.integers(0, 12))
    @settings(max_examples=80)
    def test_windows_consistent(self, p, r, alpha):
        rho = rho_of(p, r)
        interior = interior_row_indices(p, r, alpha)
        full = all_row_indices(p, r, alpha)
        assert set(interior) <= set(full)
        for i in full:
            assert 0 <= i * (p - 1) + alpha <= r
        for i in interior:
            assert rho < i * (p - 1) + alpha < r - rho
