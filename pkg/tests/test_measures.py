from fractions import Fraction

import pytest

from padicslopes.measures import (
    SlopeMeasure,
    support_bound,
    is_regular,
    mass_in_middle,
    middle_mass_profile,
    oldform_slope_pair,
    profile_to_dict,
    supersingularity_measure,
    write_profile_csv,
    write_slopes_csv,
)
from padicslopes.padic import INFINITY


class TestOldformPair:
    def test_generic(self):
        assert oldform_slope_pair(1, 12) == (1, 10)
        assert oldform_slope_pair(3, 12) == (3, 8)

    def test_pair_sums_to_weight_minus_one(self):
        for alpha, k in [(0, 12), (5, 16), (7, 16), (Fraction(9, 2), 20)]:
            lo, hi = oldform_slope_pair(alpha, k)
            assert lo + hi == k - 1

    def test_high_slope_clamps_to_middle(self):
        assert oldform_slope_pair(10, 16) == (Fraction(15, 2), Fraction(15, 2))

    def test_zero_eigenvalue(self):
        assert oldform_slope_pair(INFINITY, 12) == (Fraction(11, 2), Fraction(11, 2))


class TestMeasure:
    def test_5_12(self):
        m = supersingularity_measure(5, 12)
        assert m.masses == (Fraction(1, 11), Fraction(10, 11))

    def test_2_12(self):
        m = supersingularity_measure(2, 12)
        assert m.masses == (Fraction(3, 11), Fraction(8, 11))

    def test_59_16_exception(self):
        m = supersingularity_measure(59, 16)
        assert m.masses == (Fraction(1, 15), Fraction(14, 15))
        lo = m.masses[0]
        assert Fraction(1, 60) < lo < Fraction(59, 60)

    def test_oldform_count(self):
        from padicslopes.modforms import dim_cusp

        for p, k in [(5, 24), (7, 36)]:
            m = supersingularity_measure(p, k)
            assert m.oldform_count == 2 * dim_cusp(k)
            assert len(m.masses) == m.oldform_count

    def test_symmetry_oldforms(self):
        for p, k in [(2, 12), (5, 24), (7, 36), (59, 16)]:
            assert supersingularity_measure(p, k).is_symmetric()

    def test_pairwise_masses_sum_to_one(self):
        m = supersingularity_measure(5, 48)
        masses = sorted(m.masses)
        for lo, hi in zip(masses, reversed(masses)):
            assert lo + hi == 1

    def test_newforms(self):
        m = supersingularity_measure(5, 12, include_newforms=True)
        assert m.newform_count == 3
        assert m.masses.count(Fraction(5, 11)) == 3
        # newform masses sit off-center, so strict symmetry fails with them
        assert not m.is_symmetric()

    def test_empty_below_twelve(self):
        m = supersingularity_measure(5, 10)
        assert m.masses == ()

    def test_rejects_odd_weight(self):
        with pytest.raises(ValueError):
            supersingularity_measure(5, 13)


class TestSupportBound:
    def test_5_26(self):
        b = support_bound(5, 26)
        assert b.left_end == Fraction(1, 6) + Fraction(2, 25)

    def test_log_floor_vanishes_for_large_p(self):
        b = support_bound(101, 14)
        assert b.left_end == Fraction(1, 102)

    def test_complementarity(self):
        for p, k in [(5, 12), (7, 100), (59, 16)]:
            b = support_bound(p, k)
            assert b.left_end + b.right_end == 1


class TestMassInMiddle:
    def test_5_12_zero(self):
        m = supersingularity_measure(5, 12)
        b = support_bound(5, 12)
        assert mass_in_middle(m, b) == (0, 0)

    def test_empty_measure(self):
        m = supersingularity_measure(5, 10)
        b = support_bound(5, 10)
        assert mass_in_middle(m, b) == (0, 0)

    def test_59_16_two_inside(self):
        m = supersingularity_measure(59, 16)
        b = support_bound(59, 16)
        assert mass_in_middle(m, b) == (2, 1)

    def test_monotone_in_interval(self):
        # shrinking the interval never increases the count
        m = supersingularity_measure(59, 16)
        b = support_bound(59, 16)
        wide, _ = mass_in_middle(m, b)
        narrow = sum(
            1
            for x in m.masses
            if b.left_end + Fraction(1, 7) < x < b.right_end - Fraction(1, 7)
        )
        assert narrow <= wide

    def test_mismatched_cells_rejected(self):
        with pytest.raises(ValueError):
            mass_in_middle(supersingularity_measure(5, 12), support_bound(5, 14))


class TestRegularity:
    def test_5_vacuous(self):
        rep = is_regular(5)
        assert rep.regular and rep.vacuous

    def test_13_regular_via_tau(self):
        rep = is_regular(13)
        assert rep.regular and not rep.vacuous
        assert rep.k_range == (12, 14)

    def test_59_irregular_at_16(self):
        rep = is_regular(59)
        assert not rep.regular
        assert rep.witnesses[0] == (16, 1)

    def test_range_configurable(self):
        rep = is_regular(59, k_max=14)
        assert rep.regular  # the witness at k=16 is outside this range


class TestProfiles:
    def test_5_small_sweep_clean(self):
        table = middle_mass_profile(5, 12, 60)
        assert table.cutoff is None
        assert all(r.count_middle == 0 for r in table.rows)

    def test_newform_rows_always_in_middle(self):
        table = middle_mass_profile(5, 12, 30, include_newforms=True)
        for r in table.rows:
            if r.dim_new:
                assert r.count_middle >= r.dim_new

    def test_resource_guard(self):
        table = middle_mass_profile(5, 12, 400, max_dim=3)
        assert table.cutoff is not None
        assert table.rows and table.rows[-1].k < 400

    def test_csv_and_json(self, tmp_path):
        table = middle_mass_profile(59, 12, 16)
        csv_path = tmp_path / "profile.csv"
        write_profile_csv(table, str(csv_path))
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0].startswith("p,k,dim_old")
        row16 = [ln for ln in lines if ln.startswith("59,16")][0]
        assert row16.split(",")[4] == "2"
        assert "." not in row16  # exact rationals only
        d = profile_to_dict(table)
        assert d["rows"][-1]["count_middle"] == 2
        assert d["rows"][-1]["masses"] == ["1/15", "14/15"]

    def test_slopes_csv(self, tmp_path):
        path = tmp_path / "slopes.csv"
        write_slopes_csv([(2, 12), (2, 24), (5, 12)], str(path))
        lines = path.read_text().strip().splitlines()
        assert lines == ["p,k,slope", "2,12,3", "2,24,3", "2,24,7", "5,12,1"]
