import numpy as np
import pytest

from unionbounds import (
    InfeasibleSummaryError,
    MomentSummary,
    chi,
    de_caen_bound,
    ds_bound,
    gap_lower_bound,
    gk_bound,
    kat_bound,
    kat_plus_gap_bound,
    pairwise_matrix,
    shifted_event_min,
    two_moment_min,
    yat_bound,
)
from unionbounds.analytic import shared_top_mass, shift_interval, shifted_event_slope, symmetric_pinv
from unionbounds.simplex import LinearProgram, solve

from oracles import two_moment_enumeration

TABLE_TOL = 5e-4


def disjoint(alpha):
    return MomentSummary.from_alpha_gamma(alpha, alpha)


class TestChi:
    @pytest.mark.parametrize("x, expected", [(3, 2), (2.5, 2), (1, 1), (2, 1), (4.0 + 1e-12, 3), (1.999, 1)])
    def test_values(self, x, expected):
        assert chi(x) == expected

    def test_below_one(self):
        with pytest.raises(ValueError):
            chi(0.5)


class TestTwoMomentMin:
    def test_derived_value(self):
        # oracle: exhaustive support-pair enumeration and the simplex on a(1..3)
        oracle, pair = two_moment_enumeration(0.1, 0.21, 3)
        lp = solve(LinearProgram(1 / np.arange(1, 4), a_eq=[[1, 1, 1], [1, 2, 3]], b_eq=[0.1, 0.21]))
        assert pair == (2, 3)
        assert oracle == pytest.approx(lp.value, abs=1e-15)
        assert oracle == pytest.approx(29 / 600, abs=1e-15)
        assert two_moment_min(0.1, 0.21, 3) == pytest.approx(29 / 600, abs=1e-15)

    def test_aggregate_system_v(self):
        assert two_moment_min(0.5, 0.74, 3) == pytest.approx(0.38, abs=1e-12)

    def test_all_mass_degree_one(self):
        assert two_moment_min(0.3, 0.3, 3) == pytest.approx(0.3)

    def test_zero_alpha(self):
        assert two_moment_min(0.0, 0.0, 4) == 0.0

    def test_ratio_out_of_range(self):
        with pytest.raises(ValueError):
            two_moment_min(0.1, 0.5, 3)
        with pytest.raises(ValueError):
            two_moment_min(0.1, 0.05, 3)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_chi_and_floor_agree_at_integer_ratios(self, n):
        from unionbounds.analytic import _kernel

        alpha = 0.37
        for r in range(1, n + 1):
            gamma = r * alpha
            with_floor = _kernel(alpha, gamma, r)
            with_chi = _kernel(alpha, gamma, chi(r))
            assert with_floor == pytest.approx(alpha / r, abs=1e-15)
            assert with_chi == pytest.approx(alpha / r, abs=1e-15)


class TestKat:
    def test_system_v(self, paper_summaries):
        assert kat_bound(paper_summaries["V"]) == pytest.approx(0.3833, abs=TABLE_TOL)

    def test_system_vii(self, paper_summaries):
        assert kat_bound(paper_summaries["VII"]) == pytest.approx(0.4434, abs=TABLE_TOL)

    def test_disjoint(self):
        assert kat_bound(disjoint([0.1, 0.2, 0.3])) == pytest.approx(0.6, abs=1e-15)

    def test_inconsistent(self):
        with pytest.raises(ValueError):
            kat_bound(MomentSummary.from_alpha_gamma([0.1, 0.1], [0.3, 0.1]))


class TestYat:
    def test_system_v(self, paper_summaries):
        s = paper_summaries["V"]
        assert shared_top_mass(s) == pytest.approx(0.01, abs=1e-12)
        assert yat_bound(s) == pytest.approx(0.3900, abs=TABLE_TOL)

    def test_system_vi(self, paper_summaries):
        assert yat_bound(paper_summaries["VI"]) == pytest.approx(0.3205, abs=TABLE_TOL)

    def test_no_shift_equals_kat(self):
        s = MomentSummary.from_alpha_gamma([0.2, 0.3, 0.25], [0.3, 0.4, 0.3])
        assert shared_top_mass(s) == 0.0
        assert yat_bound(s) == pytest.approx(kat_bound(s), abs=1e-15)

    def test_infeasible(self):
        # event 1 sits entirely at degree 2, so event 2 would need the same mass
        s = MomentSummary.from_alpha_gamma([0.5, 0.1], [1.0, 0.2])
        with pytest.raises(InfeasibleSummaryError):
            yat_bound(s)
        with pytest.raises(InfeasibleSummaryError):
            gap_lower_bound(s)

    def test_single_event(self):
        assert yat_bound(MomentSummary.from_alpha_gamma([0.4], [0.4])) == pytest.approx(0.4)


class TestShiftedEventMin:
    def test_zero_shift_is_kat_term(self):
        for alpha, gamma in [(0.1, 0.15), (0.2, 0.265), (0.3, 0.6)]:
            assert shifted_event_min(0.0, alpha, gamma, 3) == pytest.approx(two_moment_min(alpha, gamma, 3), abs=1e-15)

    def test_system_v_first_event(self, paper_summaries):
        assert shifted_event_min(0.01, 0.1, 0.21, 3) == pytest.approx(0.045 + 0.01 / 3, abs=1e-12)
        s = paper_summaries["V"]
        total = sum(shifted_event_min(0.01, a, g, 3) for a, g in zip(s.alpha, s.gamma))
        assert total == pytest.approx(0.39, abs=1e-12)

    def test_all_mass_at_top(self):
        assert shifted_event_min(0.2, 0.2, 0.8, 4) == pytest.approx(0.05, abs=1e-15)

    def test_outside_interval(self):
        with pytest.raises(ValueError):
            shifted_event_min(0.2, 0.1, 0.21, 3)


class TestGap:
    def test_system_v(self, paper_summaries):
        assert gap_lower_bound(paper_summaries["V"]) == pytest.approx(0.0067, abs=TABLE_TOL)

    def test_system_vi(self, paper_summaries):
        assert gap_lower_bound(paper_summaries["VI"]) == pytest.approx(0.0206, abs=TABLE_TOL)

    def test_zero_shift(self):
        assert gap_lower_bound(disjoint([0.2, 0.3])) == 0.0

    def test_kat_plus_gap(self, paper_summaries):
        assert kat_plus_gap_bound(paper_summaries["V"]) == pytest.approx(0.3833 + 0.0067, abs=TABLE_TOL)
        assert kat_plus_gap_bound(paper_summaries["VI"]) == pytest.approx(0.2769 + 0.0206, abs=TABLE_TOL)
        s = disjoint([0.2, 0.3])
        assert kat_plus_gap_bound(s) == kat_bound(s)


class TestDawsonSankoff:
    def test_system_v(self, paper_summaries):
        assert ds_bound(paper_summaries["V"]) == pytest.approx(0.3800, abs=TABLE_TOL)

    def test_system_viii(self, paper_summaries):
        assert ds_bound(paper_summaries["VIII"]) == pytest.approx(0.5395, abs=TABLE_TOL)

    def test_single_event(self):
        assert ds_bound(disjoint([0.35])) == pytest.approx(0.35)


class TestDeCaen:
    def test_system_v(self, paper_summaries):
        assert de_caen_bound(paper_summaries["V"]) == pytest.approx(0.3495, abs=TABLE_TOL)

    def test_system_vii(self, paper_summaries):
        assert de_caen_bound(paper_summaries["VII"]) == pytest.approx(0.4186, abs=TABLE_TOL)

    def test_disjoint(self):
        assert de_caen_bound(disjoint([0.1, 0.2])) == pytest.approx(0.3)


class TestGallotKounias:
    def test_system_v(self, paper_systems, paper_summaries):
        b = pairwise_matrix(paper_systems["V"])
        assert gk_bound(b, paper_summaries["V"].alpha) == pytest.approx(0.3813, abs=TABLE_TOL)

    def test_system_viii(self, paper_systems, paper_summaries):
        b = pairwise_matrix(paper_systems["VIII"])
        assert gk_bound(b, paper_summaries["VIII"].alpha) == pytest.approx(0.5390, abs=TABLE_TOL)

    def test_diagonal(self):
        alpha = np.array([0.1, 0.2, 0.3])
        assert gk_bound(np.diag(alpha), alpha) == pytest.approx(0.6)

    def test_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            gk_bound([[0.1, 0.05], [0.0, 0.2]], [0.1, 0.2])

    def test_pinv_matches_moore_penrose_conditions(self):
        # rank-deficient: two identical events
        b = np.array([[0.2, 0.2, 0.0], [0.2, 0.2, 0.0], [0.0, 0.0, 0.3]])
        p = symmetric_pinv(b)
        np.testing.assert_allclose(b @ p @ b, b, atol=1e-12)
        np.testing.assert_allclose(p @ b @ p, p, atol=1e-12)
        np.testing.assert_allclose(p, p.T, atol=1e-12)
        assert gk_bound(b, np.diag(b)) == pytest.approx(0.5)


def _random_shift_case(rng):
    n = int(rng.integers(3, 9))
    alpha = rng.uniform(0.05, 0.5)
    gamma = alpha * rng.uniform(1, n - 1e-3)
    return n, alpha, gamma


@pytest.mark.parametrize("seed", range(100))
def test_shifted_event_min_monotone_and_convex(seed):
    rng = np.random.default_rng(seed)
    n, alpha, gamma = _random_shift_case(rng)
    lo, hi = shift_interval(alpha, gamma, n)
    xs = np.sort(rng.uniform(lo, hi, 40))
    f = np.array([shifted_event_min(x, alpha, gamma, n) for x in xs])
    assert np.all(np.diff(f) >= -1e-12)
    for x1, x2 in zip(xs[:-1], xs[1:]):
        mid = shifted_event_min((x1 + x2) / 2, alpha, gamma, n)
        ends = (shifted_event_min(x1, alpha, gamma, n) + shifted_event_min(x2, alpha, gamma, n)) / 2
        assert mid <= ends + 1e-12


@pytest.mark.parametrize("seed", range(100))
def test_slope_matches_finite_differences(seed):
    rng = np.random.default_rng(1000 + seed)
    n, alpha, gamma = _random_shift_case(rng)
    lo, hi = shift_interval(alpha, gamma, n)
    h = 1e-6
    checked = 0
    for x in rng.uniform(lo + 2 * h, hi - 2 * h, 20):
        q_lo = (gamma - n * (x + 2 * h)) / (alpha - x - 2 * h)
        q_hi = (gamma - n * (x - 2 * h)) / (alpha - x + 2 * h)
        if np.floor(q_lo) != np.floor(q_hi) or abs(q_hi - round(q_hi)) < 1e-6:
            continue  # too close to a breakpoint
        fd = (shifted_event_min(x + h, alpha, gamma, n) - shifted_event_min(x - h, alpha, gamma, n)) / (2 * h)
        assert shifted_event_slope(x, alpha, gamma, n) == pytest.approx(fd, abs=1e-4)
        checked += 1
    assert checked > 0


def test_gap_bound_on_random_summaries():
    from unionbounds import moment_summary
    from unionbounds.rng import random_system

    for seed in range(300):
        s = moment_summary(random_system(seed, 2 + seed % 4, 1 + seed % 11))
        kat, kpg, yat = kat_bound(s), kat_plus_gap_bound(s), yat_bound(s)
        assert kat <= kpg + 1e-12
        assert kpg <= yat + 1e-12
        if shared_top_mass(s) == 0:
            assert yat == pytest.approx(kat, abs=1e-15)
