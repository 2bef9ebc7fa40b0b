"""Comparators and the adaptive relaxation controller."""

import math
import random

import pytest

from swarmrelax.core import Goodness
from swarmrelax.handling import (
    EPS_R_FLOOR,
    AcrState,
    HandlerMode,
    compare_bch,
    compare_relaxed,
    init_eps_r,
    update_eps_r,
)


def G(f_obj, f_con):
    return Goodness(f_obj=f_obj, f_con=f_con)


def random_goodness(rng):
    f_con = 0.0 if rng.random() < 0.3 else rng.uniform(0.0, 2.0)
    return G(rng.uniform(-5.0, 5.0), f_con)


class TestHandlerMode:
    def test_adaptive_flags(self):
        assert not HandlerMode.BCH.adaptive
        assert HandlerMode.ACR1.adaptive
        assert HandlerMode.ACR2.adaptive

    def test_values(self):
        assert HandlerMode("bch") is HandlerMode.BCH
        assert HandlerMode("acr2") is HandlerMode.ACR2


class TestCompareBch:
    def test_lower_violation_wins_regardless_of_objective(self):
        assert compare_bch(G(100.0, 0.1), G(-100.0, 0.2)) < 0
        assert compare_bch(G(-100.0, 0.2), G(100.0, 0.1)) > 0

    def test_feasible_beats_infeasible(self):
        assert compare_bch(G(9.0, 0.0), G(1.0, 1e-9)) < 0

    def test_equal_violation_falls_back_to_objective(self):
        assert compare_bch(G(1.0, 0.0), G(2.0, 0.0)) < 0
        assert compare_bch(G(2.0, 0.5), G(1.0, 0.5)) > 0

    def test_exact_tie(self):
        assert compare_bch(G(1.0, 0.3), G(1.0, 0.3)) == 0

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            compare_bch(G(float("nan"), 0.0), G(0.0, 0.0))


class TestCompareRelaxed:
    def test_violations_below_threshold_are_equivalent(self):
        # Both clamp to eps_r, so the objective decides.
        assert compare_relaxed(G(2.0, 0.3), G(3.0, 0.5), eps_r=0.5) < 0
        assert compare_relaxed(G(3.0, 0.0), G(2.0, 0.49), eps_r=0.5) > 0

    def test_above_threshold_still_ordered_by_violation(self):
        assert compare_relaxed(G(5.0, 0.6), G(-5.0, 0.7), eps_r=0.5) < 0

    def test_mixed_clamp(self):
        # One side inside the relaxed region, the other outside.
        assert compare_relaxed(G(10.0, 0.1), G(-10.0, 0.9), eps_r=0.5) < 0

    def test_zero_threshold_matches_bch_on_random_pairs(self):
        rng = random.Random(2024)
        for _ in range(10_000):
            a, b = random_goodness(rng), random_goodness(rng)
            assert compare_relaxed(a, b, eps_r=0.0) == compare_bch(a, b)

    def test_rejects_negative_threshold(self):
        with pytest.raises(ValueError):
            compare_relaxed(G(0.0, 0.0), G(0.0, 0.0), eps_r=-1e-9)


class TestPreorderProperties:
    def test_bch_is_total_preorder(self):
        rng = random.Random(7)
        for _ in range(10_000):
            a, b, c = (random_goodness(rng) for _ in range(3))
            assert compare_bch(a, a) == 0
            assert compare_bch(a, b) == -compare_bch(b, a)
            # transitivity of "not worse"
            if compare_bch(a, b) <= 0 and compare_bch(b, c) <= 0:
                assert compare_bch(a, c) <= 0

    def test_relaxed_is_total_preorder(self):
        rng = random.Random(8)
        for _ in range(5_000):
            eps = rng.choice([0.0, 0.1, 1.0])
            a, b, c = (random_goodness(rng) for _ in range(3))
            assert compare_relaxed(a, a, eps) == 0
            assert compare_relaxed(a, b, eps) == -compare_relaxed(b, a, eps)
            if compare_relaxed(a, b, eps) <= 0 and compare_relaxed(b, c, eps) <= 0:
                assert compare_relaxed(a, c, eps) <= 0


class TestInitEpsR:
    def test_seeds_with_largest_violation(self):
        repo = [G(0.0, 0.2), G(0.0, 1.7), G(0.0, 0.0)]
        assert init_eps_r(repo) == 1.7

    def test_all_feasible_start(self):
        assert init_eps_r([G(0.0, 0.0), G(1.0, 0.0)]) == 0.0

    def test_empty_repository_rejected(self):
        with pytest.raises(ValueError):
            init_eps_r([])


class TestAcrState:
    def test_for_run_seeds_threshold_and_midpoint(self):
        repo = [G(0.0, 0.4), G(0.0, 0.9)]
        state = AcrState.for_run(2000, repo)
        assert state.eps_r == 0.9
        assert state.t_th == 1000.0
        assert state.total_cycles == 2000

    def test_default_coefficients(self):
        state = AcrState(eps_r=1.0, t_th=500.0, total_cycles=1000)
        assert (state.r_l, state.r_u) == (0.25, 0.75)
        assert (state.beta_l, state.beta_u, state.beta_f) == (0.618, 1.382, 0.618)

    def test_rejects_bad_ratio_band(self):
        with pytest.raises(ValueError):
            AcrState(eps_r=1.0, t_th=1.0, total_cycles=2, r_l=0.8, r_u=0.2)

    def test_rejects_bad_betas(self):
        with pytest.raises(ValueError):
            AcrState(eps_r=1.0, t_th=1.0, total_cycles=2, beta_u=0.9)
        with pytest.raises(ValueError):
            AcrState(eps_r=1.0, t_th=1.0, total_cycles=2, beta_l=1.1)


REPO_MIXED = [G(0.0, 0.0), G(0.0, 0.1), G(0.0, 0.5), G(0.0, 0.9)]


def fresh_state(eps_r, total_cycles=2000):
    return AcrState(eps_r=eps_r, t_th=0.5 * total_cycles, total_cycles=total_cycles)


class TestUpdateEpsR:
    def test_balanced_ratio_keeps_threshold(self):
        # two of four repository members sit inside the relaxed region
        state = fresh_state(0.2)
        update_eps_r(state, REPO_MIXED, t=10, mode=HandlerMode.ACR1)
        assert state.eps_r == 0.2

    def test_small_ratio_grows_threshold(self):
        # only the feasible member is inside: ratio 1/4 hits the lower band
        state = fresh_state(0.05)
        update_eps_r(state, REPO_MIXED, t=10, mode=HandlerMode.ACR1)
        assert state.eps_r == pytest.approx(0.05 * 1.382)

    def test_large_ratio_shrinks_threshold(self):
        repo = [G(0.0, 0.0), G(0.0, 0.0), G(0.0, 0.0), G(0.0, 0.9)]
        state = fresh_state(0.5)
        update_eps_r(state, repo, t=10, mode=HandlerMode.ACR1)
        assert state.eps_r == pytest.approx(0.5 * 0.618)

    def test_band_edges_trigger(self):
        # ratio exactly r_l grows, ratio exactly r_u shrinks
        state = fresh_state(0.05)
        update_eps_r(state, REPO_MIXED, t=10, mode=HandlerMode.ACR1)
        assert state.eps_r > 0.05
        repo = [G(0.0, 0.0), G(0.0, 0.1), G(0.0, 0.2), G(0.0, 0.9)]
        state = fresh_state(0.3)
        update_eps_r(state, repo, t=10, mode=HandlerMode.ACR1)
        assert state.eps_r == pytest.approx(0.3 * 0.618)

    def test_forcing_applies_after_midpoint(self):
        state = fresh_state(0.2)
        update_eps_r(state, REPO_MIXED, t=1000, mode=HandlerMode.ACR2)
        assert state.eps_r == pytest.approx(0.2 * 0.618)

    def test_forcing_stacks_on_ratio_step(self):
        state = fresh_state(0.05)
        update_eps_r(state, REPO_MIXED, t=1500, mode=HandlerMode.ACR2)
        assert state.eps_r == pytest.approx(0.05 * 1.382 * 0.618)

    def test_no_forcing_before_midpoint(self):
        state = fresh_state(0.2)
        update_eps_r(state, REPO_MIXED, t=999, mode=HandlerMode.ACR2)
        assert state.eps_r == 0.2

    def test_acr1_never_forces(self):
        state = fresh_state(0.2)
        update_eps_r(state, REPO_MIXED, t=1999, mode=HandlerMode.ACR1)
        assert state.eps_r == 0.2

    def test_tiny_threshold_collapses_to_zero(self):
        repo = [G(0.0, 0.0), G(0.0, 0.0), G(0.0, 0.0), G(0.0, 0.9)]
        state = fresh_state(EPS_R_FLOOR)
        update_eps_r(state, repo, t=10, mode=HandlerMode.ACR1)
        assert state.eps_r == 0.0

    def test_zero_threshold_is_absorbing(self):
        state = fresh_state(0.0)
        update_eps_r(state, REPO_MIXED, t=1800, mode=HandlerMode.ACR2)
        assert state.eps_r == 0.0

    def test_returns_new_threshold(self):
        state = fresh_state(0.2)
        result = update_eps_r(state, REPO_MIXED, t=1000, mode=HandlerMode.ACR2)
        assert result == state.eps_r

    def test_rejects_plain_mode(self):
        state = fresh_state(0.2)
        with pytest.raises(ValueError):
            update_eps_r(state, REPO_MIXED, t=10, mode=HandlerMode.BCH)

    def test_threshold_stays_finite_and_nonnegative(self):
        rng = random.Random(11)
        state = fresh_state(1.0, total_cycles=500)
        for t in range(1, 501):
            repo = [random_goodness(rng) for _ in range(10)]
            update_eps_r(state, repo, t=t, mode=HandlerMode.ACR2)
            assert math.isfinite(state.eps_r)
            assert state.eps_r >= 0.0
