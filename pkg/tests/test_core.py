import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thermocat import (
    AlphaValue,
    GibbsContext,
    ProbDist,
    as_alpha,
    gibbs_dist,
    joint_context,
    make_prob_dist,
    tensor,
    uniform,
)
from thermocat.errors import DomainError, NotADistribution


class TestMakeProbDist:
    def test_identity_case(self):
        p = make_prob_dist((0.5, 0.5), tol=1e-9)
        assert p.weights == (0.5, 0.5)

    def test_renormalizes_within_tol(self):
        p = make_prob_dist((0.6, 0.4000000001), tol=1e-6)
        assert math.isclose(sum(p.weights), 1.0, abs_tol=1e-15)

    def test_rejects_bad_sum(self):
        with pytest.raises(NotADistribution):
            make_prob_dist((0.7, 0.4), tol=1e-9)

    def test_rejects_large_negative(self):
        with pytest.raises(NotADistribution):
            make_prob_dist((1.1, -0.1), tol=1e-9)

    def test_clamps_tiny_negative(self):
        p = make_prob_dist((1.0 + 5e-10, -5e-10), tol=1e-9)
        assert p.weights[1] == 0.0

    def test_idempotent(self):
        p = make_prob_dist((0.3, 0.69999999995, 5e-11), tol=1e-9)
        q = make_prob_dist(p.weights, tol=1e-9)
        assert p.weights == q.weights


class TestGibbs:
    def test_degenerate_levels(self):
        g = gibbs_dist(GibbsContext((0.0, 0.0), 2.0))
        assert g.weights == (0.5, 0.5)

    def test_two_level(self):
        g = gibbs_dist(GibbsContext((0.0, 2.0), 2.0))
        assert math.isclose(g.weights[0], 0.9820137900379085, rel_tol=1e-14)
        assert math.isclose(g.weights[1], 0.017986209962091555, rel_tol=1e-14)

    def test_four_level_sum_hamiltonian(self):
        ctx = joint_context(GibbsContext((0, 2), 2.0), GibbsContext((0, 2), 2.0))
        assert ctx.energies == (0.0, 2.0, 2.0, 4.0)
        g = gibbs_dist(ctx)
        expect = (0.9643510838246173, 0.017662706213291114,
                  0.017662706213291114, 0.0003235037488004416)
        assert np.allclose(g.weights, expect, rtol=1e-13)

    def test_energy_shift_invariance(self, rng):
        for _ in range(50):
            e = rng.normal(size=4)
            beta = float(rng.uniform(0.1, 3))
            c = float(rng.normal())
            g1 = gibbs_dist(GibbsContext(tuple(e), beta))
            g2 = gibbs_dist(GibbsContext(tuple(e + c), beta))
            assert np.allclose(g1.weights, g2.weights, atol=1e-12)

    def test_rejects_bad_beta(self):
        with pytest.raises(DomainError):
            GibbsContext((0, 1), 0.0)


class TestTensor:
    def test_with_point_mass(self):
        out = tensor(ProbDist((1.0, 0.0)), ProbDist((0.3, 0.7)))
        assert out.weights == (0.3, 0.7, 0.0, 0.0)

    def test_uniform_times_uniform(self):
        assert tensor(uniform(2), uniform(2)).weights == uniform(4).weights

    def test_two_qubit_demo_initial(self):
        p2 = gibbs_dist(GibbsContext((0, 2), 0.2))
        p1 = gibbs_dist(GibbsContext((0, 2), 0.1))
        out = tensor(p2, p1)
        expect = (0.32917882930128367, 0.26950883081116833,
                  0.2206551680111943, 0.1806571718763537)
        assert np.allclose(out.weights, expect, rtol=1e-13)

    @given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 10 ** 6))
    @settings(max_examples=60, deadline=None)
    def test_preserves_normalization(self, da, db, seed):
        r = np.random.default_rng(seed)
        a = ProbDist(tuple(r.dirichlet(np.ones(da))))
        b = ProbDist(tuple(r.dirichlet(np.ones(db))))
        assert abs(sum(tensor(a, b).weights) - 1.0) <= 1e-12


class TestAlphaValue:
    def test_normalizes_zero_and_one(self):
        assert AlphaValue.finite(0.0).is_zero
        assert AlphaValue.finite(1.0).is_one
        assert AlphaValue.finite(math.inf).is_pos_inf

    def test_parse_tokens(self):
        assert as_alpha("inf").is_pos_inf
        assert as_alpha("-inf").is_neg_inf
        assert as_alpha("0").is_zero
        assert as_alpha("2.5").value == 2.5
        assert str(as_alpha(1)) == "1"

    def test_parse_rejects_garbage(self):
        with pytest.raises(DomainError):
            as_alpha("spam")
        with pytest.raises(DomainError):
            AlphaValue.finite(math.nan)
