import json
import math

import pytest

from thermocat import (
    GibbsContext,
    ProbDist,
    WorkBitSpec,
    compose_free_energy,
    default_alpha_grid,
    gibbs_dist,
    joint_context,
    renyi_free_energy,
    second_law_scan,
    tensor,
    tsallis_free_energy,
    work_bit_feasible,
    work_cost,
    work_distance,
    work_extract,
)
from thermocat.errors import OverflowToInfinity
from conftest import random_dist

CTX = GibbsContext((0.0, 2.0), 2.0)
THERMAL_02 = gibbs_dist(GibbsContext((0.0, 2.0), 0.2))
THERMAL_1 = gibbs_dist(GibbsContext((0.0, 2.0), 1.0))


class TestFreeEnergies:
    def test_thermal_state_floor(self):
        g = gibbs_dist(CTX)
        floor = -CTX.kBT * math.log(CTX.partition_fn)
        for a in ("0", "0.5", "1", "2", "inf"):
            assert math.isclose(renyi_free_energy(g, CTX, a), floor, rel_tol=1e-12)
            assert math.isclose(tsallis_free_energy(g, CTX, a), floor, rel_tol=1e-12)

    def test_order_one_gap_value(self):
        gap = renyi_free_energy(THERMAL_1, CTX, 1) - renyi_free_energy(
            gibbs_dist(CTX), CTX, 1
        )
        assert math.isclose(gap, 0.06481388045953612, rel_tol=1e-12)

    def test_families_agree_at_order_one(self, rng):
        for _ in range(20):
            p = random_dist(rng, 2)
            assert math.isclose(
                renyi_free_energy(p, CTX, 1),
                tsallis_free_energy(p, CTX, 1),
                rel_tol=1e-12,
            )

    def test_pure_excited_degenerate_context(self):
        ctx = GibbsContext((0.0, 0.0), 2.0)
        f = renyi_free_energy(ProbDist((1.0, 0.0)), ctx, "inf")
        assert abs(f) <= 1e-12


class TestCompose:
    def test_thermal_partner_is_additive(self, rng):
        ctx_m = GibbsContext((0.0, 1.0), 2.0)
        f_m = tsallis_free_energy(gibbs_dist(ctx_m), ctx_m, 2)
        for _ in range(20):
            f_s = tsallis_free_energy(random_dist(rng, 2), CTX, 2)
            got = compose_free_energy(f_s, f_m, CTX, ctx_m, 2)
            assert math.isclose(got, f_s + f_m, rel_tol=1e-12, abs_tol=1e-12)

    def test_order_one_additive(self, rng):
        ctx_m = GibbsContext((0.0, 1.0), 2.0)
        f_s = tsallis_free_energy(random_dist(rng, 2), CTX, 1)
        f_m = tsallis_free_energy(random_dist(rng, 2), ctx_m, 1)
        got = compose_free_energy(f_s, f_m, CTX, ctx_m, 1)
        assert math.isclose(got, f_s + f_m, rel_tol=1e-12)

    def test_matches_tensor_evaluation(self, rng):
        ctx_m = GibbsContext((0.0, 1.0), 2.0)
        for _ in range(50):
            p_s, p_m = random_dist(rng, 2), random_dist(rng, 2)
            f_s = tsallis_free_energy(p_s, CTX, 2)
            f_m = tsallis_free_energy(p_m, ctx_m, 2)
            composed = compose_free_energy(f_s, f_m, CTX, ctx_m, 2)
            direct = tsallis_free_energy(
                tensor(p_s, p_m), joint_context(CTX, ctx_m), 2
            )
            assert math.isclose(composed, direct, rel_tol=1e-12, abs_tol=1e-12)

    def test_rejects_infinite_input(self):
        with pytest.raises(OverflowToInfinity):
            compose_free_energy(math.inf, 0.0, CTX, CTX, 2)


class TestScan:
    def test_no_transition_allowed(self, rng):
        p = random_dist(rng, 2)
        rep = second_law_scan(p, p, CTX)
        assert rep.allowed
        assert all(abs(d) <= 1e-12 for d in rep.deltas_renyi)

    def test_two_qubit_demo_forward(self):
        rep = second_law_scan(THERMAL_02, THERMAL_1, CTX, grid=["0", "1", "inf"])
        assert rep.allowed
        assert rep.deltas_renyi[0] == 0.0
        assert math.isclose(rep.deltas_renyi[1], -0.41011566909697883, rel_tol=1e-10)
        assert math.isclose(rep.deltas_renyi[2], -0.6069563793215099, rel_tol=1e-10)
        assert math.isclose(rep.deltas_renyi_raw[1], -0.8202313381939577, rel_tol=1e-10)
        assert math.isclose(rep.deltas_renyi_raw[2], -1.2139127586430198, rel_tol=1e-10)

    def test_two_qubit_demo_reverse_forbidden(self):
        rep = second_law_scan(THERMAL_1, THERMAL_02, CTX, grid=["0", "1", "inf"])
        assert not rep.allowed
        assert rep.first_violation is not None
        assert str(rep.first_violation[0]) == "1"

    def test_default_grid_shape(self):
        grid = default_alpha_grid()
        tokens = [str(a) for a in grid]
        assert tokens[0] == "0"
        assert "1" in tokens
        assert tokens[-1] == "inf"
        assert len(tokens) == len(set(tokens))

    def test_json_round_trip(self):
        rep = second_law_scan(THERMAL_02, THERMAL_1, CTX, grid=["0", "1", "2"])
        blob = rep.to_json()
        assert json.loads(blob)["allowed"] is True

    def test_family_verdicts_agree(self, rng):
        for _ in range(50):
            p, pp = random_dist(rng, 3), random_dist(rng, 3)
            ctx = GibbsContext((0.0, 1.0, 2.0), 1.0)
            rep = second_law_scan(p, pp, ctx)
            renyi_ok = all(d <= rep.tol for d in rep.deltas_renyi)
            tsallis_ok = all(d <= rep.tol for d in rep.deltas_tsallis)
            assert renyi_ok == tsallis_ok == rep.allowed

    def test_thermal_ancilla_leaves_scan_unchanged(self, rng):
        ctx_m = GibbsContext((0.0, 1.0), 2.0)
        gm = gibbs_dist(ctx_m)
        joint = joint_context(CTX, ctx_m)
        for _ in range(20):
            p, pp = random_dist(rng, 2), random_dist(rng, 2)
            base = second_law_scan(p, pp, CTX, grid=["0", "0.5", "1", "2", "inf"])
            lifted = second_law_scan(
                tensor(p, gm), tensor(pp, gm), joint, grid=["0", "0.5", "1", "2", "inf"]
            )
            for b, l in zip(base.deltas_renyi, lifted.deltas_renyi):
                assert math.isclose(b, l, rel_tol=1e-10, abs_tol=1e-10)
            assert base.allowed == lifted.allowed


class TestWork:
    def test_zero_for_identity(self, rng):
        p = random_dist(rng, 2)
        assert work_distance(p, p, CTX) == 0.0
        assert work_extract(p, p, CTX) == 0.0
        assert work_cost(p, p, CTX) == 0.0

    def test_two_qubit_demo_infimum(self):
        # forward pair: the order-zero gap vanishes, so the infimum is zero
        got = work_distance(THERMAL_02, THERMAL_1, CTX)
        assert abs(got) <= 1e-12

    def test_full_rank_to_thermal(self, rng):
        p = random_dist(rng, 2)
        g = gibbs_dist(CTX)
        assert abs(work_distance(p, g, CTX)) <= 1e-12

    def test_cost_exceeds_extraction(self, rng):
        g = gibbs_dist(CTX)
        for _ in range(30):
            p = random_dist(rng, 2)
            cost = work_cost(g, p, CTX)
            gain = work_extract(p, g, CTX)
            assert cost >= gain - 1e-12

    def test_cost_equals_extraction_at_order_one_only(self, rng):
        g = gibbs_dist(CTX)
        p = random_dist(rng, 2)
        cost = work_cost(g, p, CTX, grid=["1"])
        gain = work_extract(p, g, CTX, grid=["1"])
        assert math.isclose(cost, gain, rel_tol=1e-12, abs_tol=1e-12)

    def test_work_bit(self):
        assert work_bit_feasible(THERMAL_02, THERMAL_02, CTX, WorkBitSpec(0.0))
        # formation-type budget: min raw gap -1.214 nats >= beta*dE = -4
        assert work_bit_feasible(THERMAL_02, THERMAL_1, CTX, WorkBitSpec(-2.0))
        # demand just above the achievable infimum fails
        gain = work_extract(THERMAL_1, THERMAL_02, CTX)
        too_much = (gain + 1e-3) * CTX.kBT
        assert not work_bit_feasible(THERMAL_1, THERMAL_02, CTX, WorkBitSpec(too_much))
