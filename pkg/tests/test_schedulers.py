import itertools
import random
from fractions import Fraction as F

import pytest

from polysched.converters import ops_to_dps
from polysched.core import (
    PreconditionError,
    dps_instance,
    gstar,
    heat,
    max_degree,
    ops_instance,
    recurrence_time,
    schedule,
    validate_dps,
)
from polysched.instances import gen_disjoint_stars, gen_kn_adversarial, gen_random_dps, gen_random_ops
from polysched.schedulers import (
    RfConfig,
    color_edges,
    color_schedule,
    compact,
    period_estimate,
    polygreedy,
    reduce_fastest,
    schedule_low_density,
)


def assert_heat_floor(inst, sched):
    """Every valid covering schedule obeys the personal-growth lower bound."""
    rep = heat(sched, inst)
    assert rep.heat is not None and rep.heat >= gstar(inst)
    return rep


class TestReduceFastest:
    def test_single_edge_cadence(self):
        # morning selection: threshold met two mornings after a cut, cut at
        # dusk after the day's growth, so the cycle is 3 days at peak x + g
        inst = ops_instance(2, [(0, 1, F(1))])
        trace = reduce_fastest(inst, RfConfig(x=F(2), horizon=31))
        assert trace.max_heat_seen == 3
        cut_days = [t for t, d in enumerate(trace.schedule_prefix) if d]
        assert cut_days[:4] == [2, 5, 8, 11]

    def test_star_under_six(self):
        star = ops_instance(3, [(0, 1, F(1, 2)), (0, 2, F(1, 2))])
        trace = reduce_fastest(star, RfConfig(x=F(4), horizon=100))
        assert trace.max_heat_seen < 6 * gstar(star)

    def test_adversarial_k11(self):
        inst, tie = gen_kn_adversarial(11)
        trace = reduce_fastest(inst, RfConfig(x=F(4), horizon=500, tie_order=tie))
        assert trace.max_heat_seen >= F(59, 10)
        assert trace.max_heat_seen < 6

    def test_deterministic(self):
        for seed in range(5):
            inst = gen_random_ops(seed, 9, 0.5)
            cfg = RfConfig(x=F(4), horizon=300)
            t1 = reduce_fastest(inst, cfg)
            t2 = reduce_fastest(inst, cfg)
            assert t1 == t2

    def test_low_threshold_warns(self):
        inst = ops_instance(2, [(0, 1, F(1))])
        with pytest.warns(RuntimeWarning):
            reduce_fastest(inst, RfConfig(x=F(3, 2), horizon=10))

    def test_zero_horizon_rejected(self):
        inst = ops_instance(2, [(0, 1, F(1))])
        with pytest.raises(PreconditionError):
            reduce_fastest(inst, RfConfig(x=F(4), horizon=0))

    def test_bad_tie_order_rejected(self):
        inst = ops_instance(3, [(0, 1, F(1)), (1, 2, F(1))])
        with pytest.raises(PreconditionError):
            reduce_fastest(inst, RfConfig(x=F(4), horizon=5, tie_order=(0, 0)))

    def test_trace_shape(self):
        inst = gen_random_ops(3, 6, 0.6)
        cfg = RfConfig(x=F(4), horizon=50)
        trace = reduce_fastest(inst, cfg)
        assert len(trace.schedule_prefix) == 50
        assert set(trace.heats_final) == {e.index for e in inst.edges}
        assert trace.max_heat_seen >= max(trace.heats_final.values())

    def test_period_estimate(self):
        inst = gen_disjoint_stars(6)
        assert period_estimate(inst, F(4)) == 36  # (4+2) / (1/6)

    def test_bounded_below_x_plus_two_for_x_at_least_four(self):
        for x in (F(4), F(9, 2), F(5)):
            for seed in range(25):
                inst = gen_random_ops(seed, 10, 0.5)
                trace = reduce_fastest(inst, RfConfig(x=x, horizon=10 * period_estimate(inst, x)))
                assert trace.max_heat_seen < x + 2


class TestColoring:
    def brute_chromatic_index(self, inst):
        m = len(inst.edges)
        for k in range(1, m + 1):
            for combo in itertools.product(range(k), repeat=m):
                ok = True
                for v in range(len(inst.people)):
                    cs = [combo[e.index] for e in inst.edges if e.touches(v)]
                    if len(cs) != len(set(cs)):
                        ok = False
                        break
                if ok:
                    return k
        return m

    def test_path2(self):
        assert color_edges(ops_instance(3, [(0, 1, F(1)), (1, 2, F(1))])).num_colors == 2

    def test_star_k(self):
        for k in (2, 4, 6):
            star = ops_instance(k + 1, [(0, i + 1, F(1)) for i in range(k)])
            assert color_edges(star).num_colors == k

    def test_c5_needs_three(self):
        c5 = ops_instance(5, [(0, 1, F(1)), (1, 2, F(1)), (2, 3, F(1)), (3, 4, F(1)), (0, 4, F(1))])
        assert self.brute_chromatic_index(c5) == 3
        assert color_edges(c5).num_colors == 3

    def test_random_proper_within_delta_plus_one(self):
        rng = random.Random(14)
        for _ in range(60):
            n = rng.randint(2, 10)
            edges = [(u, v, F(1)) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < rng.choice([0.3, 0.7, 1.0])]
            if not edges:
                continue
            inst = ops_instance(n, edges)
            col = color_edges(inst)
            for v in range(n):
                cs = [col.colors[e.index] for e in inst.edges if e.touches(v)]
                assert len(cs) == len(set(cs))
            assert col.num_colors <= max_degree(inst) + 1

    def test_color_schedule_recurrence(self):
        tri = ops_instance(3, [(0, 1, F(1)), (0, 2, F(1)), (1, 2, F(1))])
        col = color_edges(tri)
        rr = color_schedule(tri, col)
        assert rr.period == 3
        assert all(recurrence_time(rr, e) == 3 for e in tri.edges)

    def test_color_schedule_validates_against_deadlines(self):
        for seed in range(8):
            inst = gen_random_ops(seed, 8, 0.5)
            col = color_edges(inst)
            rr = color_schedule(inst, col)
            target = ops_to_dps(inst, col.num_colors * max(inst.growth))
            assert validate_dps(rr, target) == []
            assert_heat_floor(inst, rr)

    def test_disjoint_stars_round_robin_heat(self):
        inst = gen_disjoint_stars(3)
        col = color_edges(inst)
        assert col.num_colors == 3
        rep = heat(color_schedule(inst, col), inst)
        assert rep.heat == 3  # C * max growth; >= 11/6 harmonic floor
        assert rep.heat >= F(11, 6)


class TestPolyGreedy:
    def test_star_44(self):
        sched = polygreedy(dps_instance(3, [(0, 1, 4), (0, 2, 4)]))
        assert sched.period == 4
        assert sorted(sched.days[0]) == [0] and sorted(sched.days[1]) == [1]

    def test_density_hypothesis_rejected(self):
        overfull = dps_instance(5, [(0, 1, 2), (0, 2, 4), (0, 3, 8), (0, 4, 8)])
        with pytest.raises(PreconditionError, match="density"):
            polygreedy(overfull)

    def test_power_of_two_hypothesis_rejected(self):
        with pytest.raises(PreconditionError, match="power of two"):
            polygreedy(dps_instance(3, [(0, 1, 4), (0, 2, 6)]))

    def test_path_444(self):
        inst = dps_instance(4, [(0, 1, 4), (1, 2, 4), (2, 3, 4)])
        sched = polygreedy(inst)
        assert validate_dps(sched, inst) == []

    def test_recurrence_exactly_f(self):
        for seed in range(20):
            inst = gen_random_dps(seed, 8, 0.3, (4, 8, 16, 32), density_cap=F(1, 2))
            sched = polygreedy(inst)
            assert validate_dps(sched, inst) == []
            for e in inst.edges:
                assert recurrence_time(sched, e) == inst.freq[e.index]


class TestLowDensity:
    def test_refusal_above_quarter(self):
        with pytest.raises(PreconditionError, match="1/4"):
            schedule_low_density(dps_instance(3, [(0, 1, 5), (0, 2, 9)]))

    def test_star_8_12(self):
        inst = dps_instance(3, [(0, 1, 8), (0, 2, 12)])
        sched = schedule_low_density(inst)
        assert validate_dps(sched, inst) == []
        assert sched.period == 8  # frequencies rounded down to (8, 8)

    def test_single_edge(self):
        inst = dps_instance(2, [(0, 1, 4)])
        sched = schedule_low_density(inst)
        assert validate_dps(sched, inst) == []

    def test_random_quarter_corpus(self):
        for seed in range(20):
            inst = gen_random_dps(seed, 8, 0.25, (8, 12, 16, 24, 32), density_cap=F(1, 4))
            sched = schedule_low_density(inst)
            assert validate_dps(sched, inst) == []


def random_covering_prefix(inst, rng, min_len):
    """A valid, arbitrary schedule prefix covering every edge."""
    days = []
    uncovered = {e.index for e in inst.edges}
    while uncovered or len(days) < min_len:
        day, busy = [], set()
        for e in sorted(inst.edges, key=lambda _: rng.random()):
            if rng.random() < 0.5 and e.u not in busy and e.v not in busy:
                day.append(e.index)
                busy.update((e.u, e.v))
                uncovered.discard(e.index)
        days.append(day)
        if len(days) > 50 * len(inst.edges) + min_len:
            for e in sorted(uncovered):
                days.append([e])
            uncovered = set()
    return schedule(days)


class TestCompact:
    def test_round_robin_interleaved_with_itself(self):
        # the interleaving pairs each truncated day with its color class,
        # so an edge recurs every 2C - 1 days and the 4x bound has slack
        tri = ops_instance(3, [(0, 1, F(1)), (0, 2, F(1)), (1, 2, F(1))])
        col = color_edges(tri)
        rr = color_schedule(tri, col)
        out = compact(tri, rr)
        assert out.period == 2 * col.num_colors
        rr_heat = heat(rr, tri).heat
        assert heat(out, tri).heat == (2 * col.num_colors - 1) * max(tri.growth)
        assert heat(out, tri).heat <= 4 * rr_heat

    def test_disjoint_stars_bound(self):
        inst = gen_disjoint_stars(3)
        optimal = schedule(
            [{0, 1, 3}, {0, 2, 4}, {0, 1, 5}, {0, 2, 3}, {0, 1, 4}, {0, 2, 5}]
        )  # per-star round robins over the lcm period, heat 1
        assert heat(optimal, inst).heat == 1
        out = compact(inst, optimal)
        assert heat(out, inst).heat <= 4

    def test_too_short_rejected(self):
        tri = ops_instance(3, [(0, 1, F(1)), (0, 2, F(1)), (1, 2, F(1))])
        with pytest.raises(PreconditionError):
            compact(tri, schedule([[0], [1]]))

    def test_missing_edge_rejected(self):
        tri = ops_instance(3, [(0, 1, F(1)), (0, 2, F(1)), (1, 2, F(1))])
        with pytest.raises(PreconditionError):
            compact(tri, schedule([[0], [1], [0], [1]]))

    def test_random_property(self):
        rng = random.Random(33)
        for seed in range(15):
            inst = gen_random_ops(seed, 7, 0.45)
            col = color_edges(inst)
            sa = random_covering_prefix(inst, rng, col.num_colors)
            out = compact(inst, sa)
            assert out.period == 2 * col.num_colors
            ha = heat(sa, inst).heat
            rep = assert_heat_floor(inst, out)
            assert rep.heat <= 4 * ha
            # recurrence structure: doubled inside the truncation, exact
            # round-robin outside it
            truncated = {e for t in range(col.num_colors) for e in sa.days[t]}
            for e in inst.edges:
                if e.index in truncated:
                    rt = recurrence_time(schedule(sa.days[: col.num_colors]), e)
                    assert recurrence_time(out, e) <= 2 * rt
                else:
                    assert recurrence_time(out, e) == 2 * col.num_colors
