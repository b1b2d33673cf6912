"""Latency cover walks: phase construction, exact oracle, decay recurrence."""

from fractions import Fraction

import pytest

from latcov.errors import CapExceeded, Uncoverable
from latcov.instances.generators import random_instance
from latcov.instances.metrics import GridPoints, metric_from_matrix, uniform_metric
from latcov.instances.valuations import ValuationSet, check_submodular
from latcov.mlsc import (LatencyTour, ResidualValuation, alg_mlsc,
                         brute_force_latency, check_mlsc_recurrence,
                         mlsc_checkpoint_base, uncovered_after)
from latcov.orienteering import SopResult, sop_exact, sop_recursive_greedy
from latcov.ranking import alg_ag, brute_force_ranking

from util import pairwise_submodular

PATH_METRIC = metric_from_matrix([[0, 2, 5], [2, 0, 3], [5, 3, 0]])


def mlsc_instance(seed, n=6):
    kind = "uniform-metric" if seed % 2 == 0 else "euclidean-grid-metric"
    return random_instance(kind, n, seed)


def test_from_walk_prefix_and_cover_times():
    vs = ValuationSet.singlegroup(3, [[1], [2]], [1, 1])
    tour = LatencyTour.from_walk(PATH_METRIC, vs, [0, 1, 2])
    assert tour.prefix == (0, 2, 5)
    assert tour.cover_times == (2, 5)
    assert tour.objective == 7


def test_from_walk_rejects_bad_walks():
    vs = ValuationSet.singlegroup(3, [[1], [2]], [1, 1])
    with pytest.raises(ValueError):
        LatencyTour.from_walk(PATH_METRIC, vs, [1, 0, 2])
    with pytest.raises(Uncoverable):
        LatencyTour.from_walk(PATH_METRIC, vs, [0, 1])


def test_residual_valuation_is_monotone_submodular():
    for seed in range(6):
        inst = mlsc_instance(seed, n=5)
        for s_mask in (1, 3, 9):
            res = ResidualValuation(inst.valuations.functions, s_mask)
            assert pairwise_submodular(res, 5)
            assert check_submodular(res, 5)


def test_brute_force_single_vertex():
    vs = ValuationSet.singlegroup(3, [[2]], [1])
    opt = brute_force_latency(PATH_METRIC, vs)
    assert opt.objective == PATH_METRIC.d(0, 2)


def test_brute_force_two_functions_near_first():
    vs = ValuationSet.singlegroup(3, [[1], [2]], [1, 1])
    opt = brute_force_latency(PATH_METRIC, vs)
    both = [LatencyTour.from_walk(PATH_METRIC, vs, [0, 1, 2]),
            LatencyTour.from_walk(PATH_METRIC, vs, [0, 2, 1])]
    assert opt.objective == min(t.objective for t in both) == 7
    assert opt.walk == (0, 1, 2)


def test_brute_force_uniform_matches_ranking_objective():
    # on a uniform metric every hop costs 1 and the root covers nothing,
    # so the best walk's latency equals the best ranking objective
    for seed in range(8):
        inst = random_instance("uniform-metric", 5, seed)
        latency = brute_force_latency(inst.metric, inst.valuations)
        ranking = brute_force_ranking(inst.valuations)
        assert latency.objective == ranking.objective


def test_brute_force_cap():
    vs = ValuationSet.singlegroup(8, [[1]], [1])
    with pytest.raises(CapExceeded):
        brute_force_latency(uniform_metric(8), vs)


def test_single_target_objective_is_distance():
    for seed in range(6):
        inst = mlsc_instance(seed, n=6)
        metric = inst.metric
        target = 3
        vs = ValuationSet.singlegroup(6, [[target]], [1])
        tour, log = alg_mlsc(metric, vs, sop_exact, 1, 1)
        assert tour.cover_times == (metric.d(0, target),)
        assert tour.objective == metric.d(0, target)
        # ... and within the phase checkpoint that first affords the target
        base = mlsc_checkpoint_base(vs.alpha, 1, 1)
        k = 0
        while (1 << k) < metric.d(0, target):
            k += 1
        assert tour.objective <= base * (1 << k)
        assert log.phases[-1].budget == 1 << k


def test_uniform_metric_matches_greedy_ranking():
    # with unit distances and budget-1 phases, each augmentation buys the
    # same argmax vertex the ranking greedy would pick, so arrivals land at
    # odd prefixes 2t-1
    for seed in range(10):
        inst = random_instance("uniform-metric", 6, seed)
        tour, log = alg_mlsc(inst.metric, inst.valuations, sop_exact, 1, 1)
        order, _ = alg_ag(inst.valuations)
        horizon = max(order.cover_times)
        assert len(log.phases) == 1
        assert log.phases[0].added == order.permutation[:horizon]
        for i in range(inst.valuations.m):
            assert tour.cover_times[i] == 2 * order.cover_times[i] - 1


def test_walk_structure_and_phase_bookkeeping():
    for seed in range(10):
        inst = mlsc_instance(seed, n=6)
        tour, log = alg_mlsc(inst.metric, inst.valuations, sop_exact, 1, 1)
        assert tour.walk[0] == 0
        recomputed = LatencyTour.from_walk(inst.metric, inst.valuations,
                                           tour.walk)
        assert recomputed == tour
        base = mlsc_checkpoint_base(inst.valuations.alpha, 1, 1)
        arrival = {}
        for pos, v in enumerate(tour.walk):
            arrival.setdefault(v, tour.prefix[pos])
        for j, rec in enumerate(log.phases):
            assert rec.end_length <= base * (1 << j)
            for res in rec.results:
                assert res.length <= rec.budget
            for v in rec.added:
                assert arrival[v] <= rec.end_length


def test_ratio_versus_exact_optimum():
    for seed in range(20):
        inst = mlsc_instance(seed, n=6)
        tour, _ = alg_mlsc(inst.metric, inst.valuations, sop_exact, 1, 1)
        opt = brute_force_latency(inst.metric, inst.valuations)
        assert tour.objective <= 56 * inst.valuations.alpha * opt.objective


def test_zero_diameter_is_free():
    metric = GridPoints(((0, 0), (0, 0), (0, 0))).to_metric()
    vs = ValuationSet.coverage(3, [[1], [2]])
    tour, _ = alg_mlsc(metric, vs, sop_exact, 1, 1)
    assert tour.objective == 0


def test_stalling_solver_raises():
    vs = ValuationSet.singlegroup(3, [[2]], [1])

    def lazy(q):
        return SopResult((q.root,), 0, q.valuation.value(1 << q.root), (1, 1))

    with pytest.raises(Uncoverable):
        alg_mlsc(PATH_METRIC, vs, lazy, 1, 1)


def test_overlong_solver_path_rejected():
    vs = ValuationSet.singlegroup(3, [[2]], [1])

    def liar(q):
        return SopResult((q.root, 2), 5, q.valuation.value(0b101), (1, 1))

    with pytest.raises(ValueError):
        alg_mlsc(PATH_METRIC, vs, liar, 1, 1)


def test_recursive_greedy_solver_covers():
    for seed in range(4):
        inst = mlsc_instance(seed, n=6)
        rho = 4  # ceil(log2 6) + 1
        tour, _ = alg_mlsc(inst.metric, inst.valuations,
                           sop_recursive_greedy, rho, 1)
        assert max(tour.cover_times) <= tour.prefix[-1]


def test_recurrence_phase_zero_coverage_is_trivial():
    inst = random_instance("uniform-metric", 5, 0)
    tour, log = alg_mlsc(inst.metric, inst.valuations, sop_exact, 1, 1)
    assert len(log.phases) == 1
    assert log.checkpoints[0][2] == 0
    opt = brute_force_latency(inst.metric, inst.valuations)
    ok, rows = check_mlsc_recurrence(log, opt)
    assert ok


def test_recurrence_holds_on_random_instances():
    for seed in range(100):
        inst = mlsc_instance(seed, n=4 + seed % 3)
        tour, log = alg_mlsc(inst.metric, inst.valuations, sop_exact, 1, 1)
        opt = brute_force_latency(inst.metric, inst.valuations)
        ok, rows = check_mlsc_recurrence(log, opt)
        assert ok, (seed, rows)
        j0 = rows[0]
        assert j0[1] <= j0[3]  # quarter-decay at j=0 degenerates to this


def test_uncovered_after_is_strict():
    assert uncovered_after((3, 5, 7), 5) == (2,)
    assert uncovered_after((3, 5, 7), 4) == (1, 2)
