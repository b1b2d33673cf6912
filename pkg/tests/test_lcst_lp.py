"""Cutting-plane LP over levels, checked against closed forms and brute force."""

import random
from fractions import Fraction

import pytest

from latcov.errors import SolverStall
from latcov.lcst.lp import level_count, solve_lp_lcst
from latcov.lcst.separation import reduced_tree, separate_kc

from util import (random_grouped_tree, single_leaf_tree, tree_tour_optimum,
                  two_level_tree)


def check_base_feasibility(tree, sol, slack=0):
    for lv in range(sol.levels + 1):
        x, budget = sol.x[lv], 1 << lv
        assert sum(tree.weight[e] * x[e] for e in tree.edges) <= budget + slack
        for e in tree.edges:
            assert -slack <= x[e] <= 1 + slack
            p = tree.parent[e]
            if p != tree.root:
                assert x[e] <= x[p] + slack
        for gi in range(len(tree.groups)):
            assert -slack <= sol.y[lv][gi] <= 1 + slack
            if lv < sol.levels:
                assert sol.y[lv][gi] <= sol.y[lv + 1][gi] + slack


def test_level_count():
    assert level_count(single_leaf_tree(6)) == 5      # 2*6=12, ceil(log2)=4
    assert level_count(single_leaf_tree(1)) == 2
    assert level_count(single_leaf_tree(0)) == 1      # degenerate weight


def test_single_leaf_closed_form():
    d = 6
    sol = solve_lp_lcst(single_leaf_tree(d))
    assert sol.exact
    for lv in range(sol.levels + 1):
        want = min(Fraction(1), Fraction(2 ** lv, d))
        assert sol.y[lv][0] == want
        assert want <= sol.x[lv][1] <= min(Fraction(1), Fraction(2 ** lv, d))
    expected = Fraction(1, 2) * sum(
        (1 << lv) * (1 - min(Fraction(1), Fraction(2 ** lv, d)))
        for lv in range(sol.levels + 1))
    assert sol.objective == expected
    assert sol.objective <= d
    assert sol.level_of == (2,)  # smallest level with 2^l/6 >= 1/2
    assert sol.kc_rows >= 1 and sol.iterations >= 2


def test_converged_solution_passes_separation():
    tree = two_level_tree()
    sol = solve_lp_lcst(tree)
    assert sol.exact
    check_base_feasibility(tree, sol)
    for gi, (g, k) in enumerate(zip(tree.groups, tree.reqs)):
        for lv in range(sol.levels + 1):
            assert separate_kc(tree, g, k, sol.x[lv], sol.y[lv][gi]) is None
    # top level is fully covering at any optimum
    assert all(y == 1 for y in sol.y[sol.levels])
    assert all(lv <= sol.levels for lv in sol.level_of)


def integral_point(tree, rng):
    """(x, y, start level) for a bought subtree meeting every requirement."""
    chosen = []
    for g, k in zip(tree.groups, tree.reqs):
        chosen.extend(rng.sample(g, k))
    bought = set(reduced_tree(tree, chosen))
    wt = sum(tree.weight[e] for e in bought)
    lv0 = (max(1, wt) - 1).bit_length()   # smallest level with 2^lv >= wt
    return bought, lv0


def test_integral_solution_passes_generated_rows_and_separation():
    for seed in range(8):
        rng = random.Random(f"integral:{seed}")
        tree = random_grouped_tree(seed, 6 + seed % 3)
        sol = solve_lp_lcst(tree)
        bought, lv0 = integral_point(tree, rng)
        assert lv0 <= sol.levels
        xs, ys = [], []
        for lv in range(sol.levels + 1):
            on = Fraction(1 if lv >= lv0 else 0)
            xs.append({e: (on if e in bought else Fraction(0))
                       for e in tree.edges})
            ys.append([on] * len(tree.groups))
        for cut in sol.cuts:
            lhs = (sum(xs[cut.level][e] for e in cut.leaf_cut)
                   + cut.multiplier * sum(xs[cut.level][e]
                                          for e in cut.inner_cut))
            assert lhs >= cut.multiplier * ys[cut.level][cut.group]
        for gi, (g, k) in enumerate(zip(tree.groups, tree.reqs)):
            for lv in range(sol.levels + 1):
                assert separate_kc(tree, g, k, xs[lv], ys[lv][gi]) is None


def test_lp_at_most_integral_optimum():
    for seed in range(6):
        tree = random_grouped_tree(100 + seed, 6 + seed % 3)
        opt, _ = tree_tour_optimum(tree)
        sol = solve_lp_lcst(tree)
        assert sol.exact
        check_base_feasibility(tree, sol)
        assert sol.objective <= opt
        # half completion time bound, measured with the LP's own levels
        assert 8 * opt >= sum(1 << lv for lv in sol.level_of)


def test_float_mode_matches_exact_on_small_instance():
    tree = two_level_tree()
    ex = solve_lp_lcst(tree)
    fl = solve_lp_lcst(tree, exact_limit=1)
    assert ex.exact and not fl.exact
    assert abs(float(ex.objective) - fl.objective) <= 1e-5
    assert fl.level_of == ex.level_of
    check_base_feasibility(tree, fl, slack=1e-6)


def test_iteration_cap_raises():
    with pytest.raises(SolverStall):
        solve_lp_lcst(single_leaf_tree(6), max_iters=1)
