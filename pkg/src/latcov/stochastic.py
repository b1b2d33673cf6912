"""Adaptive ranking of stochastic elements with explicit distributions.

Elements realize one domain point each when scheduled, observed only after
committing the element's full length. The greedy scores an unscheduled
element by the expected residual gain of its realization per unit length;
independence makes conditioning on the observed prefix vacuous, so the
expectation runs over the element's own distribution and is exact.

Cover times are clock times (prefix sums of lengths). A valuation no
realization satisfies pays the full schedule length, the maximum time any
schedule can reach. optimal_adaptive is an exact decision-tree oracle by
backward induction over (scheduled, realized) knowledge states; the state
space is exponential, so it is capped very small.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CapExceeded, size_cap
from .instances.stoch import StochasticInstance, Support
from .instances.valuations import (ONE, ZERO, CoverFunction, CoverTerm,
                                   ValuationSet)
from .ranking import checkpoint_base, uncovered_at

ADAPTIVE_ELEMENT_CAP = 4
ADAPTIVE_SUPPORT_CAP = 3


@dataclass(frozen=True)
class RealizedSchedule:
    """One complete run: elements in order, their draws, and cover times."""

    order: tuple[int, ...]        # elements in scheduling order
    realized: tuple[int, ...]     # domain point each one drew, aligned
    finish: tuple[int, ...]       # clock time each element completed
    cover_times: tuple[int, ...]  # per valuation; horizon if never covered
    objective: int


@dataclass(frozen=True)
class PolicyNode:
    """Decision-tree node: schedule `element`, branch on its realization."""

    element: Optional[int]        # None at a leaf
    children: tuple[tuple[int, "PolicyNode"], ...]

    def child(self, point: int) -> "PolicyNode":
        for b, node in self.children:
            if b == point:
                return node
        raise ValueError(f"policy has no branch for realization {point}")


@dataclass(frozen=True)
class AdaptivePolicy:
    root: PolicyNode


@dataclass(frozen=True)
class PolicyEvaluation:
    """Expected cover times of a policy; exact or Monte-Carlo."""

    total: Fraction
    per_function: tuple[Fraction, ...]
    horizon: int                  # sum of lengths; the never-covered charge
    stderr: Optional[float]       # standard error of `total`; None if exact
    samples: Optional[int]        # None if exact


def sto_residual_score(inst: StochasticInstance, scheduled: int,
                       realized: int, e: int) -> Fraction:
    """Expected residual gain of element e, per unit of its length.

    scheduled is a bitmask over elements, realized a bitmask over domain
    points already drawn. Exact: sums the element's explicit distribution.
    """
    if scheduled & (1 << e):
        raise ValueError("element already scheduled")
    total = ZERO
    for f in inst.valuations.functions:
        base = f.value(realized)
        if base < 1:
            gain = ZERO
            for b, p in inst.supports[e]:
                gain += p * (f.value(realized | (1 << b)) - base)
            total += gain / (1 - base)
    return total / inst.lengths[e]


def _draw(supp: Support, rng: random.Random) -> int:
    r = rng.random()
    acc = 0.0
    for b, p in supp:
        acc += float(p)
        if r < acc:
            return b
    return supp[-1][0]  # r landed in float round-off slack


def sample_outcome(inst: StochasticInstance, rng: random.Random
                   ) -> tuple[int, ...]:
    """One independent realization per element."""
    return tuple(_draw(supp, rng) for supp in inst.supports)


def alg_ag_sto(inst: StochasticInstance, outcome) -> RealizedSchedule:
    """Adaptive greedy: argmax expected residual score, smallest index on
    ties, observing each draw before the next choice.

    outcome is a full realization vector (replayed deterministically), an
    int seed, or a random.Random; with a vector the run is a deterministic
    function of the instance and the vector.
    """
    if isinstance(outcome, random.Random):
        draw = lambda e: _draw(inst.supports[e], outcome)
    elif isinstance(outcome, int):
        rng = random.Random(f"wssr:{outcome}")
        draw = lambda e: _draw(inst.supports[e], rng)
    else:
        fixed = tuple(outcome)
        if len(fixed) != inst.n:
            raise ValueError("outcome vector must cover every element")
        for e, b in enumerate(fixed):
            if b not in [pt for pt, _ in inst.supports[e]]:
                raise ValueError(f"outcome {b} not in element {e}'s support")
        draw = lambda e: fixed[e]

    functions = inst.valuations.functions
    scheduled = realized = 0
    clock = 0
    order: list[int] = []
    points: list[int] = []
    finish: list[int] = []
    cover: list[Optional[int]] = [None] * len(functions)
    while any(c is None and f.value(realized) < 1
              for c, f in zip(cover, functions)):
        best_e, best = -1, None
        for e in range(inst.n):
            if scheduled & (1 << e):
                continue
            score = sto_residual_score(inst, scheduled, realized, e)
            if best is None or score > best:
                best_e, best = e, score
        if best_e < 0:
            break  # everything scheduled; the rest never cover
        scheduled |= 1 << best_e
        b = draw(best_e)
        clock += inst.lengths[best_e]
        realized |= 1 << b
        order.append(best_e)
        points.append(b)
        finish.append(clock)
        for i, f in enumerate(functions):
            if cover[i] is None and f.value(realized) == 1:
                cover[i] = clock
    horizon = inst.total_length
    times = tuple(horizon if c is None else c for c in cover)
    return RealizedSchedule(tuple(order), tuple(points), tuple(finish),
                            times, sum(times))


def _check_adaptive_cap(inst: StochasticInstance, what: str):
    n_cap = size_cap(ADAPTIVE_ELEMENT_CAP)
    s_cap = size_cap(ADAPTIVE_SUPPORT_CAP)
    if inst.n <= n_cap and max(len(s) for s in inst.supports) <= s_cap:
        return
    states = 1
    for supp in inst.supports:
        states *= 1 + len(supp)
    raise CapExceeded(
        f"{what} needs <= {n_cap} elements with supports <= {s_cap}; "
        f"this instance has about {states} knowledge states")


def optimal_adaptive(inst: StochasticInstance
                     ) -> tuple[AdaptivePolicy, Fraction]:
    """Exact minimum expected total cover time, with an optimal policy.

    Backward induction over (scheduled set, realized set). Each step costs
    length * #uncovered, which telescopes to the summed cover times under
    the horizon convention; scheduling continues while anything is
    uncovered, and stopping early is never cheaper than that convention.
    Ties go to the smallest element index.
    """
    _check_adaptive_cap(inst, "optimal_adaptive")
    functions = inst.valuations.functions
    full = (1 << inst.n) - 1
    memo: dict[tuple[int, int], tuple[Fraction, Optional[int]]] = {}

    def solve(scheduled: int, realized: int) -> tuple[Fraction, Optional[int]]:
        key = (scheduled, realized)
        if key in memo:
            return memo[key]
        uncovered = sum(1 for f in functions if f.value(realized) < 1)
        if uncovered == 0 or scheduled == full:
            memo[key] = (ZERO, None)
            return memo[key]
        best, best_e = None, None
        for e in range(inst.n):
            if scheduled & (1 << e):
                continue
            cost = Fraction(inst.lengths[e] * uncovered)
            for b, p in inst.supports[e]:
                cost += p * solve(scheduled | (1 << e), realized | (1 << b))[0]
            if best is None or cost < best:
                best, best_e = cost, e
        memo[key] = (best, best_e)
        return memo[key]

    total, _ = solve(0, 0)

    def build(scheduled: int, realized: int) -> PolicyNode:
        e = solve(scheduled, realized)[1]
        if e is None:
            return PolicyNode(None, ())
        kids = tuple((b, build(scheduled | (1 << e), realized | (1 << b)))
                     for b, _ in inst.supports[e])
        return PolicyNode(e, kids)

    return AdaptivePolicy(build(0, 0)), total


def greedy_policy(inst: StochasticInstance) -> AdaptivePolicy:
    """The greedy's decision tree, materialized.

    alg_ag_sto's choice depends only on (scheduled, realized), so the whole
    policy unrolls state by state; replaying it on any outcome vector gives
    the same schedule as alg_ag_sto on that vector. Same caps as the exact
    oracle, since the tree enumerates every realization path.
    """
    _check_adaptive_cap(inst, "greedy_policy")
    functions = inst.valuations.functions
    full = (1 << inst.n) - 1
    memo: dict[tuple[int, int], PolicyNode] = {}

    def build(scheduled: int, realized: int) -> PolicyNode:
        key = (scheduled, realized)
        if key in memo:
            return memo[key]
        done = all(f.value(realized) == 1 for f in functions)
        if done or scheduled == full:
            node = PolicyNode(None, ())
        else:
            best_e, best = -1, None
            for e in range(inst.n):
                if scheduled & (1 << e):
                    continue
                score = sto_residual_score(inst, scheduled, realized, e)
                if best is None or score > best:
                    best_e, best = e, score
            kids = tuple(
                (b, build(scheduled | (1 << best_e), realized | (1 << b)))
                for b, _ in inst.supports[best_e])
            node = PolicyNode(best_e, kids)
        memo[key] = node
        return node

    return AdaptivePolicy(build(0, 0))


def policy_cover_times(inst: StochasticInstance, policy: AdaptivePolicy,
                       outcome: Sequence[int]) -> tuple[int, ...]:
    """Replay a policy against one fixed realization vector."""
    functions = inst.valuations.functions
    node = policy.root
    realized = 0
    clock = 0
    cover: list[Optional[int]] = [None] * len(functions)
    while node.element is not None:
        e = node.element
        b = outcome[e]
        clock += inst.lengths[e]
        realized |= 1 << b
        for i, f in enumerate(functions):
            if cover[i] is None and f.value(realized) == 1:
                cover[i] = clock
        node = node.child(b)
    horizon = inst.total_length
    return tuple(horizon if c is None else c for c in cover)


def evaluate_policy(inst: StochasticInstance, policy: AdaptivePolicy,
                    mode: str = "exact", samples: int = 10000,
                    seed: int = 0) -> PolicyEvaluation:
    """Expected cover times of a policy.

    mode="exact" sums over every outcome path, weighted by probability
    (same size caps as the oracle). mode="monte-carlo" replays `samples`
    sampled outcome vectors and reports rational means plus the standard
    error of the total.
    """
    functions = inst.valuations.functions
    m = len(functions)
    horizon = inst.total_length
    if mode == "exact":
        _check_adaptive_cap(inst, "exact policy evaluation")
        per = [ZERO] * m

        def walk(node, realized, clock, prob, cover):
            if node.element is None:
                for i in range(m):
                    c = cover[i] if cover[i] is not None else horizon
                    per[i] += prob * c
                return
            e = node.element
            for b, p in inst.supports[e]:
                child = node.child(b)
                nxt_clock = clock + inst.lengths[e]
                nxt_real = realized | (1 << b)
                nxt_cover = list(cover)
                for i, f in enumerate(functions):
                    if nxt_cover[i] is None and f.value(nxt_real) == 1:
                        nxt_cover[i] = nxt_clock
                walk(child, nxt_real, nxt_clock, prob * p, nxt_cover)

        walk(policy.root, 0, 0, ONE, [None] * m)
        per_t = tuple(per)
        return PolicyEvaluation(sum(per_t), per_t, horizon, None, None)
    if mode != "monte-carlo":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(f"wssr-eval:{seed}")
    per_sum = [0] * m
    totals = []
    for _ in range(samples):
        ct = policy_cover_times(inst, policy, sample_outcome(inst, rng))
        for i, c in enumerate(ct):
            per_sum[i] += c
        totals.append(sum(ct))
    per_t = tuple(Fraction(s, samples) for s in per_sum)
    mean = sum(totals) / samples
    var = sum((t - mean) ** 2 for t in totals) / max(1, samples - 1)
    return PolicyEvaluation(Fraction(sum(totals), samples), per_t, horizon,
                            math.sqrt(var / samples), samples)


def check_sto_recurrence(inst: StochasticInstance, policy: AdaptivePolicy,
                         samples: int, seed: int, base_multiplier: int = 8):
    """Monte-Carlo checkpoint decay of the greedy against a reference policy.

    Couples both runs to the same sampled outcomes. R_j counts valuations
    the greedy covers at clock time >= ceil(8 alpha) * 2^j, R*_j those the
    policy covers at time >= 2^j. Passes when, for every j, the empirical
    means satisfy E[R_j] <= E[R_{j-1}]/4 + E[R*_j] within three standard
    errors of the per-outcome difference. Returns (ok, rows) with rows of
    (j, mean R_j, mean R_{j-1}, mean R*_j, stderr of the difference).
    """
    base = checkpoint_base(inst.valuations.alpha, base_multiplier)
    horizon = inst.total_length
    rng = random.Random(f"wssr-mc:{seed}")
    levels = []
    j = 0
    while True:
        levels.append(j)
        if base * (1 << j) > horizon and (1 << j) > horizon:
            break
        j += 1
    sums = [[0, 0, 0] for _ in levels]          # R_j, R_{j-1}, R*_j
    dsum = [0] * len(levels)                    # 4 R_j - R_{j-1} - 4 R*_j
    dsq = [0] * len(levels)
    for _ in range(samples):
        w = sample_outcome(inst, rng)
        ct = alg_ag_sto(inst, w).cover_times
        ct_star = policy_cover_times(inst, policy, w)
        prev = 0
        for idx, j in enumerate(levels):
            r_j = len(uncovered_at(ct, base * (1 << j)))
            r_star = len(uncovered_at(ct_star, 1 << j))
            d = 4 * r_j - prev - 4 * r_star
            sums[idx][0] += r_j
            sums[idx][1] += prev
            sums[idx][2] += r_star
            dsum[idx] += d
            dsq[idx] += d * d
            prev = r_j
    ok = True
    rows = []
    for idx in range(len(levels)):
        mean_d = dsum[idx] / samples
        var = (dsq[idx] / samples - mean_d ** 2) * samples / max(1, samples - 1)
        se = math.sqrt(max(0.0, var) / samples) / 4  # d was scaled by 4
        if mean_d / 4 > 3 * se + 1e-12:
            ok = False
        rows.append((levels[idx], sums[idx][0] / samples,
                     sums[idx][1] / samples, sums[idx][2] / samples, se))
    return ok, rows


def _canon_support(supp) -> Support:
    merged: dict[int, Fraction] = {}
    for b, p in supp:
        merged[b] = merged.get(b, ZERO) + Fraction(p)
    return tuple(sorted((b, p) for b, p in merged.items() if p > 0))


def reduce_ssc(domain: int, sets, supports, lengths) -> StochasticInstance:
    """Hitting every target subset at minimum expected cost.

    One valuation averaging min(1, |A cap S|) over the collection, so value
    1 means exactly that each target set is hit; epsilon is 1 / #sets.
    """
    vs = ValuationSet.coverage(domain, sets)
    return StochasticInstance(domain, tuple(_canon_support(s) for s in supports),
                              tuple(lengths), vs)


def reduce_filter(queries, selectivities, lengths,
                  latency: bool = False) -> StochasticInstance:
    """Conjunctive queries over independent True/False filters.

    Filter j realizes point 2j (True) with probability selectivities[j],
    else point 2j+1 (False). A query's term saturates on any one False
    filter or on all of its filters True, exactly when the conjunction is
    determined. latency=False builds the single averaged valuation
    (minimum expected evaluation cost); latency=True builds one valuation
    per query (minimum average time to answer).
    """
    n = len(selectivities)
    if len(lengths) != n:
        raise ValueError("one length per filter")
    queries = [tuple(sorted(set(q))) for q in queries]
    if not queries or any(not q for q in queries):
        raise ValueError("queries must be nonempty filter subsets")
    for q in queries:
        if q[0] < 0 or q[-1] >= n:
            raise ValueError("query names an unknown filter")
    domain = 2 * n
    supports = []
    for j, p in enumerate(selectivities):
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise ValueError("selectivities must lie in [0, 1]")
        if p == 1:
            supports.append(((2 * j, ONE),))
        elif p == 0:
            supports.append(((2 * j + 1, ONE),))
        else:
            supports.append(((2 * j, p), (2 * j + 1, 1 - p)))

    def term(q, weight):
        members, units = [], []
        for j in q:
            members.extend((2 * j, 2 * j + 1))
            units.extend((Fraction(1, len(q)), ONE))  # True credit, False credit
        return CoverTerm(weight, tuple(members), tuple(units))

    q_max = max(len(q) for q in queries)
    if latency:
        fns = [CoverFunction(domain, [term(q, ONE)]) for q in queries]
        eps = Fraction(1, q_max)
    else:
        w = Fraction(1, len(queries))
        fns = [CoverFunction(domain, [term(q, w) for q in queries])]
        eps = Fraction(1, len(queries) * q_max)
    vs = ValuationSet(domain, fns, "wtc", eps)
    return StochasticInstance(domain, tuple(supports), tuple(lengths), vs)


def reduce_sgmssc(domain: int, sets, requirements, supports,
                  lengths) -> StochasticInstance:
    """Each target set completes once `requirement` of its points are
    realized: one valuation min(1, |A cap S| / k(S)) per set, and epsilon
    is 1 over the largest requirement."""
    vs = ValuationSet.singlegroup(domain, sets, requirements)
    return StochasticInstance(domain, tuple(_canon_support(s) for s in supports),
                              tuple(lengths), vs)
