"""Latency covering Steiner tree pipeline: tree embedding, cut-based LP,
dependent rounding, and the level-by-level tour builder."""

from .embed import EmbeddedTree, frt_embed
from .lp import KcRow, LpSolution, level_count, solve_lp_lcst
from .mincut import CutQuery, min_cut_with_exceptions
from .rounding import (RoundingPhase, RoundingReport, alg_lcst, flow_adjust,
                       krs_round, level_marginals, level_tour)
from .separation import KcViolation, reduced_tree, separate_kc
from .simplex import solve_canonical_max

__all__ = [
    "CutQuery",
    "EmbeddedTree",
    "KcRow",
    "KcViolation",
    "LpSolution",
    "RoundingPhase",
    "RoundingReport",
    "alg_lcst",
    "flow_adjust",
    "frt_embed",
    "krs_round",
    "level_count",
    "level_marginals",
    "level_tour",
    "min_cut_with_exceptions",
    "reduced_tree",
    "separate_kc",
    "solve_canonical_max",
    "solve_lp_lcst",
]
