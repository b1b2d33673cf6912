"""Minimum-cost cuts separating a tree root from a given number of leaves.

The dynamic program runs on a normalized copy of the tree: every internal
node gets at most two children by inserting infinite-cost dummy edges, and a
super-root above the original root keeps exactly one root edge. C[e, k] is
the cheapest edge set inside the subtree under e (e included) that separates
the root from at least k of the subtree's leaves; C[e, 0] = 0, a leaf edge
gives (0, cost, inf, ...), and an internal edge takes the better of cutting
e itself or convolving the two child tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class CutQuery:
    """Rooted tree with per-edge costs; `bound` leaves must be separated."""

    edges: tuple[tuple[int, int], ...]   # (child, parent) pairs
    costs: tuple                         # aligned with edges
    root: int
    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be non-negative")
        if len(self.edges) != len(self.costs):
            raise ValueError("edges/costs length mismatch")
        children = {c for c, _ in self.edges}
        if len(children) != len(self.edges):
            raise ValueError("duplicate child vertex in edges")
        if self.root in children:
            raise ValueError("root cannot have a parent edge")


def min_cut_with_exceptions(q: CutQuery):
    """Cheapest cut separating the root from at least `bound` leaves.

    Returns (cost, witness) where witness is a frozenset of child-vertex
    edge ids; (inf, None) when bound exceeds the leaf count.
    """
    children: dict[int, list[int]] = {q.root: []}
    cost_of: dict[int, object] = {}
    for (c, p), w in zip(q.edges, q.costs):
        children.setdefault(p, []).append(c)
        children.setdefault(c, [])
        cost_of[c] = w
    for c, p in q.edges:
        if p != q.root and p not in cost_of:
            raise ValueError("edges must form a tree rooted at root")

    leaves = [v for v, ch in children.items() if not ch and v != q.root]
    if q.bound > len(leaves):
        return math.inf, None
    if q.bound == 0:
        return 0, frozenset()

    # local arrays over a binarized copy; orig maps back to edge ids
    par: list[Optional[int]] = []
    cost: list = []
    orig: list[Optional[int]] = []
    kids: list[list[int]] = []

    def add(parent_loc: Optional[int], c, original) -> int:
        v = len(par)
        par.append(parent_loc)
        cost.append(c)
        orig.append(original)
        kids.append([])
        if parent_loc is not None:
            kids[parent_loc].append(v)
        return v

    super_root = add(None, 0, None)
    top = add(super_root, math.inf, None)
    stack = [(q.root, top)]
    while stack:
        v, loc = stack.pop()
        for c in children[v]:
            stack.append((c, add(loc, cost_of[c], c)))
    # binarize: any node with 3+ children sheds all but the first into an
    # infinite-cost dummy child, repeatedly
    work = list(range(len(par)))
    while work:
        v = work.pop()
        if len(kids[v]) > 2:
            moved = kids[v][1:]
            kids[v] = kids[v][:1]
            d = add(v, math.inf, None)
            for u in moved:
                par[u] = d
                kids[d].append(u)
            work.append(d)

    # post-order over the binarized tree
    order: list[int] = []
    stack = [top]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(kids[v])
    order.reverse()

    table: dict[int, list] = {}
    choice: dict[int, list] = {}
    nleaf: dict[int, int] = {}
    for v in order:
        if not kids[v]:
            nleaf[v] = 1
            table[v] = [0, cost[v]]
            choice[v] = [None, ("cut",)]
            continue
        if len(kids[v]) == 1:
            c1 = kids[v][0]
            nl = nleaf[c1]
            tab = [0]
            ch: list = [None]
            for k in range(1, nl + 1):
                if cost[v] <= table[c1][k]:
                    tab.append(cost[v])
                    ch.append(("cut",))
                else:
                    tab.append(table[c1][k])
                    ch.append(("one",))
            table[v], choice[v], nleaf[v] = tab, ch, nl
            continue
        c1, c2 = kids[v]
        n1, n2 = nleaf[c1], nleaf[c2]
        nl = n1 + n2
        tab = [0]
        ch = [None]
        for k in range(1, nl + 1):
            best = cost[v]
            pick: tuple = ("cut",)
            for k1 in range(max(0, k - n2), min(k, n1) + 1):
                cand = table[c1][k1] + table[c2][k - k1]
                if cand < best:
                    best = cand
                    pick = ("split", k1)
            tab.append(best)
            ch.append(pick)
        table[v], choice[v], nleaf[v] = tab, ch, nl

    value = table[top][q.bound]
    if value == math.inf:
        return math.inf, None
    witness: set[int] = set()
    stack2: list[tuple[int, int]] = [(top, q.bound)]
    while stack2:
        v, k = stack2.pop()
        if k == 0:
            continue
        pick = choice[v][k]
        if pick == ("cut",):
            witness.add(orig[v])
            continue
        if pick == ("one",):
            stack2.append((kids[v][0], k))
            continue
        _, k1 = pick
        stack2.append((kids[v][0], k1))
        stack2.append((kids[v][1], k - k1))
    return value, frozenset(witness)
