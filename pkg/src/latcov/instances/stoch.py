"""Stochastic scheduling instances: elements realize random domain points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .valuations import ValuationSet

Support = tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class StochasticInstance:
    """Independent elements with integer durations over a finite domain.

    Element j runs for lengths[j] time units and realizes one domain point
    drawn from supports[j] (pairs of (point, probability), probabilities
    summing to one). Valuations are monotone submodular functions over
    subsets of the domain.
    """

    domain: int
    supports: tuple[Support, ...]
    lengths: tuple[int, ...]
    valuations: ValuationSet

    def __post_init__(self):
        if self.valuations.n != self.domain:
            raise ValueError("valuations must live on the element domain")
        if len(self.supports) != len(self.lengths):
            raise ValueError("supports/lengths length mismatch")
        for supp in self.supports:
            if not supp:
                raise ValueError("empty support")
            pts = [b for b, _ in supp]
            if pts != sorted(set(pts)):
                raise ValueError("support points must be sorted and distinct")
            if any(not 0 <= b < self.domain for b in pts):
                raise ValueError("support point out of domain")
            if any(p <= 0 for _, p in supp) or sum(p for _, p in supp) != 1:
                raise ValueError("probabilities must be positive and sum to 1")
        for length in self.lengths:
            if length < 1 or length != int(length):
                raise ValueError("lengths must be positive integers")

    @property
    def n(self) -> int:
        return len(self.supports)

    @property
    def total_length(self) -> int:
        """Duration of any complete schedule; the cover time assigned to
        valuations that no realization ever satisfies."""
        return sum(self.lengths)

    def is_deterministic(self) -> bool:
        return all(len(s) == 1 for s in self.supports)
