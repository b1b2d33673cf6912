"""latcov: adaptive greedy ranking, latency-constrained tours, covering
Steiner trees on trees, and stochastic schedules, with exact rational
arithmetic and brute-force oracles for verification."""

__version__ = "0.1.0"
