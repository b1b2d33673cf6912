"""Dense tableau simplex for LPs in canonical form.

maximize c.x  subject to  A x <= b, x >= 0, with every b_i >= 0, so the
slack basis is feasible and no phase-1 is needed. Entering column: most
negative reduced cost while the objective is moving, switching permanently
to Bland's rule after a degenerate stretch, which keeps termination
guaranteed. Arithmetic is generic: pass Fraction data for exact pivoting
or floats with a small tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import Unbounded


def solve_canonical_max(c: Sequence, rows: Sequence[Sequence], b: Sequence,
                        tol=Fraction(0)):
    """Return (x, value) maximizing c.x over {A x <= b, x >= 0}.

    Raises Unbounded when the objective is unbounded above. `tol` is the
    pivot/optimality threshold: keep it 0 for exact data.
    """
    m = len(rows)
    n = len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("canonical form needs b >= 0")
    zero = c[0] * 0 if c else Fraction(0)

    # columns: n structural, m slacks, then the rhs
    width = n + m + 1
    tab = []
    for i in range(m):
        row = list(rows[i]) + [zero] * m + [b[i]]
        row[n + i] = zero + 1
        tab.append(row)
    obj = [-ci for ci in c] + [zero] * m + [zero]
    basis = list(range(n, n + m))

    bland = False
    stalled = 0
    while True:
        enter = -1
        if bland:
            for j in range(n + m):
                if obj[j] < -tol:
                    enter = j  # Bland: smallest eligible index
                    break
        else:
            best_red = -tol
            for j in range(n + m):
                if obj[j] < best_red:
                    best_red = obj[j]
                    enter = j
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > tol:
                ratio = tab[i][-1] / a
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    best = ratio
                    leave = i
        if leave < 0:
            raise Unbounded("objective unbounded above")
        piv = tab[leave][enter]
        prow = tab[leave]
        for j in range(width):
            prow[j] = prow[j] / piv
        for i in range(m):
            if i != leave:
                f = tab[i][enter]
                if f != 0:
                    row = tab[i]
                    for j in range(width):
                        row[j] -= f * prow[j]
        f = obj[enter]
        if f != 0:
            for j in range(width):
                obj[j] -= f * prow[j]
        basis[leave] = enter
        # a long degenerate stretch risks cycling under the greedy rule
        if not bland:
            if best is not None and best > tol:
                stalled = 0
            else:
                stalled += 1
                if stalled >= 40:
                    bland = True

    x = [zero] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][-1]
    value = obj[-1]
    return x, value
