"""Small-universe subsets as int bitmasks."""

from __future__ import annotations

from typing import Iterable


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def bits(mask: int) -> list[int]:
    """Elements of `mask` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def subsets(mask: int):
    """All submasks of `mask`, increasing in the usual submask order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask
