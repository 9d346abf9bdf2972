"""Pure-Python bitmask kernels.

Subsets of an n-element ground set are ints in ``range(1 << n)``. A table is a
``bytearray`` of length ``1 << n`` holding 1 for members of a down-closed family.
"""

from __future__ import annotations

from typing import Iterable


def down_closure(n: int, masks: Iterable[int]) -> bytearray:
    size = 1 << n
    table = bytearray(size)
    for m in masks:
        table[m] = 1
    # superset-to-subset sweep, one coordinate at a time
    for bit in range(n):
        step = 1 << bit
        for m in range(size):
            if m & step and table[m]:
                table[m ^ step] = 1
    return table


def minimal_absent(n: int, table: bytearray) -> list[int]:
    """Masks not in the family all of whose one-smaller subsets are."""
    out = []
    for m in range(1, 1 << n):
        if table[m]:
            continue
        rest = m
        ok = True
        while rest:
            low = rest & -rest
            if not table[m ^ low]:
                ok = False
                break
            rest ^= low
        if ok:
            out.append(m)
    return out


def maximal_present(n: int, table: bytearray) -> list[int]:
    full = (1 << n) - 1
    out = []
    for m in range(1 << n):
        if not table[m]:
            continue
        rest = full ^ m
        ok = True
        while rest:
            low = rest & -rest
            if table[m | low]:
                ok = False
                break
            rest ^= low
        if ok:
            out.append(m)
    return out


def pairwise_or(a: list[int], b: list[int]) -> list[int]:
    return sorted({x | y for x in a for y in b})


def max_common(a: list[int], b: list[int]) -> tuple[int, int, int]:
    """Largest popcount of ``x & y``; returns (count, index in a, index in b)."""
    best, bi, bj = -1, -1, -1
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            c = (x & y).bit_count()
            if c > best:
                best, bi, bj = c, i, j
    return best, bi, bj
