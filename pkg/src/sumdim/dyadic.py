"""Exact arithmetic on dyadic interval covers.

A cover at depth j is a family of intervals [s*2^-j, (s+w)*2^-j], one per
start index s, all sharing the same width w in cells of size 2^-j.  Start
indices are arbitrary-precision integers, so depths in the thousands are
fine.  Counting is always exact; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ScaleError


@dataclass(frozen=True)
class BinaryWord:
    """A finite word over {0,1}; ``value`` packs the bits, first bit highest."""

    length: int
    value: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if not 0 <= self.value < 1 << self.length:
            raise ValueError("value does not fit in length bits")

    @classmethod
    def from_bits(cls, bits):
        value = 0
        n = 0
        for b in bits:
            value = (value << 1) | (1 if b else 0)
            n += 1
        return cls(n, value)

    def bits(self):
        return tuple((self.value >> (self.length - 1 - i)) & 1 for i in range(self.length))


@dataclass(frozen=True)
class CellCountBracket:
    """Certified two-sided bound on a count of dyadic cells."""

    lower: int
    upper: int

    def __post_init__(self):
        if not 1 <= self.lower <= self.upper:
            raise ValueError(f"bad bracket [{self.lower}, {self.upper}]")

    @property
    def is_exact(self):
        return self.lower == self.upper


@dataclass(frozen=True)
class IntervalCover:
    """Intervals [s*2^-depth, (s+width)*2^-depth] for s in starts."""

    depth: int
    width: int
    starts: tuple

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("negative depth")
        if self.width < 1:
            raise ValueError("width must be at least 1 cell")
        if not self.starts:
            raise ValueError("empty cover")
        prev = -1
        for s in self.starts:
            if s < 0:
                raise ValueError("negative start index")
            if s <= prev:
                raise ValueError("starts must be strictly increasing")
            prev = s


def coarsen(cover, new_depth):
    """Reexpress a cover at a shallower depth, per-cell (width collapses to 1)."""
    if new_depth > cover.depth:
        raise ScaleError(f"cannot coarsen depth {cover.depth} to deeper {new_depth}")
    delta = cover.depth - new_depth
    cells = set()
    for s in cover.starts:
        # parent cells of everything the interval [s, s+width) touches
        cells.update(range(s >> delta, ((s + cover.width - 1) >> delta) + 1))
    return IntervalCover(new_depth, 1, tuple(sorted(cells)))


def cover_sum(a, b):
    """Minkowski sum of two covers at the same depth; widths add."""
    if a.depth != b.depth:
        raise ScaleError(f"depth mismatch {a.depth} != {b.depth}")
    starts = sorted({x + y for x in a.starts for y in b.starts})
    return IntervalCover(a.depth, a.width + b.width, tuple(starts))


def cell_count(cover):
    """Bracket on the number of unit cells the cover can certify.

    lower: one witness cell per start (starts are distinct).
    upper: total unit cells in the union of the intervals.
    """
    lower = len(cover.starts)
    upper = 0
    w = cover.width
    run_end = None
    for s in cover.starts:
        if run_end is None or s >= run_end:
            upper += w
            run_end = s + w
        elif s + w > run_end:
            upper += s + w - run_end
            run_end = s + w
    return CellCountBracket(lower, upper)
