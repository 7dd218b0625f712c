"""Exact interval algebra over recording time.

Times are integer *ticks* of 0.1 ms. Annotation formats carry decimal seconds,
so converting once at parse time keeps every set operation exact and the
duration identities (inclusion-exclusion, partition) hold without tolerance.

A :class:`Timeline` is a canonical, immutable set of half-open intervals
``[onset, offset)``: sorted, pairwise disjoint and non-touching.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from decimal import ROUND_HALF_EVEN, Decimal, InvalidOperation
from typing import NamedTuple, Union

import numpy as np

from ._backend import kernels as _k
from .errors import DegenerateInterval, NegativeGap

TICKS_PER_SECOND = 10_000

SecondsLike = Union[str, int, float, Decimal]


def to_ticks(seconds: SecondsLike) -> int:
    """Convert decimal seconds to ticks, rounding half-to-even.

    Floats go through their shortest ``repr`` so ``0.1`` becomes exactly
    1000 ticks rather than picking up binary noise.

    Raises:
        ValueError: if ``seconds`` is not a finite number.
    """
    if isinstance(seconds, float):
        seconds = repr(seconds)
    try:
        value = Decimal(seconds)
    except InvalidOperation:
        raise ValueError(f"not a number: {seconds!r}") from None
    if not value.is_finite():
        raise ValueError(f"not a finite number: {seconds!r}")
    return int((value * TICKS_PER_SECOND).to_integral_value(rounding=ROUND_HALF_EVEN))


def to_seconds(ticks: int) -> float:
    return ticks / TICKS_PER_SECOND


def format_seconds(ticks: int) -> str:
    """Fixed-point seconds with exactly four decimals, e.g. ``130.4300``."""
    sign = "-" if ticks < 0 else ""
    whole, frac = divmod(abs(int(ticks)), TICKS_PER_SECOND)
    return f"{sign}{whole}.{frac:04d}"


class Interval(NamedTuple):
    """Half-open ``[onset, offset)`` in ticks."""

    onset: int
    offset: int

    @property
    def duration(self) -> int:
        return self.offset - self.onset

    def seconds(self) -> tuple[float, float]:
        return to_seconds(self.onset), to_seconds(self.offset)


class Timeline:
    """Canonical set of disjoint, non-adjacent half-open intervals.

    Build one with :func:`normalize`, :meth:`from_seconds` or the set
    operations; the constructor trusts its arguments and is internal.
    """

    __slots__ = ("_starts", "_ends")

    def __init__(self, starts: np.ndarray, ends: np.ndarray):
        starts = np.asarray(starts, dtype=np.int64)
        ends = np.asarray(ends, dtype=np.int64)
        starts.setflags(write=False)
        ends.setflags(write=False)
        self._starts = starts
        self._ends = ends

    @classmethod
    def empty(cls) -> Timeline:
        return cls(np.zeros(0, np.int64), np.zeros(0, np.int64))

    @classmethod
    def from_seconds(cls, pairs: Iterable[tuple[SecondsLike, SecondsLike]]) -> Timeline:
        return normalize((to_ticks(a), to_ticks(b)) for a, b in pairs)

    @property
    def starts(self) -> np.ndarray:
        return self._starts

    @property
    def ends(self) -> np.ndarray:
        return self._ends

    @property
    def duration(self) -> int:
        """Total covered time in ticks."""
        return int((self._ends - self._starts).sum())

    @property
    def duration_seconds(self) -> float:
        return to_seconds(self.duration)

    def to_seconds(self) -> list[tuple[float, float]]:
        return [iv.seconds() for iv in self]

    def __iter__(self) -> Iterator[Interval]:
        for s, e in zip(self._starts.tolist(), self._ends.tolist()):
            yield Interval(s, e)

    def __len__(self) -> int:
        return len(self._starts)

    def __bool__(self) -> bool:
        return len(self._starts) > 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Timeline):
            return NotImplemented
        return np.array_equal(self._starts, other._starts) and np.array_equal(self._ends, other._ends)

    def __hash__(self) -> int:
        return hash((self._starts.tobytes(), self._ends.tobytes()))

    def __repr__(self) -> str:
        body = ", ".join(f"({format_seconds(s)}, {format_seconds(e)})" for s, e in self)
        return f"Timeline([{body}])"

    def __and__(self, other: Timeline) -> Timeline:
        return intersect(self, other)

    def __or__(self, other: Timeline) -> Timeline:
        return union(self, other)

    def __sub__(self, other: Timeline) -> Timeline:
        return subtract(self, other)


def _merge_unsorted(starts: np.ndarray, ends: np.ndarray, gap: int = 0) -> Timeline:
    order = np.lexsort((ends, starts))
    return Timeline(*_k.merge(starts[order], ends[order], gap))


def normalize(raw: Iterable[tuple[int, int]]) -> Timeline:
    """Canonicalize tick intervals: sort, then merge overlapping or touching ones.

    Raises:
        DegenerateInterval: if any interval has ``offset <= onset``.
    """
    pairs = [(int(a), int(b)) for a, b in raw]
    for a, b in pairs:
        if b <= a:
            raise DegenerateInterval(f"interval [{format_seconds(a)}, {format_seconds(b)}) has no duration")
    if not pairs:
        return Timeline.empty()
    arr = np.asarray(pairs, dtype=np.int64)
    return _merge_unsorted(arr[:, 0], arr[:, 1])


def intersect(a: Timeline, b: Timeline) -> Timeline:
    return Timeline(*_k.intersect(a.starts, a.ends, b.starts, b.ends))


def union(a: Timeline, b: Timeline) -> Timeline:
    if not b:
        return a
    if not a:
        return b
    return _merge_unsorted(np.concatenate([a.starts, b.starts]), np.concatenate([a.ends, b.ends]))


def subtract(a: Timeline, b: Timeline) -> Timeline:
    return Timeline(*_k.subtract(a.starts, a.ends, b.starts, b.ends))


def clip(a: Timeline, regions: Timeline) -> Timeline:
    """Restrict ``a`` to scoring regions; turns in region holes disappear."""
    return intersect(a, regions)


def bridge_gaps(a: Timeline, max_gap: int) -> Timeline:
    """Fuse consecutive intervals separated by at most ``max_gap`` ticks.

    Raises:
        NegativeGap: if ``max_gap < 0``.
    """
    if max_gap < 0:
        raise NegativeGap(f"max_gap must be non-negative, got {max_gap}")
    if max_gap == 0 or len(a) < 2:
        return a
    return Timeline(*_k.merge(a.starts, a.ends, int(max_gap)))


def overlap_duration(a: Timeline, b: Timeline) -> int:
    """``intersect(a, b).duration`` without materializing the intersection."""
    return _k.intersection_length(a.starts, a.ends, b.starts, b.ends)
