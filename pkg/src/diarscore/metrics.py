"""Diarization error rate and Jaccard error rate.

Both metrics work on per-speaker timelines already clipped to the scoring
regions, share one optimal speaker mapping, and are accumulated in integer
ticks so that pooling across files is exact. No collar is applied and
overlapped speech is scored.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from ._backend import kernels as _k
from .errors import EmptyReference
from .timeline import Timeline, overlap_duration, subtract, to_seconds, union

SpeakerTimelines = Mapping[str, Timeline]


@dataclass(frozen=True)
class OverlapMatrix:
    """Pairwise overlap in ticks; rows and columns follow sorted speaker names."""

    ref_names: tuple[str, ...]
    sys_names: tuple[str, ...]
    values: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.ref_names), len(self.sys_names)

    @classmethod
    def from_array(cls, values, ref_names=None, sys_names=None) -> OverlapMatrix:
        arr = np.asarray(values, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(0, 0)
        n, m = arr.shape
        ref_names = tuple(ref_names) if ref_names is not None else tuple(f"r{i}" for i in range(n))
        sys_names = tuple(sys_names) if sys_names is not None else tuple(f"s{j}" for j in range(m))
        return cls(ref_names, sys_names, arr)


@dataclass(frozen=True)
class SpeakerMapping:
    """One-to-one partial pairing of reference to system speakers.

    ``pairs`` is sorted by reference name and only holds pairs with positive
    overlap; ``objective`` is their summed overlap in ticks.
    """

    pairs: tuple[tuple[str, str], ...]
    objective: int

    @property
    def ref_to_sys(self) -> dict[str, str]:
        return dict(self.pairs)

    @property
    def sys_to_ref(self) -> dict[str, str]:
        return {s: r for r, s in self.pairs}


@dataclass(frozen=True)
class DerComponents:
    """DER error components in ticks. ``total`` counts overlapped reference time once per speaker."""

    fa: int
    miss: int
    error: int
    total: int

    @property
    def der(self) -> float:
        """DER in percent."""
        if self.total <= 0:
            raise EmptyReference("DER is undefined: no scored reference speech")
        return 100.0 * (self.fa + self.miss + self.error) / self.total

    def __add__(self, other: DerComponents) -> DerComponents:
        return DerComponents(
            self.fa + other.fa, self.miss + other.miss, self.error + other.error, self.total + other.total
        )

    def seconds(self) -> dict[str, float]:
        return {
            "fa": to_seconds(self.fa),
            "miss": to_seconds(self.miss),
            "error": to_seconds(self.error),
            "total": to_seconds(self.total),
        }


@dataclass(frozen=True)
class SpeakerJer:
    speaker: str
    fa: int
    miss: int
    total: int
    paired_with: str | None

    @property
    def jer(self) -> float:
        if self.total == 0:
            # speaker only exists outside the scoring regions
            return 0.0
        return 100.0 * (self.fa + self.miss) / self.total

    @property
    def unscored(self) -> bool:
        return self.total == 0


@dataclass(frozen=True)
class JerComponents:
    speakers: tuple[SpeakerJer, ...]

    @property
    def jer(self) -> float:
        """Mean of per-speaker JER, in percent."""
        if not self.speakers:
            raise EmptyReference("JER is undefined: no reference speakers")
        return sum(s.jer for s in self.speakers) / len(self.speakers)


def build_overlap_matrix(ref: SpeakerTimelines, sys: SpeakerTimelines) -> OverlapMatrix:
    ref_names = tuple(sorted(ref))
    sys_names = tuple(sorted(sys))
    values = np.zeros((len(ref_names), len(sys_names)), dtype=np.int64)
    for i, r in enumerate(ref_names):
        if not ref[r]:
            continue
        for j, s in enumerate(sys_names):
            values[i, j] = overlap_duration(ref[r], sys[s])
    return OverlapMatrix(ref_names, sys_names, values)


def _solve(w: np.ndarray, rows: list[int], cols: list[int]) -> tuple[int, dict[int, int]]:
    """Best positive-pair matching of ``rows`` to ``cols``: (value, row -> col)."""
    if not rows or not cols:
        return 0, {}
    n = max(len(rows), len(cols))
    sub = np.zeros((n, n), dtype=np.int64)
    sub[: len(rows), : len(cols)] = w[np.ix_(rows, cols)]
    assign = _k.linear_assignment(sub)
    pairs = {}
    value = 0
    for a, b in enumerate(assign[: len(rows)].tolist()):
        if b < len(cols) and sub[a, b] > 0:
            pairs[rows[a]] = cols[b]
            value += int(sub[a, b])
    return value, pairs


def optimal_mapping(m: OverlapMatrix) -> SpeakerMapping:
    """Maximum total-overlap one-to-one mapping, ties broken lexicographically.

    Among all optimal matchings made of positive-overlap pairs, returns the one
    whose sorted ``(ref, sys)`` pair list is smallest. This is found greedily:
    walking reference speakers in name order, each takes the smallest system
    speaker that still admits an optimal completion (checked with an exact
    integer Hungarian solve), or stays unpaired if none does.
    """
    w = np.asarray(m.values, dtype=np.int64)
    n_ref, n_sys = w.shape if w.ndim == 2 else (0, 0)
    rows = list(range(n_ref))
    opt, witness = _solve(w, rows, list(range(n_sys)))

    fixed: dict[int, int] = {}
    base = 0
    free = set(range(n_sys))
    for i in rows:
        later = rows[i + 1 :]
        incumbent = witness.get(i)
        chosen = incumbent
        for j in sorted(free):
            if incumbent is not None and j >= incumbent:
                break
            if w[i, j] <= 0:
                continue
            rest, rest_pairs = _solve(w, later, sorted(free - {j}))
            if base + int(w[i, j]) + rest == opt:
                chosen = j
                witness = {**fixed, i: j, **rest_pairs}
                break
        if chosen is not None:
            fixed[i] = chosen
            free.discard(chosen)
            base += int(w[i, chosen])

    pairs = tuple((m.ref_names[i], m.sys_names[j]) for i, j in sorted(fixed.items()))
    return SpeakerMapping(pairs, base)


def _flatten(timelines: SpeakerTimelines, names: tuple[str, ...]):
    starts, ends, ids = [], [], []
    for k, name in enumerate(names):
        tl = timelines[name]
        starts.append(tl.starts)
        ends.append(tl.ends)
        ids.append(np.full(len(tl), k, dtype=np.int64))
    if not names:
        empty = np.zeros(0, np.int64)
        return empty, empty, empty
    return np.concatenate(starts), np.concatenate(ends), np.concatenate(ids)


def compute_der(ref: SpeakerTimelines, sys: SpeakerTimelines, mapping: SpeakerMapping) -> DerComponents:
    """DER components from a sweep over regions of constant speaker activity.

    For a region of length ``d`` with ``n_ref`` reference and ``n_sys`` system
    speakers active, of which ``n_correct`` are mapped pairs active together:
    MISS += d*max(0, n_ref-n_sys), FA += d*max(0, n_sys-n_ref),
    ERROR += d*(min(n_ref, n_sys) - n_correct), TOTAL += d*n_ref.

    Raises:
        EmptyReference: if there is no scored reference speech.
    """
    ref_names = tuple(sorted(ref))
    sys_names = tuple(sorted(sys))
    ref_idx = {name: k for k, name in enumerate(ref_names)}
    sys_idx = {name: k for k, name in enumerate(sys_names)}
    ref_to_sys = np.full(len(ref_names), -1, dtype=np.int64)
    sys_to_ref = np.full(len(sys_names), -1, dtype=np.int64)
    for r, s in mapping.pairs:
        ref_to_sys[ref_idx[r]] = sys_idx[s]
        sys_to_ref[sys_idx[s]] = ref_idx[r]
    fa, miss, error, total = _k.der_sweep(
        *_flatten(ref, ref_names), *_flatten(sys, sys_names), ref_to_sys, sys_to_ref
    )
    comps = DerComponents(int(fa), int(miss), int(error), int(total))
    if comps.total == 0:
        raise EmptyReference("DER is undefined: no scored reference speech")
    return comps


def compute_jer(ref: SpeakerTimelines, sys: SpeakerTimelines, mapping: SpeakerMapping) -> JerComponents:
    """Per-reference-speaker Jaccard error; unmapped system speakers cost nothing.

    Raises:
        EmptyReference: if there are no reference speakers.
    """
    if not ref:
        raise EmptyReference("JER is undefined: no reference speakers")
    paired = mapping.ref_to_sys
    speakers = []
    for name in sorted(ref):
        r = ref[name]
        partner = paired.get(name)
        if partner is None:
            d = r.duration
            speakers.append(SpeakerJer(name, fa=0, miss=d, total=d, paired_with=None))
            continue
        s = sys[partner]
        speakers.append(
            SpeakerJer(
                name,
                fa=subtract(s, r).duration,
                miss=subtract(r, s).duration,
                total=union(r, s).duration,
                paired_with=partner,
            )
        )
    return JerComponents(tuple(speakers))
