"""Pure-Python reference implementation of the hot kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Inputs are integer tick arrays (anything indexable yielding ints); interval
outputs are returned as a pair of ``int64`` numpy arrays ``(starts, ends)``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

NAME = "python"

_INF = 1 << 62


def _pack(starts: list[int], ends: list[int]) -> tuple[np.ndarray, np.ndarray]:
    return np.asarray(starts, dtype=np.int64), np.asarray(ends, dtype=np.int64)


def merge(starts: Sequence[int], ends: Sequence[int], gap: int) -> tuple[np.ndarray, np.ndarray]:
    """Fuse intervals (sorted by start) whose separation is at most ``gap`` ticks."""
    out_s: list[int] = []
    out_e: list[int] = []
    for s, e in zip(starts, ends):
        s = int(s)
        e = int(e)
        if out_e and s - out_e[-1] <= gap:
            if e > out_e[-1]:
                out_e[-1] = e
        else:
            out_s.append(s)
            out_e.append(e)
    return _pack(out_s, out_e)


def intersect(
    a_starts: Sequence[int], a_ends: Sequence[int], b_starts: Sequence[int], b_ends: Sequence[int]
) -> tuple[np.ndarray, np.ndarray]:
    out_s: list[int] = []
    out_e: list[int] = []
    i = j = 0
    na, nb = len(a_starts), len(b_starts)
    while i < na and j < nb:
        lo = max(int(a_starts[i]), int(b_starts[j]))
        hi = min(int(a_ends[i]), int(b_ends[j]))
        if lo < hi:
            out_s.append(lo)
            out_e.append(hi)
        if a_ends[i] < b_ends[j]:
            i += 1
        else:
            j += 1
    return _pack(out_s, out_e)


def subtract(
    a_starts: Sequence[int], a_ends: Sequence[int], b_starts: Sequence[int], b_ends: Sequence[int]
) -> tuple[np.ndarray, np.ndarray]:
    out_s: list[int] = []
    out_e: list[int] = []
    j = 0
    nb = len(b_starts)
    for s, e in zip(a_starts, a_ends):
        cur = int(s)
        e = int(e)
        while j < nb and b_ends[j] <= cur:
            j += 1
        k = j
        while k < nb and b_starts[k] < e:
            if b_starts[k] > cur:
                out_s.append(cur)
                out_e.append(int(b_starts[k]))
            cur = max(cur, int(b_ends[k]))
            if cur >= e:
                break
            k += 1
        if cur < e:
            out_s.append(cur)
            out_e.append(e)
    return _pack(out_s, out_e)


def intersection_length(
    a_starts: Sequence[int], a_ends: Sequence[int], b_starts: Sequence[int], b_ends: Sequence[int]
) -> int:
    total = 0
    i = j = 0
    na, nb = len(a_starts), len(b_starts)
    while i < na and j < nb:
        lo = max(a_starts[i], b_starts[j])
        hi = min(a_ends[i], b_ends[j])
        if lo < hi:
            total += int(hi - lo)
        if a_ends[i] < b_ends[j]:
            i += 1
        else:
            j += 1
    return total


def der_sweep(
    ref_starts: Sequence[int],
    ref_ends: Sequence[int],
    ref_speaker: Sequence[int],
    sys_starts: Sequence[int],
    sys_ends: Sequence[int],
    sys_speaker: Sequence[int],
    ref_to_sys: Sequence[int],
    sys_to_ref: Sequence[int],
) -> tuple[int, int, int, int]:
    """Accumulate ``(fa, miss, error, total)`` ticks over constant-activity regions.

    Each speaker's intervals must be canonical (disjoint, non-touching), so a
    speaker is active at most once at any instant.
    """
    n_ref_spk = len(ref_to_sys)
    events: list[tuple[int, int, int]] = []
    for s, e, k in zip(ref_starts, ref_ends, ref_speaker):
        events.append((int(s), int(k), 1))
        events.append((int(e), int(k), -1))
    for s, e, k in zip(sys_starts, sys_ends, sys_speaker):
        events.append((int(s), n_ref_spk + int(k), 1))
        events.append((int(e), n_ref_spk + int(k), -1))
    events.sort(key=lambda ev: ev[0])

    ref_active = [0] * n_ref_spk
    sys_active = [0] * len(sys_to_ref)
    n_ref = n_sys = n_correct = 0
    fa = miss = error = total = 0
    prev = None
    for t, code, delta in events:
        if prev is not None and t > prev:
            d = t - prev
            total += d * n_ref
            if n_ref > n_sys:
                miss += d * (n_ref - n_sys)
                error += d * (n_sys - n_correct)
            else:
                fa += d * (n_sys - n_ref)
                error += d * (n_ref - n_correct)
        prev = t
        if code < n_ref_spk:
            ref_active[code] += delta
            n_ref += delta
            m = ref_to_sys[code]
            if m >= 0 and sys_active[m]:
                n_correct += delta
        else:
            k = code - n_ref_spk
            sys_active[k] += delta
            n_sys += delta
            r = sys_to_ref[k]
            if r >= 0 and ref_active[r]:
                n_correct += delta
    return fa, miss, error, total


def linear_assignment(weights: np.ndarray) -> np.ndarray:
    """Maximum-weight perfect assignment on a square integer matrix.

    Shortest augmenting path Hungarian method with row/column potentials,
    O(n^3). Returns ``col`` where row ``i`` is assigned column ``col[i]``.
    """
    w = [[int(x) for x in row] for row in np.asarray(weights)]
    n = len(w)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    # minimise negated weights; 1-based indexing with a virtual column 0
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [_INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = w[i0 - 1]
            delta = _INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = -row[j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    col = np.empty(n, dtype=np.int64)
    for j in range(1, n + 1):
        col[p[j] - 1] = j - 1
    return col
