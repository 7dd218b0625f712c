# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled interval-sweep and assignment kernels.

Signatures and semantics mirror ``diarscore._pykernels`` exactly.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

NAME = "cython"

cdef int64_t INF = (<int64_t>1) << 62


cdef inline cnp.ndarray _i64(object a):
    return np.ascontiguousarray(a, dtype=np.int64)


def merge(starts, ends, int64_t gap):
    cdef const int64_t[::1] s = _i64(starts)
    cdef const int64_t[::1] e = _i64(ends)
    cdef Py_ssize_t n = s.shape[0], i, k = -1
    out_s_arr = np.empty(n, dtype=np.int64)
    out_e_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] os_ = out_s_arr
    cdef int64_t[::1] oe = out_e_arr
    for i in range(n):
        if k >= 0 and s[i] - oe[k] <= gap:
            if e[i] > oe[k]:
                oe[k] = e[i]
        else:
            k += 1
            os_[k] = s[i]
            oe[k] = e[i]
    return out_s_arr[:k + 1].copy(), out_e_arr[:k + 1].copy()


def intersect(a_starts, a_ends, b_starts, b_ends):
    cdef const int64_t[::1] as_ = _i64(a_starts)
    cdef const int64_t[::1] ae = _i64(a_ends)
    cdef const int64_t[::1] bs = _i64(b_starts)
    cdef const int64_t[::1] be = _i64(b_ends)
    cdef Py_ssize_t na = as_.shape[0], nb = bs.shape[0]
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef int64_t lo, hi
    out_s_arr = np.empty(na + nb, dtype=np.int64)
    out_e_arr = np.empty(na + nb, dtype=np.int64)
    cdef int64_t[::1] os_ = out_s_arr
    cdef int64_t[::1] oe = out_e_arr
    while i < na and j < nb:
        lo = as_[i] if as_[i] > bs[j] else bs[j]
        hi = ae[i] if ae[i] < be[j] else be[j]
        if lo < hi:
            os_[k] = lo
            oe[k] = hi
            k += 1
        if ae[i] < be[j]:
            i += 1
        else:
            j += 1
    return out_s_arr[:k].copy(), out_e_arr[:k].copy()


def subtract(a_starts, a_ends, b_starts, b_ends):
    cdef const int64_t[::1] as_ = _i64(a_starts)
    cdef const int64_t[::1] ae = _i64(a_ends)
    cdef const int64_t[::1] bs = _i64(b_starts)
    cdef const int64_t[::1] be = _i64(b_ends)
    cdef Py_ssize_t na = as_.shape[0], nb = bs.shape[0]
    cdef Py_ssize_t i, j = 0, k, n = 0
    cdef int64_t cur, e
    out_s_arr = np.empty(na + nb, dtype=np.int64)
    out_e_arr = np.empty(na + nb, dtype=np.int64)
    cdef int64_t[::1] os_ = out_s_arr
    cdef int64_t[::1] oe = out_e_arr
    for i in range(na):
        cur = as_[i]
        e = ae[i]
        while j < nb and be[j] <= cur:
            j += 1
        k = j
        while k < nb and bs[k] < e:
            if bs[k] > cur:
                os_[n] = cur
                oe[n] = bs[k]
                n += 1
            if be[k] > cur:
                cur = be[k]
            if cur >= e:
                break
            k += 1
        if cur < e:
            os_[n] = cur
            oe[n] = e
            n += 1
    return out_s_arr[:n].copy(), out_e_arr[:n].copy()


def intersection_length(a_starts, a_ends, b_starts, b_ends):
    cdef const int64_t[::1] as_ = _i64(a_starts)
    cdef const int64_t[::1] ae = _i64(a_ends)
    cdef const int64_t[::1] bs = _i64(b_starts)
    cdef const int64_t[::1] be = _i64(b_ends)
    cdef Py_ssize_t na = as_.shape[0], nb = bs.shape[0]
    cdef Py_ssize_t i = 0, j = 0
    cdef int64_t lo, hi, total = 0
    while i < na and j < nb:
        lo = as_[i] if as_[i] > bs[j] else bs[j]
        hi = ae[i] if ae[i] < be[j] else be[j]
        if lo < hi:
            total += hi - lo
        if ae[i] < be[j]:
            i += 1
        else:
            j += 1
    return int(total)


def der_sweep(ref_starts, ref_ends, ref_speaker,
              sys_starts, sys_ends, sys_speaker,
              ref_to_sys, sys_to_ref):
    cdef const int64_t[::1] r2s = _i64(ref_to_sys)
    cdef const int64_t[::1] s2r = _i64(sys_to_ref)
    cdef Py_ssize_t n_ref_spk = r2s.shape[0], n_sys_spk = s2r.shape[0]

    times_arr = np.concatenate([_i64(ref_starts), _i64(ref_ends),
                                _i64(sys_starts), _i64(sys_ends)])
    ref_code = _i64(ref_speaker)
    sys_code = _i64(sys_speaker) + n_ref_spk
    codes_arr = np.concatenate([ref_code, ref_code, sys_code, sys_code])
    n_r = ref_code.shape[0]
    n_s = sys_code.shape[0]
    deltas_arr = np.concatenate([np.ones(n_r, np.int64), -np.ones(n_r, np.int64),
                                 np.ones(n_s, np.int64), -np.ones(n_s, np.int64)])
    order_arr = np.argsort(times_arr, kind="stable")

    cdef const int64_t[::1] times = times_arr
    cdef const int64_t[::1] codes = codes_arr
    cdef const int64_t[::1] deltas = deltas_arr
    cdef const cnp.npy_intp[::1] order = order_arr

    ref_active_arr = np.zeros(n_ref_spk, np.int64)
    sys_active_arr = np.zeros(n_sys_spk, np.int64)
    cdef int64_t[::1] ref_active = ref_active_arr
    cdef int64_t[::1] sys_active = sys_active_arr

    cdef Py_ssize_t idx, ev, n_ev = order.shape[0]
    cdef int64_t t, prev = 0, d, code, delta, m
    cdef int64_t n_ref = 0, n_sys = 0, n_correct = 0
    cdef int64_t fa = 0, miss = 0, error = 0, total = 0
    cdef bint started = False
    for idx in range(n_ev):
        ev = order[idx]
        t = times[ev]
        if started and t > prev:
            d = t - prev
            total += d * n_ref
            if n_ref > n_sys:
                miss += d * (n_ref - n_sys)
                error += d * (n_sys - n_correct)
            else:
                fa += d * (n_sys - n_ref)
                error += d * (n_ref - n_correct)
        prev = t
        started = True
        code = codes[ev]
        delta = deltas[ev]
        if code < n_ref_spk:
            ref_active[code] += delta
            n_ref += delta
            m = r2s[code]
            if m >= 0 and sys_active[m]:
                n_correct += delta
        else:
            code -= n_ref_spk
            sys_active[code] += delta
            n_sys += delta
            m = s2r[code]
            if m >= 0 and ref_active[m]:
                n_correct += delta
    return int(fa), int(miss), int(error), int(total)


def linear_assignment(weights):
    cdef const int64_t[:, ::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t n = w.shape[0]
    col_arr = np.empty(n, dtype=np.int64)
    if n == 0:
        return col_arr
    u_arr = np.zeros(n + 1, np.int64)
    v_arr = np.zeros(n + 1, np.int64)
    p_arr = np.zeros(n + 1, np.int64)
    way_arr = np.zeros(n + 1, np.int64)
    minv_arr = np.empty(n + 1, np.int64)
    used_arr = np.empty(n + 1, np.uint8)
    cdef int64_t[::1] u = u_arr
    cdef int64_t[::1] v = v_arr
    cdef int64_t[::1] p = p_arr
    cdef int64_t[::1] way = way_arr
    cdef int64_t[::1] minv = minv_arr
    cdef unsigned char[::1] used = used_arr
    cdef int64_t[::1] col = col_arr
    cdef Py_ssize_t i, j, j0, j1, i0
    cdef int64_t delta, cur
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        for j in range(n + 1):
            minv[j] = INF
            used[j] = 0
        while True:
            used[j0] = 1
            i0 = p[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = -w[i0 - 1, j - 1] - u[i0] - v[j]
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
    for j in range(1, n + 1):
        col[p[j] - 1] = j - 1
    return col_arr
