# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for the threshold-matching simulation.

Mirrors ``polysched._pykernels.rf_simulate`` exactly; the dispatcher in
``polysched.schedulers`` verifies that every product fits in 63-bit
integers before calling in here.
"""

from cpython cimport array

import array


def rf_simulate(int n_people,
                long long[::1] eu, long long[::1] ev, long long[::1] gnum,
                long long[::1] order,
                long long xnum, long long xden, long long astar,
                long long horizon):
    cdef Py_ssize_t m = gnum.shape[0]
    cdef array.array d_arr = array.array('q', bytes(8 * m))
    cdef long long[::1] d = d_arr
    cdef array.array busy_arr = array.array('q', bytes(8 * n_people))
    cdef long long[::1] busy = busy_arr
    cdef array.array sel_arr = array.array('q', bytes(8 * m))
    cdef long long[::1] sel = sel_arr
    cdef long long best = -1
    cdef long long best_day = -1
    cdef long long thr = xnum * astar
    cdef long long t, val
    cdef Py_ssize_t i, k, nsel
    cdef Py_ssize_t e
    cdef list day_counts = []
    cdef list flat = []

    for i in range(n_people):
        busy[i] = -1
    for t in range(horizon):
        nsel = 0
        for i in range(m):
            e = <Py_ssize_t> order[i]
            if gnum[e] * d[e] * xden >= thr:
                if busy[<Py_ssize_t> eu[e]] != t and busy[<Py_ssize_t> ev[e]] != t:
                    busy[<Py_ssize_t> eu[e]] = t
                    busy[<Py_ssize_t> ev[e]] = t
                    sel[nsel] = e
                    nsel += 1
        for k in range(nsel):
            e = <Py_ssize_t> sel[k]
            val = gnum[e] * (d[e] + 1)
            if val > best:
                best = val
                best_day = t
            d[e] = -1
        for i in range(m):
            d[i] += 1
        day_counts.append(nsel)
        for k in range(nsel):
            flat.append(sel[k])
    for i in range(m):
        val = gnum[i] * d[i]
        if val > best:
            best = val
            best_day = horizon - 1
    return best, best_day, list(d_arr), day_counts, flat
