# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trajectory walker; same contract as ``_pykernel.walk_table``.

Elements are held in int64.  When the next element would leave int64 the
walk stops with OVERFLOW and the caller repeats it with Python integers.
"""

cdef enum:
    CYCLE = 0
    ESCAPED = 1
    STEP_LIMIT = 2
    OVERFLOW = 3


def walk_table(long long m, const long long[:] mult, const long long[:] offs,
               const long long[:] qmax, long long x0, long long threshold,
               long long m_floor, long long step_limit, int[:] owner=None,
               int label=0, long long ceiling=-1):
    cdef long long x = x0, y, q, prev = 0, lo = x0, hi = x0
    cdef long long maxima = 0, steps = 0
    cdef Py_ssize_t r
    cdef Py_ssize_t n_owner = owner.shape[0] if owner is not None else 0
    cdef bint has_prev = False
    cdef int o, last_hit = 0
    hits = []
    if ceiling < 0:
        ceiling = threshold * threshold if threshold < 3037000499 else 0x7FFFFFFFFFFFFFFF
    while steps < step_limit:
        q = x // m
        r = <Py_ssize_t>(x % m)
        if q > qmax[r]:
            return OVERFLOW, steps, maxima, lo, hi, x, hits
        y = mult[r] * q + offs[r]
        steps += 1
        if has_prev and prev < x and x > y:
            maxima += 1
        prev = x
        has_prev = True
        x = y
        if x == x0:
            return CYCLE, steps, maxima, lo, hi, x, hits
        if x < lo:
            lo = x
        elif x > hi:
            hi = x
        if x < n_owner:
            o = owner[x]
            if o == 0:
                owner[x] = label
            elif o > 0 and o != label and o != last_hit:
                hits.append(o)
                last_hit = o
        if x > threshold and (maxima > m_floor or x > ceiling):
            return ESCAPED, steps, maxima, lo, hi, x, hits
    return STEP_LIMIT, steps, maxima, lo, hi, x, hits
