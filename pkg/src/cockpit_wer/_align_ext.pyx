# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled alignment kernel. Mirrors ``_align_py`` exactly."""
from libc.stdlib cimport malloc, free

cdef enum:
    MATCH = 0
    SUBSTITUTE = 1
    DELETE = 2
    INSERT = 3


cdef void _suffix_costs(const int[:] ref, const int[:] hyp, int* cost) noexcept nogil:
    cdef Py_ssize_t n = ref.shape[0], m = hyp.shape[0], w = m + 1
    cdef Py_ssize_t i, j, row, below
    cdef int best, c, r
    for j in range(m + 1):
        cost[n * w + j] = <int>(m - j)
    for i in range(n - 1, -1, -1):
        row = i * w
        below = row + w
        cost[row + m] = <int>(n - i)
        r = ref[i]
        for j in range(m - 1, -1, -1):
            best = cost[below + j + 1] + (r != hyp[j])
            c = cost[below + j] + 1
            if c < best:
                best = c
            c = cost[row + j + 1] + 1
            if c < best:
                best = c
            cost[row + j] = best


def edit_ops(const int[:] ref, const int[:] hyp):
    cdef Py_ssize_t n = ref.shape[0], m = hyp.shape[0], w = m + 1
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef int here, diag
    cdef int* cost = <int*>malloc((n + 1) * w * sizeof(int))
    cdef unsigned char* ops = <unsigned char*>malloc(n + m + 1)
    if cost == NULL or ops == NULL:
        free(cost)
        free(ops)
        raise MemoryError()
    try:
        with nogil:
            _suffix_costs(ref, hyp, cost)
            while i < n or j < m:
                here = cost[i * w + j]
                if i < n and j < m:
                    diag = cost[(i + 1) * w + j + 1]
                    if ref[i] == hyp[j] and diag == here:
                        ops[k] = MATCH
                        i += 1
                        j += 1
                        k += 1
                        continue
                    if ref[i] != hyp[j] and diag + 1 == here:
                        ops[k] = SUBSTITUTE
                        i += 1
                        j += 1
                        k += 1
                        continue
                if i < n and cost[(i + 1) * w + j] + 1 == here:
                    ops[k] = DELETE
                    i += 1
                else:
                    ops[k] = INSERT
                    j += 1
                k += 1
        return [ops[t] for t in range(k)]
    finally:
        free(cost)
        free(ops)


def edit_distance(const int[:] ref, const int[:] hyp):
    cdef Py_ssize_t n = ref.shape[0], m = hyp.shape[0]
    cdef Py_ssize_t i, j
    cdef int best, r
    cdef int* prev = <int*>malloc((m + 1) * sizeof(int))
    cdef int* cur = <int*>malloc((m + 1) * sizeof(int))
    cdef int* tmp
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    try:
        with nogil:
            for j in range(m + 1):
                prev[j] = <int>j
            for i in range(1, n + 1):
                cur[0] = <int>i
                r = ref[i - 1]
                for j in range(1, m + 1):
                    best = prev[j - 1] + (r != hyp[j - 1])
                    if prev[j] + 1 < best:
                        best = prev[j] + 1
                    if cur[j - 1] + 1 < best:
                        best = cur[j - 1] + 1
                    cur[j] = best
                tmp = prev
                prev = cur
                cur = tmp
            best = prev[m]
        return best
    finally:
        free(prev)
        free(cur)
