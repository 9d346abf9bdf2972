# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels; same surface as ``_kernels_py``."""

from libc.stdint cimport uint64_t


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


def down_closure(int n, masks):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    table = bytearray(size)
    cdef unsigned char[::1] t = table
    cdef Py_ssize_t m, step
    cdef int bit
    for mm in masks:
        t[<Py_ssize_t>mm] = 1
    with nogil:
        for bit in range(n):
            step = (<Py_ssize_t>1) << bit
            for m in range(size):
                if (m & step) and t[m]:
                    t[m ^ step] = 1
    return table


def minimal_absent(int n, table):
    cdef const unsigned char[::1] t = table
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t m, rest, low
    cdef bint ok
    out = []
    for m in range(1, size):
        if t[m]:
            continue
        rest = m
        ok = True
        while rest:
            low = rest & -rest
            if not t[m ^ low]:
                ok = False
                break
            rest ^= low
        if ok:
            out.append(m)
    return out


def maximal_present(int n, table):
    cdef const unsigned char[::1] t = table
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t full = size - 1
    cdef Py_ssize_t m, rest, low
    cdef bint ok
    out = []
    for m in range(size):
        if not t[m]:
            continue
        rest = full ^ m
        ok = True
        while rest:
            low = rest & -rest
            if t[m | low]:
                ok = False
                break
            rest ^= low
        if ok:
            out.append(m)
    return out


def pairwise_or(a, b):
    cdef list la = list(a)
    cdef list lb = list(b)
    cdef set seen = set()
    cdef uint64_t x, y
    for xa in la:
        x = xa
        for yb in lb:
            y = yb
            seen.add(x | y)
    return sorted(seen)


def max_common(a, b):
    cdef list la = list(a)
    cdef list lb = list(b)
    cdef Py_ssize_t i, j
    cdef int best = -1, bi = -1, bj = -1, c
    cdef uint64_t x
    for i in range(len(la)):
        x = la[i]
        for j in range(len(lb)):
            c = _popcount(x & <uint64_t>lb[j])
            if c > best:
                best = c
                bi = i
                bj = j
    return best, bi, bj
