# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled arc-space kernels.

Arcs are laid out in lexicographic (tail, head) order, so the arcs leaving
node ``j`` occupy the contiguous block ``offsets[j]:offsets[j+1]``. ``rev[b]``
is the index of the reversed arc and ``weight[j] == 2 / deg(j)``.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.intp_t idx_t

IMPLEMENTATION = "cython"


cdef inline void _step(const double complex[::1] x, double complex[::1] out,
                       const idx_t[::1] rev, const idx_t[::1] offsets,
                       const double[::1] weight) noexcept nogil:
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef Py_ssize_t j, b
    cdef double complex s, c
    for j in range(n):
        s = 0
        for b in range(offsets[j], offsets[j + 1]):
            s = s + x[rev[b]]
        c = s * weight[j]
        for b in range(offsets[j], offsets[j + 1]):
            out[b] = c - x[rev[b]]


cdef inline void _adjoint_step(const double complex[::1] x, double complex[::1] out,
                               const idx_t[::1] rev, const idx_t[::1] offsets,
                               const double[::1] weight) noexcept nogil:
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef Py_ssize_t j, b
    cdef double complex s, c
    for j in range(n):
        s = 0
        for b in range(offsets[j], offsets[j + 1]):
            s = s + x[b]
        c = s * weight[j]
        for b in range(offsets[j], offsets[j + 1]):
            out[rev[b]] = c - x[b]


def step(const double complex[::1] x, double complex[::1] out,
         const idx_t[::1] rev, const idx_t[::1] offsets, const double[::1] weight):
    """One walk step ``out = U x``; ``out`` must not alias ``x``."""
    with nogil:
        _step(x, out, rev, offsets, weight)


def adjoint_step(const double complex[::1] x, double complex[::1] out,
                 const idx_t[::1] rev, const idx_t[::1] offsets, const double[::1] weight):
    """``out = U^dagger x``; ``out`` must not alias ``x``."""
    with nogil:
        _adjoint_step(x, out, rev, offsets, weight)


def step_batch(const double complex[:, ::1] xs, double complex[:, ::1] out,
               const idx_t[::1] rev, const idx_t[::1] offsets, const double[::1] weight):
    """Row-wise :func:`step` over a stack of states."""
    cdef Py_ssize_t r
    with nogil:
        for r in range(xs.shape[0]):
            _step(xs[r], out[r], rev, offsets, weight)


def tail_occupancy(const double complex[:, ::1] xs, const idx_t[::1] offsets, double[:, ::1] out):
    """``out[r, j]`` = squared norm of block ``j`` of row ``r``."""
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef Py_ssize_t r, j, b
    cdef double acc
    cdef double complex z
    with nogil:
        for r in range(xs.shape[0]):
            for j in range(n):
                acc = 0.0
                for b in range(offsets[j], offsets[j + 1]):
                    z = xs[r, b]
                    acc = acc + z.real * z.real + z.imag * z.imag
                out[r, j] = acc
