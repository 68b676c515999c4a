# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bit-sliced gate kernel.

``lanes[w, k]`` holds bit ``w`` of 64 basis states (word ``k``).  A gate is one
word-wise XOR/AND per lane word, so the cost is gates * ceil(states / 64).
"""
from libc.stdint cimport uint64_t, int32_t


def apply_gates(uint64_t[:, ::1] lanes, const int32_t[::1] ctrl1,
                const int32_t[::1] ctrl2, const int32_t[::1] target):
    cdef Py_ssize_t n_gates = target.shape[0]
    cdef Py_ssize_t n_words = lanes.shape[1]
    cdef Py_ssize_t g, k
    cdef int32_t c1, c2, t
    with nogil:
        for g in range(n_gates):
            c1 = ctrl1[g]
            c2 = ctrl2[g]
            t = target[g]
            if c1 < 0:
                for k in range(n_words):
                    lanes[t, k] = ~lanes[t, k]
            elif c2 < 0:
                for k in range(n_words):
                    lanes[t, k] ^= lanes[c1, k]
            else:
                for k in range(n_words):
                    lanes[t, k] ^= lanes[c1, k] & lanes[c2, k]
