# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: variation component sweeps and tagged corner sums."""

import numpy as np

cimport numpy as cnp

COMPILED = True


def hk_components(cnp.ndarray[cnp.float64_t, ndim=2] G):
    cdef Py_ssize_t ny = G.shape[0]
    cdef Py_ssize_t nx = G.shape[1]
    cdef Py_ssize_t i, j
    cdef double sup = 0.0, v1 = 0.0, v2 = 0.0, v12 = 0.0
    cdef double row, col, a, diff

    for j in range(ny):
        row = 0.0
        for i in range(nx):
            a = G[j, i]
            if a < 0.0:
                a = -a
            if a > sup:
                sup = a
            if i > 0:
                diff = G[j, i] - G[j, i - 1]
                if diff < 0.0:
                    diff = -diff
                row += diff
        if row > v1:
            v1 = row

    for i in range(nx):
        col = 0.0
        for j in range(1, ny):
            diff = G[j, i] - G[j - 1, i]
            if diff < 0.0:
                diff = -diff
            col += diff
        if col > v2:
            v2 = col

    for j in range(ny - 1):
        for i in range(nx - 1):
            diff = G[j, i] + G[j + 1, i + 1] - G[j, i + 1] - G[j + 1, i]
            if diff < 0.0:
                diff = -diff
            v12 += diff

    return sup, v1, v2, v12


def corner_weighted_sum(cnp.ndarray[cnp.float64_t, ndim=2] T,
                        cnp.ndarray[cnp.float64_t, ndim=2] G):
    cdef Py_ssize_t ny = T.shape[0]
    cdef Py_ssize_t nx = T.shape[1]
    cdef Py_ssize_t i, j
    cdef double total = 0.0

    for j in range(ny):
        for i in range(nx):
            total += T[j, i] * (G[j, i] + G[j + 1, i + 1] - G[j, i + 1] - G[j + 1, i])
    return total


def line_weighted_sum(cnp.ndarray[cnp.float64_t, ndim=1] t,
                      cnp.ndarray[cnp.float64_t, ndim=1] g):
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t i
    cdef double total = 0.0

    for i in range(n):
        total += t[i] * (g[i + 1] - g[i])
    return total
