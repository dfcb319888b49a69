# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernels: interference sums and phase-lattice scans.

Mirrors ``_kernels_py``: same probe ordering, first strictly-better point
wins lattice scans, so either backend can serve the sweep explorer.
"""

from libc.math cimport cos, INFINITY

import numpy as np


def interference_sum(double[::1] mags, double[::1] phases):
    """Sum of mags[i]*mags[j]*cos(phases[i]-phases[j]) over index pairs i < j."""
    cdef Py_ssize_t n = mags.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    with nogil:
        for i in range(n - 1):
            for j in range(i + 1, n):
                acc += mags[i] * mags[j] * cos(phases[i] - phases[j])
    return acc


def block_scores(double[::1] mags, double[:, ::1] phase_rows):
    """Score sum(m^2) + 2*interference for each row of ``phase_rows``."""
    cdef Py_ssize_t n = mags.shape[0]
    cdef Py_ssize_t rows = phase_rows.shape[0]
    cdef Py_ssize_t r, i, j
    cdef double base = 0.0, acc
    out = np.empty(rows)
    cdef double[::1] out_v = out
    with nogil:
        for i in range(n):
            base += mags[i] * mags[i]
        for r in range(rows):
            acc = 0.0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    acc += mags[i] * mags[j] * cos(phase_rows[r, i] - phase_rows[r, j])
            out_v[r] = base + 2.0 * acc
    return out


def lattice_block_extremes(double[::1] mags, double step, Py_ssize_t lattice):
    """Extremes of the block score over the gauge-fixed phase lattice.

    The first phase is pinned to 0 (scores depend only on phase differences);
    the remaining ``n - 1`` phases range over ``{0, step, ..., (lattice-1)*step}``
    in product order with the last phase varying fastest. Returns
    ``(min_score, min_phases, max_score, max_phases)`` where ties keep the
    first lattice point scanned.

    Lattice phases take only ``lattice`` distinct values, so the scan scores
    each point as the squared modulus of a phasor sum over tabulated
    cos/sin values: O(n) per point with no trig calls in the loop.
    """
    cdef Py_ssize_t n = mags.shape[0]
    if n == 0:
        empty = np.zeros(0)
        return 0.0, empty, 0.0, empty

    grid = np.arange(lattice) * step
    cos_table = np.cos(grid)
    sin_table = np.sin(grid)
    cdef double[::1] ct = cos_table
    cdef double[::1] st = sin_table
    digits = np.zeros(n, dtype=np.intp)
    min_digits = np.zeros(n, dtype=np.intp)
    max_digits = np.zeros(n, dtype=np.intp)
    cdef Py_ssize_t[::1] dg = digits
    cdef Py_ssize_t[::1] dg_min = min_digits
    cdef Py_ssize_t[::1] dg_max = max_digits

    cdef double best_min = INFINITY
    cdef double best_max = -INFINITY
    cdef double re, im, score
    cdef Py_ssize_t i, pos
    cdef bint running = True

    with nogil:
        while running:
            re = 0.0
            im = 0.0
            for i in range(n):
                re += mags[i] * ct[dg[i]]
                im += mags[i] * st[dg[i]]
            score = re * re + im * im
            if score < best_min:
                best_min = score
                for i in range(n):
                    dg_min[i] = dg[i]
            if score > best_max:
                best_max = score
                for i in range(n):
                    dg_max[i] = dg[i]
            # odometer over positions 1..n-1, last position fastest
            running = False
            for pos in range(n - 1, 0, -1):
                dg[pos] += 1
                if dg[pos] < lattice:
                    running = True
                    break
                dg[pos] = 0
    return best_min, min_digits * step, best_max, max_digits * step
