# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fock-weight block kernel.

Same contract as levelscope._fockcore_py.fock_weight_block; this is the hot
inner loop of every distribution, moment and fidelity evaluation.
"""

from libc.math cimport exp

import numpy as np

BACKEND = "compiled"


def fock_weight_block(
    int b,
    double log_gamma,
    double log_zeta,
    double[::1] log_fact,
    Py_ssize_t n_start,
    Py_ssize_t n_stop,
    double[::1] out,
):
    cdef Py_ssize_t n, p, i, pmax
    cdef double acc, lead, lfb
    lfb = log_fact[b]
    for n in range(n_start, n_stop):
        i = n - n_start
        pmax = b if b < n else n
        lead = lfb + log_fact[n] + (b + n) * log_gamma + log_zeta
        acc = 0.0
        for p in range(0, pmax + 1):
            acc += exp(
                lead
                - 2.0 * log_fact[p]
                - log_fact[n - p]
                - log_fact[b - p]
                + p * (2.0 * log_zeta - 2.0 * log_gamma)
            )
        out[i] = acc
