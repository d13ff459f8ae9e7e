"""NumPy implementation of the Fock-weight block kernel.

Selected automatically when the compiled extension is unavailable (or when
LEVELSCOPE_BACKEND=python is set). Must stay numerically interchangeable
with levelscope._fockcore; tests/test_backends.py enforces that.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def fock_weight_block(
    b: int,
    log_gamma: float,
    log_zeta: float,
    log_fact: np.ndarray,
    n_start: int,
    n_stop: int,
    out: np.ndarray,
) -> None:
    """Fill out[i] with the Fock weight at level n = n_start + i.

    The weight of level n for an initial index b, with real kernels
    gamma = exp(log_gamma), zeta = exp(log_zeta), is the finite sum

        P(n) = sum_{p=0}^{min(b, n)}  b! n! / ((p!)^2 (n-p)! (b-p)!)
                                      * gamma^(b+n-2p) * zeta^(2p+1)

    evaluated term by term in log space. log_fact must hold ln(k!) for
    k = 0 .. at least n_stop - 1. Every term is positive and bounded by 1,
    so plain exp-and-add is safe; underflow to zero is harmless.
    """
    n = np.arange(n_start, n_stop)
    # Keep the exact operation order of the compiled kernel so both
    # backends round identically (the lead sum is ~1e5 in magnitude, so
    # re-association alone would cost ~1e-11 of relative agreement).
    lead = log_fact[b] + log_fact[n] + (b + n) * log_gamma + log_zeta
    acc = np.zeros(n.shape[0])
    for p in range(0, b + 1):
        sel = n >= p
        if not np.any(sel):
            continue
        ns = n[sel]
        term = (
            lead[sel]
            - 2.0 * log_fact[p]
            - log_fact[ns - p]
            - log_fact[b - p]
            + p * (2.0 * log_zeta - 2.0 * log_gamma)
        )
        acc[sel] += np.exp(term)
    out[: n.shape[0]] = acc
