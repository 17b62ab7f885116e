"""Gauss quadrature nodes at working precision.

Gauss-Chebyshev nodes come from the closed cosine formula; Gauss-Legendre
nodes are float64 seeds polished by Newton iteration on the Legendre
recurrence, which converges quadratically to any target precision.
"""

from __future__ import annotations

import numpy as np
from mpmath import mp

from .intervals import Interval
from .precision import DEFAULT_CTX, PrecisionContext


def chebyshev_nodes(N: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Ascending Gauss-Chebyshev nodes cos((2k-1) pi / (2N)) on (-1, 1).

    Together with equal weights 1/N they integrate
    (1/pi) \\int f(x) dx / sqrt(1 - x^2) exactly for deg f <= 2N - 1.
    """
    if N < 1:
        raise ValueError("need at least one node")
    with ctx.workprec():
        return [mp.cos(mp.pi * (2 * k - 1) / (2 * N)) for k in range(N, 0, -1)]


def _legendre_pair(M: int, x):
    """(P_M(x), P_(M-1)(x)) by the Bonnet recurrence."""
    p_prev = mp.mpf(1)
    p_cur = x
    for k in range(1, M):
        p_prev, p_cur = p_cur, ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1)
    return p_cur, p_prev


def gauss_legendre(M: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Gauss-Legendre nodes and weights on [-1, 1] at working precision."""
    if M < 1:
        raise ValueError("need at least one node")
    seeds, _ = np.polynomial.legendre.leggauss(M)
    nodes = []
    weights = []
    # each Newton step doubles the correct digits from the ~1e-15 seeds
    steps = max(3, int(np.ceil(np.log2(ctx.mantissa_bits / 40.0))) + 2)
    with ctx.workprec(extra=16):
        for seed in seeds:
            x = mp.mpf(float(seed))
            for _ in range(steps):
                pm, pm1 = _legendre_pair(M, x)
                dp = M * (x * pm - pm1) / (x * x - 1)
                x = x - pm / dp
            pm, pm1 = _legendre_pair(M, x)
            dp = M * (x * pm - pm1) / (x * x - 1)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    return nodes, weights


def gauss_legendre_interval(M: int, J: Interval, ctx: PrecisionContext = DEFAULT_CTX):
    """Gauss-Legendre rule mapped affinely onto [J.a, J.b]."""
    nodes, weights = gauss_legendre(M, ctx)
    with ctx.workprec():
        mid = mp.mpf(J.a) + (mp.mpf(J.b) - mp.mpf(J.a)) / 2
        half = (mp.mpf(J.b) - mp.mpf(J.a)) / 2
        return [mid + half * x for x in nodes], [half * w for w in weights]
