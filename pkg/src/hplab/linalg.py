"""Small arbitrary-precision linear-algebra helpers built on mpmath."""

from __future__ import annotations

from mpmath import mp


def nullspace(rows, cols, entry, prec_bits: int):
    """Nullspace basis of an underdetermined rows x cols system.

    ``entry(i, j)`` supplies matrix elements.  A full QR factorization of
    the transpose is taken at the current working precision; columns of Q
    beyond the numerical rank span the nullspace.  Returns
    ``(basis_vectors, corank, rdiag)`` with basis vectors ordered as QR
    produces them (least index first) and ``rdiag`` the magnitudes of the
    R diagonal for degeneracy diagnostics.
    """
    if rows >= cols:
        raise ValueError("nullspace helper expects an underdetermined system")
    At = mp.matrix(cols, rows)
    for i in range(rows):
        for j in range(cols):
            At[j, i] = entry(i, j)
    Q, R = mp.qr(At, mode="full")
    rdiag = [abs(R[k, k]) for k in range(min(rows, cols))]
    top = max(rdiag) if rdiag else mp.mpf(0)
    # generous threshold: genuine degeneracies collapse by hundreds of bits
    tol = top * mp.mpf(2) ** (-(3 * prec_bits) // 4)
    rank = sum(1 for d in rdiag if d > tol)
    basis = []
    for j in range(rank, cols):
        basis.append([Q[i, j] for i in range(cols)])
    return basis, cols - rank, rdiag


def residual_inf(rows, cols, entry, vec):
    """max_i |sum_j A[i,j] vec[j]| for a solution-quality report."""
    worst = mp.mpf(0)
    for i in range(rows):
        acc = mp.fsum(entry(i, j) * vec[j] for j in range(cols))
        worst = max(worst, abs(acc))
    return worst
