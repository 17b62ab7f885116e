"""Exact-branch special functions: the inverse Joukowsky map on both sheets,
Chebyshev polynomials in the doubled normalization, second-kind functions,
and Green functions of single-interval complements.

Branch convention used everywhere: ``(z^2 - 1)^(1/2)`` is the branch with
``(z^2 - 1)^(1/2) / z -> 1`` as ``z -> oo``, realized as
``sqrt(z - 1) * sqrt(z + 1)`` with principal square roots.  This leaves a
single cut on [-1, 1]; boundary values on the open cut default to limits
from the upper half-plane.
"""

from __future__ import annotations

import math

import mpmath
from mpmath import mp

from .errors import BranchPointError, DomainError
from .intervals import Interval
from .precision import DEFAULT_CTX, PrecisionContext


def _on_cut(z) -> bool:
    """True for real z with -1 < z < 1 (open cut)."""
    return mp.im(z) == 0 and -1 < mp.re(z) < 1


def _is_branch_point(z) -> bool:
    return mp.im(z) == 0 and abs(mp.re(z)) == 1


def sqrt_z2m1(z):
    """(z^2 - 1)^(1/2) on the branch asymptotic to z at infinity.

    ``sqrt(z - 1) * sqrt(z + 1)`` with principal roots is continuous across
    (-oo, -1) and cut only on [-1, 1].  Subtractions from exact inputs incur
    no cancellation beyond one rounding each.
    """
    return mp.sqrt(z - 1) * mp.sqrt(z + 1)


def phi(z, sheet: int = 0, ctx: PrecisionContext = DEFAULT_CTX, side: str = "upper"):
    """Inverse Joukowsky map ``z + (z^2 - 1)^(1/2)`` on either sheet.

    Parameters
    ----------
    z : complex
        Evaluation point.  For z on the open cut (-1, 1) the one-sided
        boundary value is returned according to ``side``.
    sheet : {0, 1}
        Sheet 0 returns the branch of modulus > 1, sheet 1 its reciprocal.
    side : {"upper", "lower"}
        Which half-plane limit to take for z on the open cut.

    Raises
    ------
    BranchPointError
        If z = +-1, where the two sheets coalesce.
    """
    if sheet not in (0, 1):
        raise DomainError(f"sheet must be 0 or 1, got {sheet}")
    if side not in ("upper", "lower"):
        raise DomainError(f"side must be 'upper' or 'lower', got {side}")
    with ctx.workprec():
        zz = ctx.to_number(z)
        if _is_branch_point(zz):
            raise BranchPointError("phi is not sheet-separable at z = +-1")
        if _on_cut(zz):
            x = mp.re(zz)
            w = mp.sqrt((1 - x) * (1 + x))
            p0 = mp.mpc(x, w) if side == "upper" else mp.mpc(x, -w)
        else:
            p0 = zz + sqrt_z2m1(zz)
        return p0 if sheet == 0 else 1 / p0


def chebyshev_T(n: int, z, ctx: PrecisionContext = DEFAULT_CTX):
    """Chebyshev polynomial ``T_n = phi^n + phi^(-n)`` (so T_0 = 2, T_1 = 2z).

    Evaluated by the three-term recursion ``y_n = 2 z y_(n-1) - y_(n-2)``;
    leading monomial coefficient is 2^n.
    """
    if n < 0:
        raise DomainError("chebyshev_T requires n >= 0")
    with ctx.workprec():
        zz = ctx.to_number(z)
        if n == 0:
            return mp.mpf(2)
        prev = mp.mpf(2)
        cur = 2 * zz
        for _ in range(n - 1):
            prev, cur = cur, 2 * zz * cur - prev
        return cur


def second_kind_H(n: int, z, ctx: PrecisionContext = DEFAULT_CTX):
    """Second-kind function ``H_n = 1 / (phi^n (z^2-1)^(1/2))`` for n >= 0.

    ``H_(-1)`` is the constant 1.  The closed form is the minimal solution
    of the Chebyshev recursion, so downstream consistency checks against
    the recursion must run it from the (H_0, H_1) seeds.
    """
    if n < -1:
        raise DomainError("second_kind_H requires n >= -1")
    with ctx.workprec():
        if n == -1:
            return mp.mpf(1)
        zz = ctx.to_number(z)
        if _is_branch_point(zz) or _on_cut(zz):
            raise DomainError("second-kind functions jump across [-1, 1]")
        s = sqrt_z2m1(zz)
        pinv = 1 / (zz + s)
        return (pinv ** n) / s


def second_kind_H_recursion(n: int, z, ctx: PrecisionContext = DEFAULT_CTX):
    """H_n via the forward recursion ``y_n = 2 z y_(n-1) - y_(n-2)``.

    Seeded with the closed-form H_0, H_1.  The recursion tracks the minimal
    solution, so forward error grows like |phi|^(2n); enough guard bits are
    added to keep the result accurate at the context precision.
    """
    if n < 0:
        raise DomainError("recursion route requires n >= 0")
    zf = complex(mpmath.mpmathify(z))
    mod = abs(zf + (zf * zf - 1) ** 0.5)
    mod = max(mod, 1.0 / mod, 1.0 + 1e-12)
    guard = int(2 * n * math.log2(mod)) + 64
    with ctx.workprec(extra=guard):
        zz = ctx.to_number(z)
        if _is_branch_point(zz) or _on_cut(zz):
            raise DomainError("second-kind functions jump across [-1, 1]")
        s = sqrt_z2m1(zz)
        h_prev = 1 / s
        if n == 0:
            return h_prev
        h_cur = 1 / ((zz + s) * s)
        for _ in range(n - 1):
            h_prev, h_cur = h_cur, 2 * zz * h_cur - h_prev
        return h_cur


def _affine_to_unit(J: Interval, z, ctx: PrecisionContext):
    """Map J = [a, b] onto [-1, 1] affinely."""
    mid = ctx.mpf(J.a) + (ctx.mpf(J.b) - ctx.mpf(J.a)) / 2
    half = (ctx.mpf(J.b) - ctx.mpf(J.a)) / 2
    return (ctx.to_number(z) - mid) / half


def _check_off_interval(J: Interval, u, what: str):
    if mp.im(u) == 0 and -1 <= mp.re(u) <= 1:
        raise DomainError(f"{what} must lie outside the interval")


def green_function_interval(J: Interval, z, t, ctx: PrecisionContext = DEFAULT_CTX):
    """Green function of the complement of the interval J with pole at t.

    ``t`` may be finite or infinite (pass ``None`` or an infinite value).
    The value is nonnegative, symmetric in (z, t), and vanishes as z
    approaches J.  J is mapped affinely to [-1, 1] before applying phi.
    """
    with ctx.workprec():
        u = _affine_to_unit(J, z, ctx)
        _check_off_interval(J, u, "z")
        pu = u + sqrt_z2m1(u)
        at_infinity = t is None or (not isinstance(t, str) and mp.isinf(ctx.to_number(t)))
        if at_infinity:
            return mp.log(abs(pu))
        v = _affine_to_unit(J, t, ctx)
        _check_off_interval(J, v, "t")
        pv = v + sqrt_z2m1(v)
        if pu == pv:
            return mp.inf
        return mp.log(abs(1 - pu * mp.conj(pv))) - mp.log(abs(pu - pv))
