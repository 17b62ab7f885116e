"""Truncated Laurent expansions at infinity and germ constructors.

A germ is a finite stretch of an expansion ``sum_k a_k z^(-k)`` starting
at ``k = lead_exponent``; ``valid_order`` is the first power index the
germ knows nothing about (``None`` for exact germs such as polynomials).
All arithmetic tracks validity pessimistically so that no operation ever
claims coefficients beyond what its inputs support.

Bare germ arithmetic (addition, ``germ_product``) rounds at the ambient
mpmath precision like any mpmath expression; run it inside a
``PrecisionContext.workprec`` block.  Constructors taking a context
enforce their precision internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from mpmath import mp

from .errors import BranchChoiceError, DomainError
from .intervals import Interval
from .precision import DEFAULT_CTX, PrecisionContext
from .quadrature import chebyshev_nodes


@dataclass(frozen=True)
class LaurentGerm:
    """Truncated expansion sum_k coeffs[k - lead_exponent] * z^(-k)."""

    lead_exponent: int
    coeffs: Tuple
    valid_order: Optional[int] = None  # first unknown power of 1/z; None = exact

    def __post_init__(self):
        if self.valid_order is not None:
            if self.valid_order - self.lead_exponent != len(self.coeffs):
                raise DomainError("coefficient count must equal valid_order - lead_exponent")

    @property
    def truncation_length(self) -> Optional[int]:
        if self.valid_order is None:
            return None
        return self.valid_order - self.lead_exponent

    def is_exact(self) -> bool:
        return self.valid_order is None

    def coeff(self, k: int):
        """Coefficient of z^(-k); raises beyond the reliable truncation."""
        if self.valid_order is not None and k >= self.valid_order:
            raise DomainError(f"coefficient of z^-{k} lies beyond the truncation")
        if k < self.lead_exponent:
            return mp.mpf(0)
        idx = k - self.lead_exponent
        if idx >= len(self.coeffs):
            return mp.mpf(0)  # exact germ: the tail is identically zero
        return self.coeffs[idx]

    def known_orders(self):
        return range(self.lead_exponent, self.lead_exponent + len(self.coeffs))

    def truncated(self, valid_order: int) -> "LaurentGerm":
        if self.valid_order is not None and valid_order > self.valid_order:
            raise DomainError("cannot extend a germ by truncation")
        n = max(0, valid_order - self.lead_exponent)
        coeffs = tuple(self.coeffs[:n]) + (mp.mpf(0),) * (n - len(self.coeffs))
        return LaurentGerm(self.lead_exponent, coeffs, valid_order)

    def partial_sum(self, z, ctx: PrecisionContext = DEFAULT_CTX):
        """Evaluate the stored stretch at a concrete point (Horner in 1/z)."""
        with ctx.workprec():
            zz = ctx.to_number(z)
            zinv = 1 / zz
            acc = mp.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * zinv + c
            return acc * zinv ** self.lead_exponent

    def polynomial_part(self):
        """Exact germ of the terms with nonpositive power index (z^0, z^1, ...)."""
        if self.lead_exponent > 0:
            return LaurentGerm(0, (mp.mpf(0),), None)
        upto = min(0, (self.valid_order - 1) if self.valid_order is not None else 0)
        coeffs = tuple(self.coeff(k) for k in range(self.lead_exponent, upto + 1))
        return LaurentGerm(self.lead_exponent, coeffs, None)

    def polynomial_coefficients(self):
        """Ascending monomial coefficients [c_0, c_1, ...] of the polynomial part."""
        part = self.polynomial_part()
        deg = -part.lead_exponent
        out = [mp.mpf(0)] * (deg + 1)
        for k in part.known_orders():
            if k <= 0:
                out[-k] = part.coeffs[k - part.lead_exponent]
        return out

    def scaled(self, c) -> "LaurentGerm":
        return LaurentGerm(self.lead_exponent, tuple(c * a for a in self.coeffs), self.valid_order)

    def __add__(self, other: "LaurentGerm") -> "LaurentGerm":
        lead = min(self.lead_exponent, other.lead_exponent)
        valids = [g.valid_order for g in (self, other) if g.valid_order is not None]
        valid = min(valids) if valids else None
        if valid is None:
            top = max(self.lead_exponent + len(self.coeffs),
                      other.lead_exponent + len(other.coeffs))
        else:
            top = valid
        coeffs = []
        for k in range(lead, top):
            a = self.coeff(k) if (self.valid_order is None or k < self.valid_order) else 0
            b = other.coeff(k) if (other.valid_order is None or k < other.valid_order) else 0
            coeffs.append(a + b)
        return LaurentGerm(lead, tuple(coeffs), valid)

    def __neg__(self) -> "LaurentGerm":
        return self.scaled(-1)

    def __sub__(self, other: "LaurentGerm") -> "LaurentGerm":
        return self + (-other)


def germ_from_polynomial(monomial_coeffs: Sequence, ctx: PrecisionContext = DEFAULT_CTX) -> LaurentGerm:
    """Exact germ of a polynomial given ascending monomial coefficients."""
    with ctx.workprec():
        coeffs = [ctx.to_number(c) for c in monomial_coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    return LaurentGerm(-deg, tuple(reversed(coeffs)), None)


def germ_product(g1: LaurentGerm, g2: LaurentGerm) -> LaurentGerm:
    """Cauchy product truncated to the common reliable length.

    The unknown tail of either factor first pollutes the product at
    ``lead(other) + valid(this)``, so the result is valid up to the
    minimum of those two indices (exact if both factors are exact).
    """
    lead = g1.lead_exponent + g2.lead_exponent
    cands = []
    if g1.valid_order is not None:
        cands.append(g2.lead_exponent + g1.valid_order)
    if g2.valid_order is not None:
        cands.append(g1.lead_exponent + g2.valid_order)
    valid = min(cands) if cands else None
    if valid is None:
        length = len(g1.coeffs) + len(g2.coeffs) - 1
    else:
        length = valid - lead
    out = [mp.mpf(0)] * length
    for i, a in enumerate(g1.coeffs):
        if a == 0:
            continue
        jmax = min(len(g2.coeffs), length - i)
        for j in range(jmax):
            out[i + j] += a * g2.coeffs[j]
    return LaurentGerm(lead, tuple(out), valid)


def germ_power(g: LaurentGerm, alpha, ctx: PrecisionContext = DEFAULT_CTX) -> LaurentGerm:
    """Principal-branch power c^alpha * (1 + u)^alpha of a germ c(1 + u).

    Requires a nonzero constant term (lead exponent 0).  Uses the power
    recurrence k h_k = sum_j ((alpha+1) j - k) u_j h_(k-j), which handles
    arbitrary real or complex exponents in O(K^2) operations.
    """
    with ctx.workprec():
        if g.lead_exponent != 0 or len(g.coeffs) == 0 or g.coeffs[0] == 0:
            raise DomainError("germ_power requires a nonzero constant term")
        c = g.coeffs[0]
        aa = ctx.to_number(alpha)
        if aa == 1:
            return g
        is_int = mp.im(aa) == 0 and aa == mp.floor(aa)
        if (not is_int) and mp.im(c) == 0 and mp.re(c) < 0:
            raise BranchChoiceError(
                "fractional power of a germ whose constant term lies on the "
                "negative real axis; rotate the configuration or pair factors"
            )
        scale = mp.power(c, aa)
        length = len(g.coeffs)
        u = [g.coeffs[k] / c for k in range(1, length)]
        h = [mp.mpf(1)] + [mp.mpf(0)] * (length - 1)
        for k in range(1, length):
            acc = mp.mpf(0)
            for j in range(1, k + 1):
                uj = u[j - 1] if j - 1 < len(u) else 0
                if uj != 0:
                    acc += ((aa + 1) * j - k) * uj * h[k - j]
            h[k] = acc / k
        coeffs = tuple(scale * hk for hk in h)
        # pessimistic bookkeeping: powers are only as long as the recurrence ran,
        # even for exact inputs (an integer power of a polynomial grows in degree)
        valid = g.valid_order if g.valid_order is not None else length
        return LaurentGerm(0, coeffs, valid)


def germ_reciprocal(g: LaurentGerm, ctx: PrecisionContext = DEFAULT_CTX) -> LaurentGerm:
    """1/g for a germ with nonzero constant term."""
    rec = germ_power(g, -1, ctx)
    if g.valid_order is None:
        # reciprocals of exact polynomials are genuinely truncated series
        rec = LaurentGerm(rec.lead_exponent, rec.coeffs,
                          rec.lead_exponent + len(rec.coeffs))
    return rec


def compose_series(outer_coeffs: Sequence, inner: LaurentGerm,
                   ctx: PrecisionContext = DEFAULT_CTX) -> LaurentGerm:
    """sum_m outer[m] * inner^m for an inner germ vanishing at infinity."""
    if inner.lead_exponent < 1:
        raise DomainError("composition requires an inner germ that is O(1/z)")
    with ctx.workprec():
        acc = LaurentGerm(0, (ctx.to_number(outer_coeffs[-1]),), None)
        for c in reversed(list(outer_coeffs[:-1])):
            acc = germ_product(acc, inner)
            acc = acc + LaurentGerm(0, (ctx.to_number(c),), None)
        return acc


def _catalan_fractions(count: int):
    """Catalan numbers as exact fractions C_k / 2^(2k+1)."""
    cats = [1]
    for k in range(1, count):
        cats.append(cats[-1] * 2 * (2 * k - 1) // (k + 1))
    return [Fraction(c, 2 ** (2 * k + 1)) for k, c in enumerate(cats)]


def inverse_phi_germ(J: Interval, K: int, ctx: PrecisionContext = DEFAULT_CTX) -> LaurentGerm:
    """Germ of 1/phi_J(z) at infinity to K reliable terms.

    For J = [-1, 1] the coefficients are Catalan numbers over powers of
    two (1/(2z) + 1/(8 z^3) + 1/(16 z^5) + ...), computed exactly and
    rounded once; a general J composes that series with the affine map.
    """
    if K < 1:
        raise DomainError("need at least one term")
    with ctx.workprec():
        n_odd = (K + 1) // 2
        fracs = _catalan_fractions(n_odd + 1)
        unit = [mp.mpf(0)] * (K + 1)  # coefficient of v^m, v = 1/w
        for k, fr in enumerate(fracs):
            m = 2 * k + 1
            if m <= K:
                unit[m] = mp.mpf(fr.numerator) / fr.denominator
        if J.a == -1.0 and J.b == 1.0:
            return LaurentGerm(1, tuple(unit[1:K + 1]), K + 1)
        alpha = 2 / (mp.mpf(J.b) - mp.mpf(J.a))
        beta = -(mp.mpf(J.a) + mp.mpf(J.b)) / (mp.mpf(J.b) - mp.mpf(J.a))
        # geometric series for 1/w = 1/(alpha z + beta)
        inv = []
        cur = 1 / alpha
        for _ in range(K):
            inv.append(cur)
            cur = cur * (-beta / alpha)
        inner = LaurentGerm(1, tuple(inv), K + 1)
        out = compose_series(unit, inner, ctx)
        return LaurentGerm(out.lead_exponent, out.coeffs, out.valid_order)


@dataclass(frozen=True)
class AlgebraicFunctionSpec:
    """Products of Joukowsky-type factors over one or two base intervals.

    ``factor_groups[i]`` is a tuple of (base, exponent) pairs attached to
    ``intervals[i]``; each factor reads ``(base - 1/phi_interval(z))^exponent``.
    """

    intervals: Tuple[Interval, ...]
    factor_groups: Tuple[Tuple[Tuple[complex, complex], ...], ...]

    def __post_init__(self):
        if len(self.intervals) not in (1, 2) or len(self.intervals) != len(self.factor_groups):
            raise DomainError("spec needs one or two intervals, each with its factor group")
        bases = [b for grp in self.factor_groups for b, _ in grp]
        for b in bases:
            if abs(complex(b)) <= 1:
                raise DomainError(f"factor base {b} must have modulus > 1")
        if len(set(complex(b) for b in bases)) != len(bases):
            raise DomainError("factor bases must be pairwise distinct")
        if len(self.intervals) == 1:
            total = sum(complex(e) for _, e in self.factor_groups[0])
            if abs(total) > 1e-12:
                raise DomainError("exponents over a single base interval must sum to zero")
        for a in self.branch_points():
            for iv in self.intervals:
                if a.imag == 0 and iv.contains(a.real):
                    raise DomainError(f"derived branch point {a} lies on a base interval")

    def branch_points(self):
        """Finite branch points (A + 1/A)/2 pulled back through each affine map."""
        pts = []
        for iv, grp in zip(self.intervals, self.factor_groups):
            for b, _ in grp:
                bb = complex(b)
                u = (bb + 1 / bb) / 2
                pts.append(complex(iv.midpoint) + complex(iv.halfwidth) * u)
        return pts

    def is_conjugation_symmetric(self) -> bool:
        def key(b, e):
            return (round(b.real, 14), round(b.imag, 14),
                    round(e.real, 14), round(e.imag, 14))

        for grp in self.factor_groups:
            have = sorted(key(complex(b), complex(e)) for b, e in grp)
            want = sorted(key(complex(b).conjugate(), complex(e).conjugate())
                          for b, e in grp)
            if have != want:
                return False
        return True

    def value_at_infinity(self, ctx: PrecisionContext = DEFAULT_CTX):
        with ctx.workprec():
            val = mp.mpc(1)
            for grp in self.factor_groups:
                for b, e in grp:
                    val *= mp.power(ctx.to_number(complex(b)), ctx.to_number(complex(e)))
            return val


def algebraic_germ(spec: AlgebraicFunctionSpec, K: int,
                   ctx: PrecisionContext = DEFAULT_CTX) -> LaurentGerm:
    """Germ at infinity of the algebraic product the spec describes.

    Each factor group is expanded first in the variable u = 1/phi of its
    interval (where each factor is an affine polynomial raised to its
    exponent), then composed with the germ of 1/phi; groups over distinct
    intervals are multiplied as z-germs.  The branch is the principal one
    per factor, so the value at infinity is the product of base^exponent.
    """
    if K < 1:
        raise DomainError("need at least one term")
    with ctx.workprec():
        total = None
        for iv, grp in zip(spec.intervals, spec.factor_groups):
            group_series = LaurentGerm(0, (mp.mpf(1),) + (mp.mpf(0),) * K, K + 1)
            for b, e in grp:
                base = ctx.to_number(complex(b))
                expo = ctx.to_number(complex(e))
                lin = LaurentGerm(0, (base, mp.mpf(-1)) + (mp.mpf(0),) * (K - 1), K + 1)
                group_series = germ_product(group_series, germ_power(lin, expo, ctx))
            inner = inverse_phi_germ(iv, K, ctx)
            composed = compose_series(group_series.coeffs, inner, ctx)
            total = composed if total is None else germ_product(total, composed)
        coeffs = list(total.coeffs)
        if spec.is_conjugation_symmetric():
            # symmetry forces real coefficients; check then drop the imaginary dust
            tol = mp.mpf(2) ** (-(ctx.mantissa_bits - 10))
            scale = max((abs(c) for c in coeffs), default=mp.mpf(1))
            for c in coeffs:
                if abs(mp.im(c)) > tol * max(scale, mp.mpf(1)):
                    raise DomainError("symmetric spec produced non-real coefficients")
            coeffs = [mp.re(c) for c in coeffs]
        return LaurentGerm(total.lead_exponent, tuple(coeffs), total.valid_order)


def markov_f1_germ(K: int, ctx: PrecisionContext = DEFAULT_CTX) -> LaurentGerm:
    """Germ of 1/(z^2 - 1)^(1/2): z^-1 + z^-3/2 + 3 z^-5/8 + ...

    Coefficients are central binomials binom(2k, k)/4^k at z^-(2k+1).
    """
    if K < 1:
        raise DomainError("need at least one term")
    with ctx.workprec():
        coeffs = [mp.mpf(0)] * K  # index i -> power z^-(1+i)
        num = 1
        den = 1
        k = 0
        while 2 * k < K:
            coeffs[2 * k] = mp.mpf(num) / den
            k += 1
            num *= (2 * k - 1) * (2 * k)
            den *= k * k * 4
        return LaurentGerm(1, tuple(coeffs), K + 1)


def markov_f2_germ(F, density, K: int, ctx: PrecisionContext = DEFAULT_CTX,
                   nodes_E: Optional[int] = None, nodes_F: Optional[int] = None) -> LaurentGerm:
    """Germ of the second Markov-pair function from quadrature moments.

    The coefficients are m_k = (1/pi) int x^k sigma_hat(x) dx/sqrt(1-x^2),
    with sigma_hat the Cauchy transform of the density on F, evaluated by
    Gauss-Legendre per component; the x-integral uses Gauss-Chebyshev.
    """
    from .hermite_pade import _sigma_hat_factory  # local import, no cycle at runtime
    from .intervals import as_interval_union

    F = as_interval_union(F)
    F.validate_right_of_cut()
    if K < 1:
        raise DomainError("need at least one term")
    M = nodes_E if nodes_E is not None else 2 * K + 32
    sigma_hat = _sigma_hat_factory(F, density, ctx, nodes_F or (K + 32))
    with ctx.workprec():
        xs = chebyshev_nodes(M, ctx)
        sh = [sigma_hat(x) for x in xs]
        coeffs = []
        powers = [mp.mpf(1)] * M
        for k in range(K):
            coeffs.append(mp.fsum(p * s for p, s in zip(powers, sh)) / M)
            powers = [p * x for p, x in zip(powers, xs)]
        return LaurentGerm(1, tuple(coeffs), K + 1)
