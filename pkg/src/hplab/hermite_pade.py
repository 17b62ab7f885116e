"""Hermite-Pade polynomials of types I and II, the Chebyshev splitting,
auxiliary zeros on the second sheet, high-precision polynomial roots, and
the unit-circle zero equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from mpmath import mp

from .errors import (CountError, DegeneracyError, DomainError, PrecisionError,
                     ResolutionError)
from .intervals import Interval, IntervalUnion, as_interval_union
from .linalg import nullspace
from .maps import phi
from .measures import DiscreteMeasure
from .precision import DEFAULT_CTX, PrecisionContext
from .quadrature import chebyshev_nodes, gauss_legendre_interval
from .series import (LaurentGerm, germ_from_polynomial, germ_product,
                     markov_f1_germ, markov_f2_germ)

GUARD_BITS = 64  # linear solves and germ assembly run with this many extra bits


# ---------------------------------------------------------------------------
# Chebyshev-basis polynomials (doubled normalization T_0 = 2, T_k = phi^k + phi^-k)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChebPolynomial:
    """Real polynomial in the doubled Chebyshev basis.

    ``cheb_coeffs[k]`` multiplies T_k = phi^k + phi^(-k); the monomial
    leading coefficient of T_k is 2^k.
    """

    cheb_coeffs: Tuple

    @property
    def degree(self) -> int:
        return len(self.cheb_coeffs) - 1

    def __call__(self, z, ctx: PrecisionContext = DEFAULT_CTX):
        """Clenshaw evaluation (the doubled basis is twice the classical one)."""
        with ctx.workprec():
            zz = ctx.to_number(z)
            b1 = mp.mpf(0)
            b2 = mp.mpf(0)
            for c in reversed(self.cheb_coeffs[1:]):
                b1, b2 = 2 * zz * b1 - b2 + c, b1
            return 2 * (self.cheb_coeffs[0] + zz * b1 - b2)

    def to_monomial(self, ctx: PrecisionContext = DEFAULT_CTX):
        """Ascending monomial coefficients."""
        with ctx.workprec():
            d = self.degree
            rows = _chebyshev_monomial_rows(d)
            out = [mp.mpf(0)] * (d + 1)
            for k, c in enumerate(self.cheb_coeffs):
                if c == 0:
                    continue
                for j, t in enumerate(rows[k]):
                    if t:
                        out[j] += c * t
            return out

    @classmethod
    def from_monomial(cls, monomial, ctx: PrecisionContext = DEFAULT_CTX):
        """Invert the triangular basis change (leading coefficient 2^k)."""
        with ctx.workprec():
            work = [ctx.to_number(c) for c in monomial]
            while len(work) > 1 and work[-1] == 0:
                work.pop()
            d = len(work) - 1
            rows = _chebyshev_monomial_rows(d)
            coeffs = [mp.mpf(0)] * (d + 1)
            for k in range(d, -1, -1):
                c = work[k] / rows[k][k]
                coeffs[k] = c
                if c != 0:
                    for j, t in enumerate(rows[k]):
                        if t:
                            work[j] -= c * t
            return cls(tuple(coeffs))

    def band_profile(self):
        """(max |c_j|, per-coefficient magnitudes) for band-structure checks."""
        mags = [abs(c) for c in self.cheb_coeffs]
        return max(mags), mags


def _chebyshev_monomial_rows(max_degree: int):
    """Monomial coefficient rows of T_0 .. T_max_degree (T_0 = 2, T_1 = 2z)."""
    rows = [[mp.mpf(2)]]
    if max_degree >= 1:
        rows.append([mp.mpf(0), mp.mpf(2)])
    for k in range(2, max_degree + 1):
        prev, prev2 = rows[k - 1], rows[k - 2]
        row = [mp.mpf(0)] * (k + 1)
        for j, c in enumerate(prev):
            row[j + 1] += 2 * c
        for j, c in enumerate(prev2):
            row[j] -= c
        rows.append(row)
    return rows


def _second_kind_U(max_degree: int):
    """Monomial rows of the classical second-kind polynomials U_0 .. U_max."""
    rows = [[mp.mpf(1)]]
    if max_degree >= 1:
        rows.append([mp.mpf(0), mp.mpf(2)])
    for k in range(2, max_degree + 1):
        prev, prev2 = rows[k - 1], rows[k - 2]
        row = [mp.mpf(0)] * (k + 1)
        for j, c in enumerate(prev):
            row[j + 1] += 2 * c
        for j, c in enumerate(prev2):
            row[j] -= c
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Result containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HPTypeII:
    """Type II data: common denominator q (monic, degree 2n) and numerators."""

    n: int
    q: ChebPolynomial
    p1: Tuple
    p2: Tuple
    residual: float = 0.0
    degenerate: bool = False

    @property
    def q_monomial(self):
        return self.q.to_monomial()


@dataclass(frozen=True)
class HPTypeI:
    """Type I data: the linear-form coefficients and the verified decay depth."""

    n: int
    Q0: Tuple
    Q1: Tuple
    Q2: Tuple
    remainder_order: int
    degenerate: bool = False


_FAMILIES = ("type1_Q0", "type1_Q1", "type1_Q2", "type2", "auxiliary_P_n")


@dataclass(frozen=True)
class ZeroCloud:
    """Zeros of one polynomial family, sorted by (re, im)."""

    points: Tuple
    family: str
    n: int
    residual: float = 0.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown zero family {self.family!r}")

    @classmethod
    def from_roots(cls, roots, family: str, n: int, residual: float = 0.0):
        pts = tuple(sorted(roots, key=lambda z: (mp.re(z), mp.im(z))))
        return cls(pts, family, n, residual)

    def __len__(self):
        return len(self.points)

    def csv_rows(self):
        for z in self.points:
            yield f"{float(mp.re(z))!r},{float(mp.im(z))!r},{self.family},{self.n}"


# ---------------------------------------------------------------------------
# sigma_hat and the Markov-route construction
# ---------------------------------------------------------------------------

def _sigma_hat_factory(F: IntervalUnion, density, ctx: PrecisionContext, nodes_per_component: int):
    """Cauchy transform x -> int dsigma(t)/(x - t) of the density on F.

    ``density`` may be None (uniform weight on each component), a callable
    t -> value, or a DiscreteMeasure of point masses (used exactly).
    """
    if isinstance(density, DiscreteMeasure):
        atoms = [(mp.re(n), w) for n, w in zip(density.nodes, density.weights)]

        def sigma_hat_atoms(x):
            with ctx.workprec(extra=GUARD_BITS):
                return mp.fsum(w / (x - t) for t, w in atoms)

        return sigma_hat_atoms

    rho = (lambda t: mp.mpf(1)) if density is None else density
    ts, ws = [], []
    with ctx.workprec(extra=GUARD_BITS):
        for comp in F.components:
            tn, tw = gauss_legendre_interval(nodes_per_component, comp, ctx)
            ts.extend(tn)
            ws.extend(w * rho(t) for t, w in zip(tn, tw))
        for w in ws:
            if w < 0:
                raise DomainError("density must be positive on F")

    def sigma_hat(x):
        with ctx.workprec(extra=GUARD_BITS):
            return mp.fsum(w / (x - t) for t, w in zip(ts, ws))

    return sigma_hat


def _assemble_p_numerators(q_monomial, n: int, g1: LaurentGerm, g2: LaurentGerm,
                           ctx: PrecisionContext):
    """Polynomial parts of q*f_i and the germ residual of the defining relations."""
    qgerm = germ_from_polynomial(q_monomial, ctx)
    ps = []
    residual = mp.mpf(0)
    for g in (g1, g2):
        prod = germ_product(qgerm, g)
        ps.append(tuple(prod.polynomial_coefficients()))
        scale = max((abs(prod.coeff(k)) for k in prod.known_orders() if k <= n),
                    default=mp.mpf(1))
        scale = max(scale, mp.mpf(1))
        worst = max((abs(prod.coeff(k)) for k in range(1, n + 1)), default=mp.mpf(0))
        residual = max(residual, worst / scale)
    return ps[0], ps[1], float(residual)


def hp_type2_markov(F, density, n: int, ctx: PrecisionContext = DEFAULT_CTX,
                    quadrature_nodes: Optional[int] = None,
                    density_nodes: Optional[int] = None) -> HPTypeII:
    """Type II construction through the banded Chebyshev orthogonality.

    Solves the n x (n+1) homogeneous system
    ``sum_j c_(n+j) int T_i T_(n+j) sigma_hat dx/(pi sqrt(1-x^2)) = 0``
    for i < n, normalizes the band so q is monic of degree 2n, and
    assembles the numerators from the germ products.

    ``quadrature_nodes`` (Gauss-Chebyshev on E, default 4n + 32) and
    ``density_nodes`` (Gauss-Legendre per component of F, default 2n + 32)
    can be raised when the construction is cross-validated against an
    independent route; the defaults resolve the measure to about the
    square of the nullspace conditioning at desk-scale n.
    """
    F = as_interval_union(F)
    F.validate_right_of_cut()
    if n < 1:
        raise DomainError("index n must be >= 1")
    M = quadrature_nodes if quadrature_nodes is not None else 4 * n + 32
    M = max(M, 4 * n + 32)
    DN = density_nodes if density_nodes is not None else 2 * n + 32
    with ctx.workprec(extra=GUARD_BITS):
        sigma_hat = _sigma_hat_factory(F, density, ctx, DN)
        xs = chebyshev_nodes(M, ctx)
        sh = [sigma_hat(x) for x in xs]
        # T_0 .. T_2n at the quadrature nodes by the three-term recursion
        tvals = [[mp.mpf(2)] * M, [2 * x for x in xs]]
        for k in range(2, 2 * n + 1):
            tvals.append([2 * x * a - b for x, a, b in zip(xs, tvals[k - 1], tvals[k - 2])])

        def entry(i, j):
            return mp.fsum(ti * tj * s for ti, tj, s in zip(tvals[i], tvals[n + j], sh)) / M

        A = [[entry(i, j) for j in range(n + 1)] for i in range(n)]
        basis, corank, rdiag = nullspace(n, n + 1, lambda i, j: A[i][j], ctx.mantissa_bits)
        if corank != 1:
            raise DegeneracyError(
                f"orthogonality system has numerical corank {corank} (expected 1); "
                f"R diagonal tail {[float(d) for d in rdiag[-3:]]}"
            )
        vec = basis[0]
        top = max(abs(v) for v in vec)
        lead = vec[n]
        if abs(lead) < top * mp.mpf(2) ** (-(ctx.mantissa_bits // 4)):
            raise DegeneracyError("leading band coefficient vanishes; deg q < 2n")
        scale = mp.mpf(2) ** (-2 * n) / lead
        band = [mp.re(v * scale) for v in vec]
        cheb = [mp.mpf(0)] * n + band
        q = ChebPolynomial(tuple(cheb))
        K = 3 * n + 2
        g1 = markov_f1_germ(K, ctx)
        g2 = markov_f2_germ(F, density, K, ctx, nodes_E=max(M, 2 * K + 32), nodes_F=DN)
        p1, p2, res = _assemble_p_numerators(q.to_monomial(ctx), n, g1, g2, ctx)
    return HPTypeII(n=n, q=q, p1=p1, p2=p2, residual=res)


def hp_type2_germ(g1: LaurentGerm, g2: LaurentGerm, n: int,
                  ctx: PrecisionContext = DEFAULT_CTX) -> HPTypeII:
    """Type II construction directly from the two germs.

    Forces the coefficients of z^-1 .. z^-n in q g_i to vanish (2n
    homogeneous conditions on the 2n+1 monomial coefficients of q).
    A nullspace of dimension > 1 is reported through the ``degenerate``
    flag and the least-index QR basis vector is returned.
    """
    if n < 1:
        raise DomainError("index n must be >= 1")
    for g in (g1, g2):
        if g.valid_order is not None and g.valid_order <= 3 * n:
            raise DomainError("germs must be valid to at least 3n + 2 terms")
    with ctx.workprec(extra=GUARD_BITS):
        def entry(i, j):
            # condition i: coefficient of z^-(i+1); unknown j: monomial z^j
            g = g1 if i < n else g2
            r = (i % n) + 1
            return g.coeff(r + j)

        basis, corank, rdiag = nullspace(2 * n, 2 * n + 1, entry, ctx.mantissa_bits)
        degenerate = corank != 1
        vec = basis[0]
        top = max(abs(v) for v in vec)
        lead = vec[2 * n]
        if abs(lead) < top * mp.mpf(2) ** (-(ctx.mantissa_bits // 4)):
            degenerate = True
            pivot = max(range(2 * n + 1), key=lambda j: abs(vec[j]))
            vec = [v / vec[pivot] for v in vec]
        else:
            vec = [v / lead for v in vec]
        real_dust = max(abs(mp.im(v)) for v in vec)
        if real_dust <= top * mp.mpf(2) ** (-(ctx.mantissa_bits // 4)):
            vec = [mp.re(v) for v in vec]
        q = ChebPolynomial.from_monomial(vec, ctx)
        p1, p2, res = _assemble_p_numerators(vec, n, g1, g2, ctx)
    return HPTypeII(n=n, q=q, p1=p1, p2=p2, residual=res, degenerate=degenerate)


def hp_type1_germ(g: LaurentGerm, n: int, ctx: PrecisionContext = DEFAULT_CTX) -> HPTypeI:
    """Type I construction for the collection [1, f, f^2] from the germ of f.

    Solves the 2n+1 vanishing conditions on z^-1 .. z^-(2n+1) for the
    2n+2 coefficients of (Q1, Q2), then peels Q0 off as the negated
    polynomial part; the remainder depth is re-verified from the germ of
    the full linear form.
    """
    if n < 0:
        raise DomainError("index n must be >= 0")
    if g.lead_exponent != 0:
        raise DomainError("type I expects a germ with nonzero value at infinity")
    if g.valid_order is not None and g.valid_order < 3 * n + 4:
        raise DomainError("germ must be valid to at least 3n + 4 terms")
    with ctx.workprec(extra=GUARD_BITS):
        g2 = germ_product(g, g)

        def entry(i, j):
            r = i + 1
            if j <= n:
                return g.coeff(r + j)
            return g2.coeff(r + (j - n - 1))

        basis, corank, rdiag = nullspace(2 * n + 1, 2 * n + 2, entry, ctx.mantissa_bits)
        degenerate = corank != 1
        vec = basis[0]
        pivot = max(range(len(vec)), key=lambda j: abs(vec[j]))
        vec = [v / vec[pivot] for v in vec]
        top = max(abs(v) for v in vec)
        if max(abs(mp.im(v)) for v in vec) <= top * mp.mpf(2) ** (-(ctx.mantissa_bits // 4)):
            vec = [mp.re(v) for v in vec]
        Q1 = tuple(vec[: n + 1])
        Q2 = tuple(vec[n + 1:])
        lin = germ_product(germ_from_polynomial(Q1, ctx), g) + \
            germ_product(germ_from_polynomial(Q2, ctx), g2)
        Q0 = tuple(-c for c in lin.polynomial_coefficients())
        remainder = lin + germ_from_polynomial(Q0, ctx)
        scale = max(max(abs(c) for c in lin.coeffs), mp.mpf(1))
        thresh = scale * mp.mpf(10) ** (-(0.3 * ctx.mantissa_bits))
        order = remainder.valid_order
        for k in sorted(remainder.known_orders()):
            if k >= 1 and abs(remainder.coeff(k)) > thresh:
                order = k
                break
    return HPTypeI(n=n, Q0=Q0, Q1=Q1, Q2=Q2, remainder_order=int(order),
                   degenerate=degenerate)


# ---------------------------------------------------------------------------
# Splitting q_2n = q1 T_(n+m-1) + q2 T_(n+m)
# ---------------------------------------------------------------------------

def split_type2(hp: HPTypeII, ctx: PrecisionContext = DEFAULT_CTX):
    """Split the band of q into the middle-pair combination.

    For odd n = 2m-1 both parts have degree <= m-1; for even n = 2m the
    second part may reach degree m (coefficient counting forces this
    shape).  The decomposition is built by running the Chebyshev
    recursion up and down from the middle indices, which expresses every
    T_j of the band through (T_(n+m-1), T_(n+m)) with the classical
    second-kind polynomials as coefficients; reconstruction is exact up
    to roundoff by construction.
    """
    n = hp.n
    m = (n + 1) // 2 if n % 2 == 1 else n // 2
    lo = n + m - 1
    with ctx.workprec(extra=GUARD_BITS):
        band = {j: hp.q.cheb_coeffs[j] if j < len(hp.q.cheb_coeffs) else mp.mpf(0)
                for j in range(n, 2 * n + 1)}
        max_band, mags = hp.q.band_profile()
        below = max(mags[:n], default=mp.mpf(0))
        if below > max_band * mp.mpf(10) ** (-10):
            raise DomainError("polynomial does not have the required band structure")
        U = _second_kind_U(n + 2)

        def u_row(idx):
            # U_(-1) = 0, U_(-2) = -1
            if idx == -1:
                return []
            if idx == -2:
                return [mp.mpf(-1)]
            return U[idx]

        deg1 = m - 1
        deg2 = m - 1 if n % 2 == 1 else m
        q1 = [mp.mpf(0)] * (deg1 + 1)
        q2 = [mp.mpf(0)] * (deg2 + 1)

        def add_into(target, row, c):
            for j, t in enumerate(row):
                if t:
                    target[j] += c * t

        for j in range(lo, 2 * n + 1):
            r = j - lo  # T_(lo + r) = U_(r-1) T_(lo+1) - U_(r-2) T_lo
            c = band[j]
            if c == 0:
                continue
            add_into(q2, u_row(r - 1), c)
            add_into(q1, u_row(r - 2), -c)
        for j in range(n, lo):
            k = lo + 1 - j  # T_(lo+1-k) = U_(k-1) T_lo - U_(k-2) T_(lo+1)
            c = band[j]
            if c == 0:
                continue
            add_into(q1, u_row(k - 1), c)
            add_into(q2, u_row(k - 2), -c)
        cheb1 = ChebPolynomial.from_monomial(q1, ctx)
        cheb2 = ChebPolynomial.from_monomial(q2, ctx)
    return cheb1, cheb2


def split_reconstruction_residual(hp: HPTypeII, q1: ChebPolynomial, q2: ChebPolynomial,
                                  ctx: PrecisionContext = DEFAULT_CTX):
    """Max Chebyshev-coefficient error of q1 T_(n+m-1) + q2 T_(n+m) vs q."""
    n = hp.n
    m = (n + 1) // 2 if n % 2 == 1 else n // 2
    with ctx.workprec(extra=GUARD_BITS):
        total = {}

        def accumulate(part: ChebPolynomial, big: int):
            # T_a T_big = T_(big+a) + T_(big-a); at a = 0 both terms hit T_big
            for a, c in enumerate(part.cheb_coeffs):
                if c == 0:
                    continue
                total[big + a] = total.get(big + a, mp.mpf(0)) + c
                total[big - a] = total.get(big - a, mp.mpf(0)) + c

        accumulate(q1, n + m - 1)
        accumulate(q2, n + m)
        worst = mp.mpf(0)
        scale = max(abs(c) for c in hp.q.cheb_coeffs)
        for j in range(0, 2 * n + 1):
            want = hp.q.cheb_coeffs[j] if j < len(hp.q.cheb_coeffs) else mp.mpf(0)
            got = total.get(j, mp.mpf(0))
            worst = max(worst, abs(want - got))
        return worst / scale


# ---------------------------------------------------------------------------
# Auxiliary zeros of q1 + q2 / phi on the hull of F
# ---------------------------------------------------------------------------

def auxiliary_zeros(q1: ChebPolynomial, q2: ChebPolynomial, Fhull: Interval,
                    n: int, ctx: PrecisionContext = DEFAULT_CTX) -> ZeroCloud:
    """All n real zeros of q1(t) + q2(t)/phi(t) in the hull of F.

    Sign-scans a 64 n point grid over [c, d] and bisects each bracket to
    2^-(mantissa_bits/2); rescans 8x denser if the count disagrees.
    """
    if n < 1:
        raise DomainError("expected zero count must be >= 1")

    with ctx.workprec():
        a, b = ctx.mpf(Fhull.a), ctx.mpf(Fhull.b)

        def G(t):
            return q1(t, ctx) + q2(t, ctx) * phi(t, 1, ctx)

        def collect(grid_count):
            ts = [a + (b - a) * k / grid_count for k in range(grid_count + 1)]
            vals = [G(t) for t in ts]
            roots = []
            for t, v in zip(ts, vals):
                if v == 0:
                    roots.append(t)
            for (t0, v0), (t1, v1) in zip(zip(ts, vals), zip(ts[1:], vals[1:])):
                if v0 * v1 < 0:
                    roots.append(_bisect(G, t0, t1, v0, ctx))
            return sorted(roots)

        roots = collect(64 * n)
        if len(roots) != n:
            roots = collect(512 * n)
        if len(roots) != n:
            raise CountError(
                f"found {len(roots)} zeros of the second-sheet combination, expected {n}",
                found=roots,
            )
    return ZeroCloud.from_roots(roots, "auxiliary_P_n", n)


def _bisect(G, lo, hi, flo, ctx: PrecisionContext):
    tol = mp.mpf(2) ** (-(ctx.mantissa_bits // 2))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = G(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# Polynomial roots (Aberth simultaneous iteration)
# ---------------------------------------------------------------------------

def poly_roots(monomial_coeffs: Sequence, ctx: PrecisionContext = DEFAULT_CTX,
               family: str = "type2", n: int = 0,
               max_iterations: int = 400) -> ZeroCloud:
    """All complex roots of a polynomial, with residual verification.

    Aberth-Ehrlich simultaneous iteration from perturbed circular starting
    points, followed by Newton polish.  Raises PrecisionError if the
    corrections do not settle within the iteration budget.
    """
    with ctx.workprec(extra=32):
        coeffs = [ctx.to_number(c) for c in monomial_coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        d = len(coeffs) - 1
        if d < 1:
            raise DomainError("polynomial must have degree >= 1")
        if coeffs[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")
        roots = [mp.mpc(0)] * 0
        # exact zero roots split off first (they break the Aberth denominators)
        zero_mult = 0
        while coeffs[0] == 0:
            zero_mult += 1
            coeffs = coeffs[1:]
            d -= 1
        norm = max(abs(c) for c in coeffs)

        def horner_pair(z):
            p = coeffs[-1]
            dp = mp.mpf(0)
            for c in reversed(coeffs[:-1]):
                dp = dp * z + p
                p = p * z + c
            return p, dp

        if d >= 1:
            lead = coeffs[-1]
            radius = mp.mpf(0)
            for k in range(d):
                if coeffs[k] != 0:
                    radius = max(radius, abs(coeffs[k] / lead) ** (mp.mpf(1) / (d - k)))
            radius = 2 * radius if radius > 0 else mp.mpf(1)
            zs = [radius * mp.expjpi(mp.mpf(2 * k) / d + mp.mpf(1) / (2 * d) +
                                     mp.mpf(3) / (7 * d * d)) for k in range(d)]
            tol = mp.mpf(2) ** (-(int(0.7 * ctx.mantissa_bits)))
            stalled = None
            for it in range(max_iterations):
                worst = mp.mpf(0)
                new = list(zs)
                for i, z in enumerate(zs):
                    p, dp = horner_pair(z)
                    if p == 0:
                        continue
                    newton = p / dp if dp != 0 else mp.mpc(1) / d
                    rep = mp.fsum((1 / (z - zj) for j, zj in enumerate(zs) if j != i),
                                  absolute=False)
                    denom = 1 - newton * rep
                    step = newton / denom if denom != 0 else newton
                    new[i] = z - step
                    worst = max(worst, abs(step) / (1 + abs(z)))
                zs = new
                if worst < tol:
                    stalled = it
                    break
            if stalled is None:
                raise PrecisionError(
                    f"root iteration did not settle in {max_iterations} sweeps; "
                    f"increase mantissa_bits"
                )
            for i, z in enumerate(zs):
                for _ in range(3):
                    p, dp = horner_pair(z)
                    if dp == 0 or p == 0:
                        break
                    z = z - p / dp
                zs[i] = z
            roots = zs
        all_roots = [mp.mpc(0)] * zero_mult + list(roots)
        residual = mp.mpf(0)
        for z in roots:
            p, _ = horner_pair(z)
            residual = max(residual, abs(p) / norm)
        return ZeroCloud.from_roots(all_roots, family, n if n else d,
                                    residual=float(residual))


def realify_cloud(cloud: ZeroCloud, tol: float) -> ZeroCloud:
    """Project near-real roots onto the axis, failing loudly otherwise."""
    pts = []
    for z in cloud.points:
        if abs(mp.im(z)) > tol:
            raise DomainError(f"root {z} is not real within {tol}")
        pts.append(mp.re(z))
    return ZeroCloud.from_roots(pts, cloud.family, cloud.n)


# ---------------------------------------------------------------------------
# Circle equation for the type II zeros
# ---------------------------------------------------------------------------

def circle_phase(betas, n: int, theta, ctx: PrecisionContext = DEFAULT_CTX):
    """Continuous phase of the circle-equation left side at zeta = e^(i theta).

    Each Blaschke factor contributes theta - 2 arg(1 - beta e^(i theta)),
    strictly increasing in theta; with the zeta^(3n) factor the total
    phase climbs from 0 to 4 n pi over (0, pi).
    """
    with ctx.workprec():
        th = ctx.to_number(theta)
        total = (3 * n + len(betas)) * th
        for b in betas:
            bb = ctx.mpf(b)
            total -= 2 * mp.atan2(-bb * mp.sin(th), 1 - bb * mp.cos(th))
        return total


def circle_roots(betas, n: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Solve the unit-circle zero equation; returns the 2n cosines in (-1, 1).

    The left side has unit modulus on the circle, so solutions are the
    phase crossings of odd multiples of pi; the phase is monotone and is
    solved by bisection per target.  A verification pass evaluates the
    product at each solution and refines once on failure.
    """
    if len(betas) != n:
        raise DomainError("need exactly n reflected auxiliary zeros")
    for b in betas:
        if not (-1 < float(b) < 1):
            raise DomainError("betas must lie in (-1, 1)")
    with ctx.workprec():
        pi = mp.pi
        tol_theta = mp.mpf(2) ** (-(ctx.mantissa_bits // 2 + 8))

        def solve(target, lo, hi):
            flo = circle_phase(betas, n, lo, ctx) - target
            while hi - lo > tol_theta:
                mid = (lo + hi) / 2
                fm = circle_phase(betas, n, mid, ctx) - target
                if fm == 0:
                    return mid
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            return (lo + hi) / 2

        thetas = []
        eps = mp.mpf(2) ** (-(ctx.mantissa_bits - 8))
        for k in range(1, 2 * n + 1):
            thetas.append(solve((2 * k - 1) * pi, eps, pi - eps))

        def product_value(theta):
            zeta = mp.expj(theta)
            val = zeta ** (3 * n)
            for b in betas:
                bb = ctx.mpf(b)
                val *= (zeta - bb) / (1 - bb * zeta)
            return val

        check_tol = mp.mpf(2) ** (-(ctx.mantissa_bits // 4))
        for idx, th in enumerate(thetas):
            if abs(product_value(th) + 1) > check_tol:
                # one refinement pass: re-solve the same target with a
                # Newton polish on the phase (derivative is available)
                target = (2 * (idx + 1) - 1) * pi
                refined = th
                for _ in range(8):
                    slope = 3 * n + mp.fsum(
                        (1 - ctx.mpf(b) ** 2) / abs(1 - ctx.mpf(b) * mp.expj(refined)) ** 2
                        for b in betas)
                    refined = refined - (circle_phase(betas, n, refined, ctx) - target) / slope
                if abs(product_value(refined) + 1) > check_tol:
                    raise ResolutionError(
                        f"phase solution {idx} failed verification after refinement"
                    )
                thetas[idx] = refined
        return [mp.cos(th) for th in thetas]
