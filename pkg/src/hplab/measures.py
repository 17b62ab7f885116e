"""Discrete measures and the potential-theoretic functionals built on them:
logarithmic, Blaschke-type and surface potentials, Green potentials,
balayage onto [-1, 1], the arcsine measure, and the spherically
normalized potential.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import mpmath
from mpmath import mp

from .errors import DomainError, SingularityError
from .intervals import Interval
from .maps import green_function_interval, phi, sqrt_z2m1
from .precision import DEFAULT_CTX, PrecisionContext
from .quadrature import chebyshev_nodes


def _sort_key(node):
    return (mp.re(node), mp.im(node))


@dataclass(frozen=True)
class DiscreteMeasure:
    """Weighted point masses approximating a positive Borel measure.

    Nodes are kept sorted by (real part, imaginary part) so that
    serialization is deterministic; weights are nonnegative and ``mass``
    is their exact sum.  Instances are immutable.
    """

    nodes: Tuple
    weights: Tuple
    mass: mpmath.mpf

    @classmethod
    def from_points(cls, nodes, weights, ctx: PrecisionContext = DEFAULT_CTX):
        if len(nodes) != len(weights):
            raise DomainError("nodes and weights must have equal length")
        if len(nodes) == 0:
            raise DomainError("a measure needs at least one atom")
        with ctx.workprec():
            pairs = [(ctx.to_number(n), ctx.to_number(w)) for n, w in zip(nodes, weights)]
            for _, w in pairs:
                if mp.im(w) != 0 or w < 0:
                    raise DomainError("weights must be nonnegative reals")
            pairs.sort(key=lambda p: _sort_key(p[0]))
            mass = mp.fsum(w for _, w in pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), mass)

    @classmethod
    def point_mass(cls, t, weight=1, ctx: PrecisionContext = DEFAULT_CTX):
        return cls.from_points([t], [weight], ctx)

    def __len__(self):
        return len(self.nodes)

    def is_real_supported(self) -> bool:
        return all(mp.im(n) == 0 for n in self.nodes)

    def scaled(self, factor, ctx: PrecisionContext = DEFAULT_CTX):
        """Same atoms with all weights multiplied by ``factor`` >= 0."""
        with ctx.workprec():
            weights = [w * ctx.mpf(factor) for w in self.weights]
        return DiscreteMeasure.from_points(self.nodes, weights, ctx)

    def mixed_with(self, other: "DiscreteMeasure", ctx: PrecisionContext = DEFAULT_CTX):
        """Union of atom sets, weights concatenated (masses add)."""
        return DiscreteMeasure.from_points(
            list(self.nodes) + list(other.nodes),
            list(self.weights) + list(other.weights),
            ctx,
        )

    def to_json_dict(self) -> dict:
        return {
            "nodes": [[float(mp.re(n)), float(mp.im(n))] for n in self.nodes],
            "weights": [float(w) for w in self.weights],
            "mass": float(self.mass),
        }

    @classmethod
    def from_json_dict(cls, obj, ctx: PrecisionContext = DEFAULT_CTX):
        nodes = [complex(re, im) for re, im in obj["nodes"]]
        return cls.from_points(nodes, obj["weights"], ctx)


def arcsine_measure(N: int, ctx: PrecisionContext = DEFAULT_CTX) -> DiscreteMeasure:
    """N-node Gauss-Chebyshev discretization of dx / (pi sqrt(1 - x^2))."""
    nodes = chebyshev_nodes(N, ctx)
    with ctx.workprec():
        w = 1 / mp.mpf(N)
    return DiscreteMeasure.from_points(nodes, [w] * N, ctx)


def log_potential(mu: DiscreteMeasure, z, ctx: PrecisionContext = DEFAULT_CTX):
    """Logarithmic potential sum_i w_i log(1 / |z - node_i|)."""
    with ctx.workprec():
        zz = ctx.to_number(z)
        total = mp.mpf(0)
        for node, w in zip(mu.nodes, mu.weights):
            d = zz - node
            if d == 0:
                raise SingularityError("log potential evaluated at an atom")
            total -= w * mp.log(abs(d))
        return total


def tilde_potential(mu: DiscreteMeasure, z, ctx: PrecisionContext = DEFAULT_CTX):
    """sum_i w_i log(1 / |1 - phi(z) phi(node_i)|), sheet-0 phi throughout."""
    with ctx.workprec():
        pz = phi(z, 0, ctx)
        total = mp.mpf(0)
        for node, w in zip(mu.nodes, mu.weights):
            val = 1 - pz * phi(node, 0, ctx)
            if val == 0:
                raise SingularityError("phi(z) phi(node) = 1 in tilde potential")
            total -= w * mp.log(abs(val))
        return total


def blaschke_log_sum(mu: DiscreteMeasure, z, ctx: PrecisionContext = DEFAULT_CTX):
    """sum_i w_i log |1 - phi(z) phi(node_i)|  (negative of tilde_potential)."""
    return -tilde_potential(mu, z, ctx)


def scalar_potential_P(mu: DiscreteMeasure, z, ctx: PrecisionContext = DEFAULT_CTX):
    """Surface potential of a measure living on the second sheet over F.

    Computed as ``2 U - tilde U``; agrees with the direct kernel sum
    ``scalar_potential_P_direct`` to working precision by construction.
    """
    return 2 * log_potential(mu, z, ctx) - tilde_potential(mu, z, ctx)


def scalar_potential_P_direct(mu: DiscreteMeasure, z, ctx: PrecisionContext = DEFAULT_CTX):
    """Direct evaluation of the surface kernel log(|1 - phi phi| / |z-t|^2)."""
    with ctx.workprec():
        zz = ctx.to_number(z)
        pz = phi(z, 0, ctx)
        total = mp.mpf(0)
        for node, w in zip(mu.nodes, mu.weights):
            d = zz - node
            if d == 0:
                raise SingularityError("surface kernel evaluated at an atom")
            val = 1 - pz * phi(node, 0, ctx)
            if val == 0:
                raise SingularityError("phi(z) phi(node) = 1 in surface kernel")
            total += w * (mp.log(abs(val)) - 2 * mp.log(abs(d)))
        return total


def green_potential(J: Interval, mu: DiscreteMeasure, z, ctx: PrecisionContext = DEFAULT_CTX):
    """Green potential sum_i w_i g_J(z, node_i) for the complement of J."""
    with ctx.workprec():
        total = mp.mpf(0)
        for node, w in zip(mu.nodes, mu.weights):
            total += w * green_function_interval(J, z, node, ctx)
        return total


def balayage_onto_E(mu: DiscreteMeasure, N: int, ctx: PrecisionContext = DEFAULT_CTX) -> DiscreteMeasure:
    """Sweep a measure on R \\ [-1, 1] onto [-1, 1].

    Uses the point-mass density
    ``(1/pi) sqrt(t^2 - 1) / (|t - x| sqrt(1 - x^2))`` per atom at ``t``,
    discretized on N Gauss-Chebyshev nodes (which absorb the
    1/sqrt(1 - x^2) factor exactly).  Mass is preserved up to the
    quadrature error, which decays like |phi(t)|^(-2N).

    The density is validated by the potential-constancy property
    U^swept - U^mu = const on (-1, 1); see the test suite.
    """
    if N < 2:
        raise DomainError("balayage discretization needs N >= 2")
    with ctx.workprec():
        sq = []
        for node in mu.nodes:
            if mp.im(node) != 0 or abs(mp.re(node)) <= 1:
                raise DomainError("balayage source atoms must be real with |t| > 1")
            t = mp.re(node)
            sq.append(mp.sqrt(t * t - 1))
        xs = chebyshev_nodes(N, ctx)
        weights = []
        for x in xs:
            acc = mp.mpf(0)
            for node, w, s in zip(mu.nodes, mu.weights, sq):
                acc += w * s / abs(mp.re(node) - x)
            weights.append(acc / N)
    return DiscreteMeasure.from_points(xs, weights, ctx)


def _logsin_primitive_small(x):
    """S(x) = int_0^x log|sin s| ds for small |x| (series through x^13)."""
    if x == 0:
        return mp.mpf(0)
    x2 = x * x
    tail = x2 / 18 + x2 * x2 / 900 + x2 * x2 * x2 / 19845 \
        + x2 ** 4 / 340200 + x2 ** 5 / 5145525 + x2 ** 6 / 70945875
    return x * (mp.log(abs(x)) - 1) - x * tail


def log_potential_on_cut(mu: DiscreteMeasure, x, ctx: PrecisionContext = DEFAULT_CTX,
                         near_cells: int = 64):
    """Logarithmic potential of a Gauss-Chebyshev-structured measure at a
    point x inside (-1, 1).

    The atoms must sit at the N Gauss-Chebyshev nodes (as produced by
    ``arcsine_measure`` and ``balayage_onto_E``); each atom stands for the
    angular cell of width pi/N around it.  The plain atom sum carries an
    O(1/N) wiggle from the cells nearest the logarithmic singularity, so
    for the ``near_cells`` cells on each side the singular kernel factor
    log|sin((theta - phi)/2)| is integrated in closed form over the cell,
    which restores accuracy O(1/(N * near_cells)) on the cut.
    """
    with ctx.workprec():
        N = len(mu)
        xx = ctx.to_number(x)
        if mp.im(xx) != 0 or not (-1 < mp.re(xx) < 1):
            raise DomainError("log_potential_on_cut expects x inside (-1, 1)")
        h = mp.pi / N
        thetas = [mp.pi * (2 * k - 1) / (2 * N) for k in range(N, 0, -1)]
        for node, th in zip(mu.nodes, thetas):
            if abs(node - mp.cos(th)) > mp.mpf(2) ** (-(ctx.mantissa_bits // 2)):
                raise DomainError("measure atoms are not Gauss-Chebyshev structured")
        phi_x = mp.acos(mp.re(xx))
        log2 = mp.log(2)
        total = mp.mpf(0)
        for node, w, th in zip(mu.nodes, mu.weights, thetas):
            if abs(th - phi_x) <= near_cells * h:
                # log|cos phi - cos t| = log 2 + log|sin((t+phi)/2)| + log|sin((t-phi)/2)|;
                # only the last factor is singular near t = phi and needs the
                # exact cell average, the others stay at the node value.
                sing = (_logsin_primitive_small((th + h / 2 - phi_x) / 2)
                        - _logsin_primitive_small((th - h / 2 - phi_x) / 2)) * 2 / h
                term = log2 + mp.log(abs(mp.sin((th + phi_x) / 2))) + sing
                total -= w * term
            else:
                total -= w * mp.log(abs(xx - node))
        return total


def spherical_potential(mu: DiscreteMeasure, z, ctx: PrecisionContext = DEFAULT_CTX):
    """Spherically normalized potential sum_i w_i log |H(z, node_i)| with
    H(z, x) = z - x for |x| <= 1, (z - x)/|x| for |x| > 1, and 1 at infinity.
    """
    with ctx.workprec():
        zz = ctx.to_number(z)
        total = mp.mpf(0)
        for node, w in zip(mu.nodes, mu.weights):
            if mp.isinf(node):
                continue
            d = zz - node
            if d == 0:
                raise SingularityError("spherical potential evaluated at an atom")
            term = mp.log(abs(d))
            if abs(node) > 1:
                term -= mp.log(abs(node))
            total += w * term
        return total
