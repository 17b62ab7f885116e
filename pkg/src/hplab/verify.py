"""Empirical zero measures, distribution comparison, and the theorem-level
checks: auxiliary-zero limits, the type II zero limit, strong asymptotics,
the balayage constancy identity, and the vector/scalar equivalence.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from mpmath import mp

from .errors import DomainError
from .hermite_pade import (ZeroCloud, auxiliary_zeros, hp_type2_markov,
                           poly_roots, realify_cloud, split_type2)
from .intervals import as_interval_union
from .maps import phi
from .measures import (DiscreteMeasure, arcsine_measure, balayage_onto_E,
                       blaschke_log_sum, log_potential)
from .equilibrium import (EquilibriumSolution, solve_scalar_equilibrium,
                          solve_vector_equilibrium, type2_limit_measure)
from .precision import DEFAULT_CTX, PrecisionContext


@dataclass
class ComparisonReport:
    """Headline distance, the per-degree sequence, and echoed inputs."""

    ks_distance: float
    n_sequence: List[Tuple[int, float]]
    monotone_flag: bool
    details: Dict = field(default_factory=dict)

    def __post_init__(self):
        if not (0.0 <= self.ks_distance <= 1.0):
            raise DomainError("a CDF sup-distance must lie in [0, 1]")

    def to_json_dict(self) -> dict:
        return {
            "ks_distance": self.ks_distance,
            "n_sequence": [[n, ks] for n, ks in self.n_sequence],
            "monotone_flag": self.monotone_flag,
            "details": self.details,
        }


def empirical_measure(cloud: ZeroCloud, ctx: PrecisionContext = DEFAULT_CTX) -> DiscreteMeasure:
    """Unit mass spread equally over the cloud points."""
    if len(cloud) == 0:
        raise DomainError("cannot build a measure from an empty cloud")
    with ctx.workprec():
        w = 1 / mp.mpf(len(cloud))
    return DiscreteMeasure.from_points(list(cloud.points), [w] * len(cloud), ctx)


def ks_distance(mu1: DiscreteMeasure, mu2: DiscreteMeasure,
                ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """Sup distance of the two CDFs over the merged node set.

    Both measures must be real-supported with unit mass; complex clouds
    must be projected explicitly upstream.
    """
    for mu in (mu1, mu2):
        if not mu.is_real_supported():
            raise DomainError("ks_distance requires real-supported measures")
    with ctx.workprec():
        n1 = [mp.re(n) for n in mu1.nodes]
        n2 = [mp.re(n) for n in mu2.nodes]
        c1 = _cumulative(mu1.weights)
        c2 = _cumulative(mu2.weights)
        best = mp.mpf(0)
        for x in sorted(set(n1) | set(n2)):
            # evaluate just before and just after each atom position
            lo = abs(c1[bisect_left(n1, x)] - c2[bisect_left(n2, x)])
            hi = abs(c1[bisect_right(n1, x)] - c2[bisect_right(n2, x)])
            best = max(best, lo, hi)
        return float(best)


def _cumulative(weights):
    out = [mp.mpf(0)]
    for w in weights:
        out.append(out[-1] + w)
    return out


def strong_asymptotics_rhs(lambda_F: DiscreteMeasure, z,
                           ctx: PrecisionContext = DEFAULT_CTX):
    """Right side of the strong-asymptotics limit for -(1/n) log |q_2n|.

    U(z) + int log|phi(z) - phi(t)| dlambda(t) - 2 log|phi(z)| + log 2,
    evaluated by the quadrature the measure carries.
    """
    with ctx.workprec():
        zz = ctx.to_number(z)
        pz = phi(zz, 0, ctx)
        u = log_potential(lambda_F, zz, ctx)
        cross = mp.mpf(0)
        for node, w in zip(lambda_F.nodes, lambda_F.weights):
            cross += w * mp.log(abs(pz - phi(node, 0, ctx)))
        return u + cross - 2 * mp.log(abs(pz)) + mp.log(2)


def lemma2_constancy_spread(mu: DiscreteMeasure, zs, N: int = 2000,
                            ctx: PrecisionContext = DEFAULT_CTX) -> float:
    """Spread of v(z; mu) + U^(swept + arcsine)(z)/2 over the test points.

    The combination is constant off the supports when the balayage
    density is correct; only the spread is reported, never the constant.
    """
    swept = balayage_onto_E(mu, N, ctx)
    tau = arcsine_measure(N, ctx)
    with ctx.workprec():
        vals = []
        for z in zs:
            v = blaschke_log_sum(mu, z, ctx)
            u = log_potential(swept, z, ctx) + log_potential(tau, z, ctx)
            vals.append(v + u / 2)
        return float(max(vals) - min(vals))


def default_offsupport_points(count: int = 50):
    """Deterministic evaluation points avoiding [-1, 1] and the real ray right of it."""
    pts = [complex(0.3, 0.7), complex(-0.3, 0.7), complex(0.3, -0.7), complex(-0.3, -0.7)]
    k = 1
    while len(pts) < count and k <= 23:
        pts.append(complex(4.0, 0.1 * k))
        k += 1
    k = 1
    while len(pts) < count:
        pts.append(complex(-2.0, 0.3 * k))
        k += 1
    return pts[:count]


def _nonincreasing(seq, slack: float) -> bool:
    return all(b <= a + slack for a, b in zip(seq, seq[1:]))


def check_lemma1(F, density, n_list, ctx: PrecisionContext = DEFAULT_CTX,
                 N: int = 400, tol: float = 1e-3, slack: float = 0.01,
                 solution: Optional[EquilibriumSolution] = None) -> ComparisonReport:
    """Limit distribution of the auxiliary zeros against the scalar measure.

    For each degree the pipeline is construction, splitting, auxiliary
    zero extraction and an empirical-measure comparison with the scalar
    equilibrium measure.
    """
    F = as_interval_union(F)
    if solution is None:
        solution = solve_scalar_equilibrium(F, N=N, tol=tol, ctx=ctx)
    lam = solution.measure
    hull = F.hull
    seq = []
    details: Dict = {
        "N": N, "tol": tol, "slack": slack,
        "precision_bits": ctx.mantissa_bits,
        "F": [[c.a, c.b] for c in F.components],
        "equilibrium_residual": solution.residual,
        "per_n": {},
    }
    for n in n_list:
        hp = hp_type2_markov(F, density, n, ctx)
        q1, q2 = split_type2(hp, ctx)
        cloud = auxiliary_zeros(q1, q2, hull, n, ctx)
        emp = empirical_measure(cloud, ctx)
        ks = ks_distance(emp, lam, ctx)
        seq.append((n, ks))
        in_hull = all(hull.contains(float(b), tol=1e-12) for b in cloud.points)
        gap_counts = [sum(1 for b in cloud.points if g.a < float(b) < g.b)
                      for g in F.gaps()]
        details["per_n"][str(n)] = {
            "ks": ks,
            "all_in_hull": bool(in_hull),
            "gap_counts": gap_counts,
            "construction_residual": hp.residual,
        }
    return ComparisonReport(
        ks_distance=seq[-1][1],
        n_sequence=seq,
        monotone_flag=_nonincreasing([ks for _, ks in seq], slack),
        details=details,
    )


def check_corollary1(F, density, n_list, ctx: PrecisionContext = DEFAULT_CTX,
                     N: int = 400, tol: float = 1e-3, slack: float = 0.01,
                     solution: Optional[EquilibriumSolution] = None) -> ComparisonReport:
    """Type II zero distribution against the composed limit measure.

    Compares the unit-mass zero counting measure of q (mass bookkeeping:
    the raw counting measure has mass 2n, i.e. twice the index) with the
    quarter-balayage-plus-three-quarters-arcsine composition, and, for a
    single-interval F, with the vector equilibrium measure.
    """
    F = as_interval_union(F)
    if solution is None:
        solution = solve_scalar_equilibrium(F, N=N, tol=tol, ctx=ctx)
    mu_limit = type2_limit_measure(solution.measure, N, ctx)
    lam_E = None
    ks_mu_lamE = None
    if len(F.components) == 1:
        vec = solve_vector_equilibrium(F.components[0], N=N, tol=tol, ctx=ctx)
        lam_E = vec.measure
        ks_mu_lamE = ks_distance(mu_limit, lam_E, ctx)
    seq = []
    details: Dict = {
        "N": N, "tol": tol, "slack": slack,
        "precision_bits": ctx.mantissa_bits,
        "F": [[c.a, c.b] for c in F.components],
        "mass_normalization": "unit mass reported; the raw counting measure has mass 2n",
        "ks_mu_vs_lambda_E": ks_mu_lamE,
        "per_n": {},
    }
    with ctx.workprec():
        real_tol = float(mp.mpf(2) ** (-(ctx.mantissa_bits // 4)))
    for n in n_list:
        hp = hp_type2_markov(F, density, n, ctx)
        cloud = poly_roots(hp.q.to_monomial(ctx), ctx, family="type2", n=n)
        cloud = realify_cloud(cloud, real_tol)
        emp = empirical_measure(cloud, ctx)
        ks = ks_distance(emp, mu_limit, ctx)
        entry = {"ks_vs_mu": ks, "zero_count": len(cloud)}
        if lam_E is not None:
            entry["ks_vs_lambda_E"] = ks_distance(emp, lam_E, ctx)
        seq.append((n, ks))
        details["per_n"][str(n)] = entry
    return ComparisonReport(
        ks_distance=seq[-1][1],
        n_sequence=seq,
        monotone_flag=_nonincreasing([ks for _, ks in seq], slack),
        details=details,
    )


def check_strong_asymptotics(F, density, n_list, zs,
                             ctx: PrecisionContext = DEFAULT_CTX,
                             N: int = 400, tol: float = 1e-3,
                             solution: Optional[EquilibriumSolution] = None) -> Dict:
    """|(-1/n) log |q(z)| - RHS(z)| per degree and a fitted C/n envelope."""
    F = as_interval_union(F)
    if solution is None:
        solution = solve_scalar_equilibrium(F, N=N, tol=tol, ctx=ctx)
    lam = solution.measure
    out: Dict = {
        "N": N, "tol": tol, "precision_bits": ctx.mantissa_bits,
        "points": [[z.real, z.imag] for z in map(complex, zs)],
        "per_point": [],
    }
    with ctx.workprec():
        rhs_vals = [strong_asymptotics_rhs(lam, z, ctx) for z in zs]
        errors = {complex(z): [] for z in zs}
        for n in n_list:
            hp = hp_type2_markov(F, density, n, ctx)
            mono = hp.q.to_monomial(ctx)
            for z, rhs in zip(zs, rhs_vals):
                zz = ctx.to_number(z)
                acc = mono[-1]
                for c in reversed(mono[:-1]):
                    acc = acc * zz + c
                lhs = -mp.log(abs(acc)) / n
                errors[complex(z)].append(float(abs(lhs - rhs)))
        for z in zs:
            errs = errors[complex(z)]
            fitted_C = max(e * n for e, n in zip(errs, n_list))
            out["per_point"].append({
                "z": [complex(z).real, complex(z).imag],
                "errors": errs,
                "n_list": list(n_list),
                "fitted_C": fitted_C,
            })
    return out


def delta_decay_rate(betas, n: int, z, ctx: PrecisionContext = DEFAULT_CTX):
    """|delta_n(z)|^(1/n) from the Blaschke product over the reflected zeros.

    delta_n is the ratio of the subdominant to the dominant sheet branch;
    it controls the geometric convergence of the representation of q.
    """
    with ctx.workprec():
        p1 = phi(z, 1, ctx)
        val = p1 ** (3 * n)
        for b in betas:
            bb = ctx.mpf(b)
            val *= (p1 - bb) / (1 - bb * p1)
        return float(abs(val) ** (mp.mpf(1) / n))
