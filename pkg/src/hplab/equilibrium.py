"""Equilibrium-measure solvers.

Two problems are solved on node simplices by away-step Frank-Wolfe:

* the scalar problem on the spectral set F, with kernel
  ``log|1 - phi(t) phi(s)| - 2 log|t - s|`` and external field
  ``log phi(t)`` (the measure lives on the second sheet over F);
* the classical vector problem on E = [-1, 1] for a single-interval F,
  with kernel ``3 log(1/|x - y|) + g_F(x, y)`` and no external field.

The kernels, fields and iterations run in float64: both solvers carry
tolerances of 1e-3 and energies compared at 1e-4, three orders of
magnitude above double-precision noise, and the quadratic-program loop
is the computational hot spot.  Measures are returned as exact
DiscreteMeasure objects for downstream arbitrary-precision use.

Kernel diagonals use the exact uniform-cell self-energy
``c (3/2 - log h_i)`` for a singular part ``c log(1/|t - s|)`` and cell
width h_i; the rule is fixed across N so energy convergence in N is
observable and coarse/fine grids are comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError
from .intervals import Interval, IntervalUnion, as_interval_union
from .measures import DiscreteMeasure, arcsine_measure, balayage_onto_E
from .precision import DEFAULT_CTX, PrecisionContext

MAX_ITERATIONS = 100_000


@dataclass
class EquilibriumSolution:
    """Measure, equilibrium constant, residual and minimized energy."""

    measure: DiscreteMeasure
    constant_w: float
    residual: float
    energy: float
    iterations: int = 0
    gap: float = float("nan")
    energy_monotone: bool = True
    diagnostics: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "measure": self.measure.to_json_dict(),
            "w": self.constant_w,
            "residual": self.residual,
            "energy": self.energy,
        }


def _phi_real(u):
    """|phi| > 1 branch of the inverse Joukowsky map for real |u| > 1."""
    u = np.asarray(u, dtype=float)
    return u + np.sign(u) * np.sqrt(u * u - 1.0)


def _scalar_grid(F: IntervalUnion, N: int):
    """Gauss-Legendre nodes per component, counts proportional to length."""
    total = F.total_length
    counts = []
    left = N
    for i, comp in enumerate(F.components):
        if i == len(F.components) - 1:
            c = left
        else:
            c = max(8, int(round(N * comp.length / total)))
        counts.append(c)
        left -= c
    if min(counts) < 8:
        raise DomainError("too few nodes per component; increase N")
    nodes, cells = [], []
    for comp, c in zip(F.components, counts):
        x, w = np.polynomial.legendre.leggauss(c)
        nodes.append(comp.midpoint + comp.halfwidth * x)
        cells.append(comp.halfwidth * w)
    return np.concatenate(nodes), np.concatenate(cells)


def _scalar_kernel(t: np.ndarray, h: np.ndarray):
    """Kernel matrix and external field of the scalar problem."""
    p = _phi_real(t)
    pp = np.outer(p, p)
    diff = np.abs(t[:, None] - t[None, :])
    np.fill_diagonal(diff, 1.0)
    K = np.log(np.abs(1.0 - pp)) - 2.0 * np.log(diff)
    diag = np.log(np.abs(1.0 - p * p)) + 2.0 * (1.5 - np.log(h))
    np.fill_diagonal(K, diag)
    V = np.log(p)
    return K, V


def _green_unit_interval(u: np.ndarray, v: np.ndarray):
    """g(u, v) for the complement of [-1, 1], real arguments off the cut.

    Diagonal entries (pole positions) come out as 0 and must be
    overwritten by the caller.
    """
    pu, pv = _phi_real(u), _phi_real(v)
    diff = np.abs(pu[:, None] - pv[None, :])
    diff[diff == 0.0] = 1.0
    return np.log(np.abs(1.0 - pu[:, None] * pv[None, :])) - np.log(diff)


def _vector_grid(N: int):
    """Gauss-Chebyshev nodes on (-1, 1) with their arc-cell widths."""
    k = np.arange(N, 0, -1)
    x = np.cos((2 * k - 1) * np.pi / (2 * N))
    h = np.pi * np.sqrt(1.0 - x * x) / N
    return x, h


def _vector_kernel(x: np.ndarray, h: np.ndarray, F: Interval):
    """Kernel 3 log(1/|x-y|) + g_F(x, y) on E; no external field.

    Both the logarithmic part and the Green function contribute a
    log(1/|x-y|) singularity on the diagonal, total strength 4.
    """
    half = F.halfwidth
    u = (x - F.midpoint) / half
    diff = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(diff, 1.0)
    G = _green_unit_interval(u, u)
    pu = _phi_real(u)
    # g(u,v) ~ -log|x-y| - log(|phi'(u)|/half) + log|1-phi(u)^2| as y -> x
    smooth = np.log(np.abs(1.0 - pu * pu)) - np.log(
        np.abs(pu) / (np.sqrt(u * u - 1.0) * half)
    )
    np.fill_diagonal(G, 0.0)
    K = -3.0 * np.log(diff) + G
    diag = 4.0 * (1.5 - np.log(h)) + smooth
    np.fill_diagonal(K, diag)
    V = np.zeros_like(x)
    return K, V


def _away_step_frank_wolfe(K, V, w0, tol, max_iter):
    """Minimize w'Kw + 2 V'w over the probability simplex.

    Away-step Frank-Wolfe with exact line search (the objective is
    quadratic).  Stops when the Frank-Wolfe duality gap drops below
    0.1 * tol or the iteration budget is exhausted.  Returns the iterate
    together with convergence diagnostics; the energy sequence is
    checked to be nonincreasing.
    """
    N = len(V)
    w = np.array(w0, dtype=float)
    Kw = K @ w
    quad = float(w @ Kw)
    lin = float(V @ w)
    energy = quad + 2.0 * lin
    gap_tol = 0.1 * tol
    monotone = True
    gap = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        g = 2.0 * (Kw + V)
        j = int(np.argmin(g))
        active = np.nonzero(w > 0.0)[0]
        i = active[int(np.argmax(g[active]))]
        gap = float(g @ w - g[j])
        if gap <= gap_tol:
            break
        fw_align = float(g @ w - g[j])
        away_align = float(g[i] - g @ w)
        if fw_align >= away_align:
            # toward vertex j: d = e_j - w
            d_K = K[:, j] - Kw
            denom = float(K[j, j] - 2.0 * Kw[j] + quad)
            slope = float(g[j] - g @ w)
            gamma_max = 1.0
        else:
            # away from vertex i: d = w - e_i
            d_K = Kw - K[:, i]
            denom = float(quad - 2.0 * Kw[i] + K[i, i])
            slope = float(g @ w - g[i])
            gamma_max = w[i] / (1.0 - w[i]) if w[i] < 1.0 else 1.0
        if slope >= 0.0:
            break
        gamma = gamma_max if denom <= 0.0 else min(gamma_max, -slope / (2.0 * denom))
        if gamma <= 0.0:
            break
        if fw_align >= away_align:
            w *= 1.0 - gamma
            w[j] += gamma
            new_quad = (1 - gamma) ** 2 * quad + 2 * gamma * (1 - gamma) * Kw[j] + gamma**2 * K[j, j]
            Kw = (1.0 - gamma) * Kw + gamma * K[:, j]
            lin = (1.0 - gamma) * lin + gamma * V[j]
        else:
            w *= 1.0 + gamma
            w[i] -= gamma
            if gamma == gamma_max:
                w[i] = 0.0  # drop step
            new_quad = (1 + gamma) ** 2 * quad - 2 * gamma * (1 + gamma) * Kw[i] + gamma**2 * K[i, i]
            Kw = (1.0 + gamma) * Kw - gamma * K[:, i]
            lin = (1.0 + gamma) * lin - gamma * V[i]
        quad = new_quad
        new_energy = quad + 2.0 * lin
        if new_energy > energy + 1e-12 * max(1.0, abs(energy)):
            monotone = False
        energy = new_energy
        np.clip(w, 0.0, None, out=w)
    return w, energy, gap, it, monotone


def _finalize(nodes, w, K, V, tol, gap, iterations, monotone, ctx, extra=None):
    g = K @ w + V
    support = w > 0.0
    constant = float(w @ g)
    residual = float(np.max(np.abs(g[support] - constant)))
    energy = float(w @ (K @ w) + 2.0 * (V @ w))
    measure = DiscreteMeasure.from_points(
        [float(t) for t in nodes], [float(x) for x in w], ctx
    )
    sol = EquilibriumSolution(
        measure=measure,
        constant_w=constant,
        residual=residual,
        energy=energy,
        iterations=iterations,
        gap=gap,
        energy_monotone=monotone,
        diagnostics=extra or {},
    )
    if residual > tol:
        raise ConvergenceError(
            f"equilibrium residual {residual:.3e} above tolerance {tol:.3e} "
            f"after {iterations} iterations",
            best=sol,
        )
    return sol


def _start_weights(N: int, start, nodes):
    if start is None or (isinstance(start, str) and start == "uniform"):
        return np.full(N, 1.0 / N)
    if isinstance(start, DiscreteMeasure):
        # project the starting measure onto the solver grid by nearest node
        w = np.zeros(N)
        grid = np.asarray(nodes, dtype=float)
        for node, weight in zip(start.nodes, start.weights):
            w[int(np.argmin(np.abs(grid - float(node.real))))] += float(weight)
        total = w.sum()
        if total <= 0:
            raise DomainError("starting measure has no mass on the grid")
        return w / total
    w = np.asarray(start, dtype=float)
    if w.shape != (N,) or w.min() < 0 or w.sum() <= 0:
        raise DomainError("start must be a nonnegative weight vector of grid length")
    return w / w.sum()


def solve_scalar_equilibrium(
    F,
    N: int = 400,
    tol: float = 1e-3,
    ctx: PrecisionContext = DEFAULT_CTX,
    start=None,
    max_iter: int = MAX_ITERATIONS,
) -> EquilibriumSolution:
    """Equilibrium measure on F for the two-sheeted surface kernel.

    Returns a probability measure on N Gauss-Legendre nodes spread over
    the components of F minimizing the discretized energy; on success the
    potential-plus-field is constant on the support up to ``tol``.
    """
    F = as_interval_union(F)
    F.validate_right_of_cut()
    if N < 50:
        raise DomainError("scalar solver needs N >= 50 nodes")
    nodes, cells = _scalar_grid(F, N)
    K, V = _scalar_kernel(nodes, cells)
    w0 = _start_weights(len(nodes), start, nodes)
    w, _, gap, it, monotone = _away_step_frank_wolfe(K, V, w0, tol, max_iter)
    return _finalize(nodes, w, K, V, tol, gap, it, monotone, ctx,
                     extra={"grid": "gauss-legendre", "N": int(len(nodes))})


def solve_vector_equilibrium(
    F: Interval,
    N: int = 400,
    tol: float = 1e-3,
    ctx: PrecisionContext = DEFAULT_CTX,
    start=None,
    max_iter: int = MAX_ITERATIONS,
) -> EquilibriumSolution:
    """Equilibrium measure on E = [-1, 1] for 3 U + G_F with single-interval F."""
    if isinstance(F, IntervalUnion):
        if len(F.components) != 1:
            raise DomainError("vector solver supports a single-interval F only")
        F = F.components[0]
    if not isinstance(F, Interval):
        F = Interval(float(F[0]), float(F[1]))
    if F.a <= 1.0:
        raise DomainError("F must lie strictly to the right of [-1, 1]")
    if N < 50:
        raise DomainError("vector solver needs N >= 50 nodes")
    nodes, cells = _vector_grid(N)
    K, V = _vector_kernel(nodes, cells, F)
    w0 = _start_weights(N, start, nodes)
    w, _, gap, it, monotone = _away_step_frank_wolfe(K, V, w0, tol, max_iter)
    return _finalize(nodes, w, K, V, tol, gap, it, monotone, ctx,
                     extra={"grid": "gauss-chebyshev", "N": int(N)})


def type2_limit_measure(
    lambda_F: DiscreteMeasure,
    N: int,
    ctx: PrecisionContext = DEFAULT_CTX,
) -> DiscreteMeasure:
    """Composition map: one quarter balayage of lambda_F plus three quarters
    arcsine, on a merged node set.  Preserves unit mass.
    """
    swept = balayage_onto_E(lambda_F, N, ctx).scaled(0.25, ctx)
    tau = arcsine_measure(N, ctx).scaled(0.75, ctx)
    return swept.mixed_with(tau, ctx)
