"""Max-margin solver for antisymmetric linear matrix inequalities.

Solves problems of the form

    maximize  t
    s.t.      A_c + i (S_c + Σ_j coeff_cj · embed(Δ_j)) >= t I   for all c,

over real antisymmetric variable matrices Δ_j. Every constraint is
evaluated on the real symmetric embedding, so only real eigensolvers are
used. The objective f(Δ) = min_c λ_min(·) is concave, which makes any
local maximum global.

The search runs in two phases per start point: projected supergradient
ascent with Polyak-style steps toward an adaptive level, then a
derivative-free simplex polish that reliably finishes off the nonsmooth
valleys where first-order steps zigzag. Start points are tried in a
fixed order (caller-supplied warm start, zero, seeded perturbation), so
identical inputs produce identical results.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .config import RunConfig, DEFAULT_CONFIG
from .errors import SolverStalledError

__all__ = ["MatrixConstraint", "SolverOutcome", "max_margin"]


@dataclass(frozen=True)
class MatrixConstraint:
    """A_c + i K_c(Δ) >= t I with K_c(Δ) = skew_const + Σ coeff · embed(Δ_j).

    terms: tuple of (coeff, var_index, row_offset); the variable block is
    added to K_c at the given diagonal offset.
    """

    dim: int
    sym_part: np.ndarray
    skew_const: np.ndarray
    terms: tuple


@dataclass(frozen=True)
class SolverOutcome:
    margin: float
    deltas: tuple
    converged: bool
    iterations: int


def _skew_of(constraint, deltas):
    k = constraint.skew_const.copy()
    for coeff, var, off in constraint.terms:
        d = deltas[var].shape[0]
        k[off : off + d, off : off + d] += coeff * deltas[var]
    return k


def _margin_and_vec(constraint, deltas, want_vec):
    a = constraint.sym_part
    k = _skew_of(constraint, deltas)
    h = np.block([[a, -k], [k, a]])
    if not want_vec:
        return float(np.linalg.eigvalsh(h)[0]), None
    w, v = np.linalg.eigh(h)
    return float(w[0]), v[:, 0]


def _objective(constraints, deltas):
    return min(_margin_and_vec(c, deltas, False)[0] for c in constraints)


def _supergradient(constraints, deltas):
    """(f, grads) where grads maps var index -> dλ/dΔ over the active block."""
    margins = []
    vecs = []
    for c in constraints:
        m, v = _margin_and_vec(c, deltas, True)
        margins.append(m)
        vecs.append(v)
    active = int(np.argmin(margins))
    c = constraints[active]
    v = vecs[active]
    x, y = v[: c.dim], v[c.dim :]
    # For eigenvector x + iy of A + iK: dλ = -2 x^T dK y, so the gradient
    # with respect to the antisymmetric upper triangle of Δ_j is
    # coeff * (-2)(x_p y_q - x_q y_p) on the embedded block.
    full = -2.0 * np.outer(x, y)
    grads = {}
    for coeff, var, off in c.terms:
        d = deltas[var].shape[0]
        sub = full[off : off + d, off : off + d]
        g = coeff * (sub - sub.T)
        grads[var] = grads.get(var, 0.0) + g
    return margins[active], grads


def _polyak_phase(constraints, deltas, budget, stop_at):
    """Supergradient ascent with an adaptive Polyak level. Returns best point."""
    best = [m.copy() for m in deltas]
    f_best = _objective(constraints, best)
    if f_best >= stop_at or budget <= 0:
        return f_best, best, 0
    level_gap = max(0.05, -f_best * 0.5)
    since_improve = 0
    point = [m.copy() for m in deltas]
    it = 0
    while it < budget:
        f, grads = _supergradient(constraints, point)
        if f > f_best:
            f_best = f
            best = [m.copy() for m in point]
            since_improve = 0
            if f_best >= stop_at:
                break
        else:
            since_improve += 1
        gnorm_sq = sum(np.sum(np.triu(g, 1) ** 2) for g in grads.values())
        if gnorm_sq < 1e-300:
            break
        step = (f_best + level_gap - f) / gnorm_sq
        for var, g in grads.items():
            point[var] = point[var] + step * g
        if since_improve > 60:
            level_gap = level_gap / 2.0
            point = [m.copy() for m in best]
            since_improve = 0
            if level_gap < 1e-12:
                break
        it += 1
    return f_best, best, it


def _pack(deltas):
    return np.concatenate(
        [d[np.triu_indices(d.shape[0], 1)] for d in deltas]
    ) if deltas else np.zeros(0)


def _unpack(theta, dims):
    out = []
    pos = 0
    for d in dims:
        npar = d * (d - 1) // 2
        mat = np.zeros((d, d))
        iu = np.triu_indices(d, 1)
        mat[iu] = theta[pos : pos + npar]
        out.append(mat - mat.T)
        pos += npar
    return out


def _simplex_polish(constraints, dims, start, max_fev):
    """Nelder-Mead on the packed parameters; concavity makes this global."""
    theta0 = _pack(start)
    if theta0.size == 0:
        return _objective(constraints, start), start, True
    neg = lambda th: -_objective(constraints, _unpack(th, dims))
    best_f = -neg(theta0)
    best = start
    ok = False
    for _ in range(3):
        res = minimize(
            neg,
            _pack(best),
            method="Nelder-Mead",
            options=dict(xatol=1e-13, fatol=1e-14, maxfev=max_fev, maxiter=max_fev),
        )
        improved = -res.fun > best_f + 1e-15
        if -res.fun > best_f:
            best_f = -res.fun
            best = _unpack(res.x, dims)
        ok = ok or bool(res.success)
        if not improved:
            break
    return best_f, best, ok


def max_margin(constraints, var_dims, warm_start, config: RunConfig = DEFAULT_CONFIG):
    """Best achievable margin and witnesses for a list of matrix constraints.

    Args:
        constraints: MatrixConstraint list.
        var_dims: dimensions of the antisymmetric variables.
        warm_start: initial variable matrices (e.g. the state marginals).
        config: tolerances, iteration budget, seed.

    Raises:
        SolverStalledError: budget exhausted with the best margin inside
            the ambiguous band (-100 eps_feas, -eps_feas) or without a
            converged polish.
    """
    eps = config.eps_feas
    if not var_dims:
        margin = _objective(constraints, [])
        return SolverOutcome(margin, (), True, 0)

    rng = np.random.default_rng(config.seed)
    perturbed = [
        m + 1e-2 * rng.standard_normal(m.shape) for m in warm_start
    ]
    perturbed = [(m - m.T) / 2.0 for m in perturbed]
    starts = [warm_start, [np.zeros((d, d)) for d in var_dims], perturbed]

    budget = max(config.max_iters // 4, 200)
    polish_budget = max(config.max_iters // 3, 2000)
    best_margin = -np.inf
    best_deltas = warm_start
    any_converged = False
    total_iters = 0
    for start in starts:
        f1, point, used = _polyak_phase(
            constraints, start, budget, stop_at=-0.5 * eps
        )
        total_iters += used
        if f1 >= 0.0:
            return SolverOutcome(f1, tuple(point), True, total_iters)
        # boundary or infeasible: refine with the simplex stage (for
        # margins just below zero this sharpens the witness to ~1e-15)
        f2, point2, ok = _simplex_polish(constraints, var_dims, point, polish_budget)
        any_converged = any_converged or ok
        if f2 > best_margin:
            best_margin, best_deltas = f2, point2
        if best_margin >= -eps:
            return SolverOutcome(best_margin, tuple(best_deltas), True, total_iters)
        if ok and best_margin < -100.0 * eps:
            # solidly infeasible; no need to try more starts
            break
    if best_margin >= -eps:
        return SolverOutcome(best_margin, tuple(best_deltas), True, total_iters)
    if any_converged and best_margin < -100.0 * eps:
        return SolverOutcome(best_margin, tuple(best_deltas), True, total_iters)
    raise SolverStalledError(
        f"best margin {best_margin:.3e} lies in the ambiguous band "
        f"[{-100.0 * eps:.1e}, {-eps:.1e}) after {total_iters} iterations"
    )
