"""Finite de Finetti bounds and the explicit extendible family.

For a (k1, k2)-extendible Gaussian state on n_A + n_B modes, with
T = (2/sqrt(k1 k2)) min(n_A, n_B, sqrt(k1 k2)):

    ||ρ - SEP||_1        <= T
    E_R(ρ)  (bits)       <= (n_A + n_B) T / 2 + h(T/2)
    E_sq(ρ) (bits)       <= (n_A + n_B) T / 4 + h(T/2) / 2

The two-mode family M(k1, k2) built from a Bell pair through per-side
transmissivity-1/k losses realizes the scaling: distance to the
separable set is between 1/sqrt(k1 k2) and 2/sqrt(k1 k2).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from . import matalg
from .errors import OutOfRangeError, WrongSplitError
from .fgs import BipartiteCM, validate_cm

__all__ = [
    "DeFinettiReport",
    "binary_entropy",
    "definetti_bounds",
    "trace_upper_from_cm",
    "lower_bound_two_mode",
    "family_cm",
    "family_spectrum",
    "epsilon_family",
    "bosonic_strategy_lower_bound",
]


@dataclass(frozen=True)
class DeFinettiReport:
    t: float
    trace_upper: float
    er_upper: float
    esq_upper: float
    trace_lower: Optional[float] = None
    family_params: Optional[tuple] = None


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0 exactly."""
    if not 0.0 <= x <= 1.0:
        raise OutOfRangeError(f"binary entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def definetti_bounds(n_a: int, n_b: int, k1: int, k2: int) -> DeFinettiReport:
    """Evaluate the three closure bounds for given mode counts and (k1, k2).

    T is clamped at 2 (trace distance can never exceed it), which the
    min(..., sqrt(k1 k2)) term implements exactly.
    """
    if min(n_a, n_b, k1, k2) < 1:
        raise OutOfRangeError("mode counts and extension orders must be positive")
    root = math.sqrt(k1 * k2)
    t = 2.0 * min(n_a, n_b, root) / root
    er = 0.5 * (n_a + n_b) * t + binary_entropy(t / 2.0)
    esq = 0.25 * (n_a + n_b) * t + 0.5 * binary_entropy(t / 2.0)
    return DeFinettiReport(t=t, trace_upper=t, er_upper=er, esq_upper=esq,
                           family_params=(k1, k2))


def trace_upper_from_cm(b: BipartiteCM) -> float:
    """||X||_1: the trace-norm bound on the distance to the marginal product."""
    return matalg.norms(b.block_x)[1]


def _opnorm_shifted(m: np.ndarray, a: float, b: float):
    """Closed-form operator norm of M - blockdiag(a J, b J) for a 2+2 split."""
    k01 = m[0, 1] - a
    k23 = m[2, 3] - b
    k02, k03, k12, k13 = m[0, 2], m[0, 3], m[1, 2], m[1, 3]
    s = k01 * k01 + k23 * k23 + k02 * k02 + k03 * k03 + k12 * k12 + k13 * k13
    pf = k01 * k23 - k02 * k13 + k03 * k12
    disc = np.maximum((0.5 * s) ** 2 - pf * pf, 0.0)
    return np.sqrt(np.maximum(0.5 * s + np.sqrt(disc), 0.0))


def lower_bound_two_mode(b: BipartiteCM, grid: int = 201) -> float:
    """inf over separable CMs diag(aJ, bJ), |a|,|b| <= 1 of ||M - M_sep||_op.

    Separable fermionic states have block-diagonal covariance matrices,
    so this infimum lower-bounds the trace distance to the separable
    set. Grid scan plus a simplex refinement of the closed-form 4x4
    eigenvalue expression; the objective is convex in (a, b).
    """
    if b.n_a != 1 or b.n_b != 1:
        raise WrongSplitError("closed-form lower bound needs one mode per side")
    m = b.mat
    axis = np.linspace(-1.0, 1.0, grid)
    aa, bb = np.meshgrid(axis, axis, indexing="ij")
    values = _opnorm_shifted(m, aa, bb)
    i, j = np.unravel_index(np.argmin(values), values.shape)
    best_grid = float(values[i, j])

    def objective(t):
        return float(_opnorm_shifted(m, min(max(t[0], -1.0), 1.0),
                                     min(max(t[1], -1.0), 1.0)))

    res = minimize(
        objective,
        np.array([axis[i], axis[j]]),
        method="Nelder-Mead",
        options=dict(xatol=1e-13, fatol=1e-14, maxfev=4000),
    )
    return min(best_grid, float(res.fun))


def family_cm(k1: int, k2: int) -> BipartiteCM:
    """The two-mode (k1, k2)-extendible state family.

    Entries: diagonal blocks ±(k_i - 1)/k_i, cross block antidiagonal
    1/sqrt(k1 k2). Always bona fide; (1, 1) is the Bell pair. Equals the
    per-side pure-loss construction on a Bell pair up to the per-mode
    Majorana swap γ_{2j-1} <-> γ_{2j}.
    """
    if k1 < 1 or k2 < 1:
        raise OutOfRangeError("family parameters must be positive integers")
    a = (k1 - 1.0) / k1
    c = (k2 - 1.0) / k2
    x = 1.0 / math.sqrt(k1 * k2)
    m = np.array(
        [
            [0.0, a, 0.0, x],
            [-a, 0.0, x, 0.0],
            [0.0, -x, 0.0, c],
            [-x, 0.0, -c, 0.0],
        ]
    )
    return BipartiteCM(validate_cm(matalg.AntisymmetricMatrix(m)), 1, 1)


def family_spectrum(k1: int, k2: int) -> np.ndarray:
    """Spectrum of i M(k1, k2) in closed form, ascending.

    With a = (k1-1) sqrt(k2/k1), b = (k2-1) sqrt(k1/k2) the scaled matrix
    has eigenvalue moduli r with r² = (a²+b²)/2 + 1 ± |a-b| sqrt((a+b)²+4)/2;
    dividing by sqrt(k1 k2) gives the spectrum {±r_1, ±r_2}.
    """
    if k1 < 1 or k2 < 1:
        raise OutOfRangeError("family parameters must be positive integers")
    a = (k1 - 1.0) * math.sqrt(k2 / k1)
    b = (k2 - 1.0) * math.sqrt(k1 / k2)
    half = 0.5 * (a * a + b * b) + 1.0
    shift = 0.5 * abs(a - b) * math.sqrt((a + b) ** 2 + 4.0)
    r1 = math.sqrt(half + shift)
    r2 = math.sqrt(max(half - shift, 0.0))
    scale = math.sqrt(k1 * k2)
    return np.array([-r1, -r2, r2, r1]) / scale


def epsilon_family(eps: float) -> BipartiteCM:
    """A pure two-mode state at trace distance <= ε from separable.

    Diagonal blocks sqrt(1 - (ε/2)²) J, cross block diag(ε/2, -ε/2); the
    sign split keeps C² = -I (purity, hence bona fide) for all ε in
    (0, 2]. Both (1,2) and (2,1) extendibility fail by the column-sum
    bound: the relevant row sum is 1 + ε²/4.
    """
    if not 0.0 < eps <= 2.0:
        raise OutOfRangeError(f"epsilon {eps} outside (0, 2]")
    a = math.sqrt(1.0 - (eps / 2.0) ** 2)
    x = eps / 2.0
    m = np.array(
        [
            [0.0, a, x, 0.0],
            [-a, 0.0, 0.0, -x],
            [-x, 0.0, 0.0, a],
            [0.0, x, -a, 0.0],
        ]
    )
    return BipartiteCM(validate_cm(matalg.AntisymmetricMatrix(m)), 1, 1)


def bosonic_strategy_lower_bound(k1: int, k2: int) -> float:
    """Overlap-based lower bound on distance to separable states.

    Equals overlap(M(k1,k2), M(1,1)) - 1/2 in closed form; for k1 = k2 = k
    this is 1/(2k²), strictly weaker than the tight 1/k bound.
    """
    if k1 < 1 or k2 < 1:
        raise OutOfRangeError("parameters must be positive integers")
    ov = 0.25 * ((2.0 * k1 * k2 - k1 - k2 + 2.0) / (k1 * k2)
                 + 2.0 / math.sqrt(k1 * k2))
    return ov - 0.5
