"""Dense Fock-space oracle for small mode counts.

Exact 2^n x 2^n density matrices built from covariance matrices through
a Jordan-Wigner Majorana representation; used as ground truth for the
Gaussian-formalism layer. This is the only module that touches complex
arithmetic.

The Majorana pair of mode j carries a string of -Z on the preceding
modes:

    γ_{2j-1} = (-Z)^(j-1) ⊗ X ⊗ I…,   γ_{2j} = (-Z)^(j-1) ⊗ Y ⊗ I…

which makes the two-point function reproduce M_pq = Tr(i γ_p γ_q ρ)
with the covariance-matrix conventions used across the package (the
vacuum block is [[0, -1], [1, 0]]).
"""

import functools
import itertools
import math

import numpy as np

from . import matalg
from .fgs import CovarianceMatrix, validate_cm
from .errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    OddSubsetError,
    TooManyModesError,
)

__all__ = [
    "MODE_CAP",
    "MajoranaSet",
    "DenseState",
    "jordan_wigner",
    "parity_operator",
    "state_from_cm",
    "cm_from_state",
    "trace_distance",
    "wick_check",
    "entropies",
    "dense_product",
]

#: Hard cap on dense mode count (4096-dimensional Fock space).
MODE_CAP = 12

_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class MajoranaSet:
    """The 2n Jordan-Wigner Majorana operators for n modes (read-only)."""

    __slots__ = ("n", "gammas")

    def __init__(self, n: int, gammas):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gammas", tuple(gammas))

    def __setattr__(self, name, value):
        raise AttributeError("MajoranaSet is immutable")


class DenseState:
    """An exact density matrix on the 2^n-dimensional Fock space."""

    __slots__ = ("n", "rho")

    def __init__(self, n: int, rho: np.ndarray, check: bool = True):
        rho = np.array(rho, dtype=complex)
        if check:
            _check_state(n, rho)
        rho.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rho", rho)

    def __setattr__(self, name, value):
        raise AttributeError("DenseState is immutable")

    def __repr__(self):
        return f"DenseState(n={self.n})"


def _check_state(n: int, rho: np.ndarray):
    dim = 2**n
    if rho.shape != (dim, dim):
        raise DimensionMismatchError(f"expected shape {(dim, dim)}, got {rho.shape}")
    if np.linalg.norm(rho - rho.conj().T) > 1e-10:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise ValueError(f"trace is {np.trace(rho).real!r}, expected 1")
    low = float(np.linalg.eigvalsh(rho)[0])
    if low < -1e-10:
        raise ValueError(f"negative eigenvalue {low:.3e}")
    p = parity_operator(n)
    if np.max(np.abs(p @ rho - rho @ p)) > 1e-10:
        raise ValueError("state does not commute with the parity operator")


def _require_modes(n: int):
    if not 1 <= n <= MODE_CAP:
        raise TooManyModesError(f"mode count {n} outside [1, {MODE_CAP}]")


@functools.lru_cache(maxsize=None)
def _jordan_wigner_cached(n: int):
    gammas = []
    for j in range(n):
        before = [-_PAULI_Z] * j
        after = [np.eye(2, dtype=complex)] * (n - j - 1)
        for letter in (_PAULI_X, _PAULI_Y):
            op = np.eye(1, dtype=complex)
            for factor in (*before, letter, *after):
                op = np.kron(op, factor)
            op.setflags(write=False)
            gammas.append(op)
    return tuple(gammas)


def jordan_wigner(n: int) -> MajoranaSet:
    """Hermitian Majorana operators with {γ_p, γ_q} = 2 δ_pq."""
    _require_modes(n)
    return MajoranaSet(n, _jordan_wigner_cached(n))


@functools.lru_cache(maxsize=None)
def parity_operator(n: int) -> np.ndarray:
    """(-1)^N as a diagonal matrix in the occupation basis."""
    _require_modes(n)
    signs = np.array([(-1) ** bin(b).count("1") for b in range(2**n)], dtype=complex)
    p = np.diag(signs)
    p.setflags(write=False)
    return p


def _state_from_canonical(rotation: np.ndarray, lambdas, n: int) -> np.ndarray:
    """Dense ρ = 2^-n Π_j (I + i λ_j γ̃_{2j-1} γ̃_{2j}), γ̃ = O^T γ.

    No physicality check; callers wanting a guaranteed state go through
    state_from_cm.
    """
    gammas = jordan_wigner(n).gammas
    dim = 2**n
    rho = np.eye(dim, dtype=complex)
    for j, lam in enumerate(lambdas):
        gt_odd = sum(rotation[q, 2 * j] * gammas[q] for q in range(2 * n))
        gt_even = sum(rotation[q, 2 * j + 1] * gammas[q] for q in range(2 * n))
        rho = rho @ (np.eye(dim) + 1j * lam * gt_odd @ gt_even)
    return rho / dim


def state_from_cm(m: CovarianceMatrix) -> DenseState:
    """Exact density matrix of the Gaussian state with covariance matrix M.

    Canonical eigenvalues are clipped into [-1, 1] after validation so
    boundary states reconstruct to genuinely positive matrices even when
    the covariance matrix carries an eps-sized physicality slack.
    """
    _require_modes(m.modes)
    form = matalg.canonical_form(m.body)
    lams = np.clip(form.lambdas, -1.0, 1.0)
    rho = _state_from_canonical(form.rotation, lams, m.modes)
    return DenseState(m.modes, rho)


def cm_from_state(state: DenseState) -> CovarianceMatrix:
    """Covariance matrix M_pq = Re Tr(i γ_p γ_q ρ) of a dense state."""
    gammas = jordan_wigner(state.n).gammas
    d = 2 * state.n
    m = np.zeros((d, d))
    rho_gammas = [state.rho @ g for g in gammas]
    for p in range(d):
        for q in range(p + 1, d):
            val = (1j * np.trace(gammas[q] @ rho_gammas[p])).real
            # tr(γ_p γ_q ρ) via cyclicity: tr(γ_q (ρ γ_p))
            m[p, q] = val
            m[q, p] = -val
    return validate_cm(matalg.AntisymmetricMatrix(m))


def trace_distance(a: DenseState, b: DenseState) -> float:
    """||ρ_a - ρ_b||_1, the sum of absolute eigenvalues of the difference."""
    if a.n != b.n:
        raise DimensionMismatchError(f"mode mismatch: {a.n} vs {b.n}")
    return float(np.sum(np.abs(np.linalg.eigvalsh(a.rho - b.rho))))


def wick_check(state: DenseState, m: CovarianceMatrix, idx) -> tuple:
    """(lhs, rhs) of the moment identity Tr(i^(|x|/2) γ(x) ρ) = Pf(M[x]).

    idx must be a strictly increasing, even-sized tuple of Majorana
    indices; for Gaussian states the two sides agree.
    """
    idx = tuple(idx)
    if len(idx) % 2 != 0:
        raise OddSubsetError(f"index subset {idx} has odd size")
    d = 2 * state.n
    if any(not 0 <= i < d for i in idx):
        raise IndexOutOfRangeError(f"indices {idx} outside [0, {d})")
    if list(idx) != sorted(set(idx)):
        raise IndexOutOfRangeError(f"indices {idx} must be strictly increasing")
    gammas = jordan_wigner(state.n).gammas
    op = np.eye(2**state.n, dtype=complex)
    for i in idx:
        op = op @ gammas[i]
    lhs = float((np.trace((1j) ** (len(idx) // 2) * op @ state.rho)).real)
    rhs = matalg.pfaffian(m.mat[np.ix_(idx, idx)]) if idx else 1.0
    return lhs, rhs


def _partial_trace_keep_prefix(rho: np.ndarray, n: int, keep: int) -> np.ndarray:
    da, db = 2**keep, 2 ** (n - keep)
    return np.einsum("ijkj->ik", rho.reshape(da, db, da, db))


def _partial_trace_keep_suffix(rho: np.ndarray, n: int, keep: int) -> np.ndarray:
    da, db = 2 ** (n - keep), 2**keep
    return np.einsum("ijik->jk", rho.reshape(da, db, da, db))


def _von_neumann_bits(rho: np.ndarray) -> float:
    eigs = np.linalg.eigvalsh(rho)
    eigs = eigs[eigs > 1e-14]
    return float(-np.sum(eigs * np.log2(eigs)))


def entropies(state: DenseState, split) -> tuple:
    """(S_A, S_B, S_AB, I_AB) in bits for a contiguous (n_A, n_B) split.

    A is the first n_A modes; the reduced states are plain partial traces
    in the occupation basis, which is the correct fermionic marginal for
    prefix/suffix mode sets.
    """
    n_a, n_b = split
    if n_a + n_b != state.n or n_a < 1 or n_b < 1:
        raise DimensionMismatchError(f"bad split {split} for {state.n} modes")
    rho_a = _partial_trace_keep_prefix(state.rho, state.n, n_a)
    rho_b = _partial_trace_keep_suffix(state.rho, state.n, n_b)
    s_a = _von_neumann_bits(rho_a)
    s_b = _von_neumann_bits(rho_b)
    s_ab = _von_neumann_bits(state.rho)
    return s_a, s_b, s_ab, s_a + s_b - s_ab


def reduced_state(state: DenseState, n_keep: int, side: str = "A") -> DenseState:
    """Dense marginal on the first (side='A') or last (side='B') n_keep modes."""
    if side == "A":
        rho = _partial_trace_keep_prefix(state.rho, state.n, n_keep)
    elif side == "B":
        rho = _partial_trace_keep_suffix(state.rho, state.n, n_keep)
    else:
        raise ValueError("side must be 'A' or 'B'")
    return DenseState(n_keep, rho)


def dense_product(a: DenseState, b: DenseState) -> DenseState:
    """Product state ρ_a ⊗ ρ_b in the occupation basis.

    Valid fermionically because both factors commute with their parity
    operators (DenseState invariant).
    """
    return DenseState(a.n + b.n, np.kron(a.rho, b.rho))
