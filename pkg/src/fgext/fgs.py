"""Fermionic Gaussian states as Majorana covariance matrices.

A state on n modes is represented by its real antisymmetric 2n x 2n
covariance matrix M with entries M_pq = Tr(i γ_p γ_q ρ) for p < q.
Physicality (bona fide) means spec(iM) ⊆ [-1, 1], i.e. I + iM >= 0.
Canonical eigenvalues λ_j ∈ [-1, 1] fix the full spectrum of ρ, so
entropies, overlaps, and the quadratic Hamiltonian are all functions of
the canonical form.
"""

import math

import numpy as np

from . import matalg
from .config import EPS_PSD
from .errors import (
    DimensionMismatchError,
    InvalidParameterError,
    NegativeDeterminantError,
    NotBonaFideError,
    SingularStateError,
    WrongSplitError,
)

__all__ = [
    "CovarianceMatrix",
    "BipartiteCM",
    "validate_cm",
    "vacuum_cm",
    "bell_cm",
    "epr_cm",
    "single_mode_cm",
    "standard_state",
    "marginal",
    "product_cm",
    "overlap",
    "gaussian_entropy",
    "mutual_information",
    "e_cq",
    "hamiltonian_from_cm",
    "check_parity_superselection_cm",
]


class CovarianceMatrix:
    """A bona fide covariance matrix plus its mode count."""

    __slots__ = ("body", "modes")

    def __init__(self, body: matalg.AntisymmetricMatrix, modes: int):
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "modes", modes)

    def __setattr__(self, name, value):
        raise AttributeError("CovarianceMatrix is immutable")

    @property
    def mat(self) -> np.ndarray:
        return self.body.mat

    def __repr__(self):
        return f"CovarianceMatrix(modes={self.modes})"


class BipartiteCM:
    """A covariance matrix with a declared (n_A, n_B) mode split.

    Block layout: mat = [[M_A, X], [-X^T, M_B]] with M_A on the first
    2 n_A Majorana indices.
    """

    __slots__ = ("cm", "n_a", "n_b")

    def __init__(self, cm: CovarianceMatrix, n_a: int, n_b: int):
        if n_a + n_b != cm.modes:
            raise WrongSplitError(
                f"split ({n_a}, {n_b}) does not add up to {cm.modes} modes"
            )
        if n_a < 1 or n_b < 1:
            raise WrongSplitError("both sides of the split need at least one mode")
        object.__setattr__(self, "cm", cm)
        object.__setattr__(self, "n_a", n_a)
        object.__setattr__(self, "n_b", n_b)

    def __setattr__(self, name, value):
        raise AttributeError("BipartiteCM is immutable")

    @property
    def mat(self) -> np.ndarray:
        return self.cm.mat

    @property
    def block_a(self) -> np.ndarray:
        d = 2 * self.n_a
        return self.mat[:d, :d]

    @property
    def block_b(self) -> np.ndarray:
        d = 2 * self.n_a
        return self.mat[d:, d:]

    @property
    def block_x(self) -> np.ndarray:
        d = 2 * self.n_a
        return self.mat[:d, d:]

    def __repr__(self):
        return f"BipartiteCM(n_a={self.n_a}, n_b={self.n_b})"


def validate_cm(k, eps_psd: float = EPS_PSD) -> CovarianceMatrix:
    """Accept K as a covariance matrix iff I + iK >= -eps_psd.

    Raises:
        NotBonaFideError: reporting the violating spectral radius of iK.
    """
    if not isinstance(k, matalg.AntisymmetricMatrix):
        k = matalg.antisymmetrize(k)
    d = k.dim
    low, ok = matalg.realify_psd_check(np.eye(d), k.mat, eps_psd)
    if not ok:
        radius = 1.0 - low
        raise NotBonaFideError(
            f"spectrum of iM reaches {radius:.12g} > 1 (min eig of I+iM is {low:.3e})",
            violating_eigenvalue=radius,
        )
    return CovarianceMatrix(k, d // 2)


def _direct_sum(*mats: np.ndarray) -> np.ndarray:
    total = sum(m.shape[0] for m in mats)
    out = np.zeros((total, total))
    pos = 0
    for m in mats:
        d = m.shape[0]
        out[pos : pos + d, pos : pos + d] = m
        pos += d
    return out


_VACUUM_BLOCK = np.array([[0.0, -1.0], [1.0, 0.0]])

_BELL_SIGNS = {
    "phi+": (1.0, 1.0),
    "phi-": (-1.0, -1.0),
    "psi+": (-1.0, 1.0),
    "psi-": (1.0, -1.0),
}


def vacuum_cm(n: int) -> CovarianceMatrix:
    """Fock vacuum on n modes: direct sum of [[0, -1], [1, 0]]."""
    if n < 1:
        raise InvalidParameterError("need at least one mode")
    return validate_cm(matalg.AntisymmetricMatrix(_direct_sum(*([_VACUUM_BLOCK] * n))))


def single_mode_cm(lam: float) -> CovarianceMatrix:
    """One-mode state [[0, λ], [-λ, 0]]; λ = -1 is the vacuum, λ = 0 maximally mixed."""
    if not -1.0 <= lam <= 1.0:
        raise InvalidParameterError(f"single-mode parameter {lam} outside [-1, 1]")
    return validate_cm(matalg.AntisymmetricMatrix(np.array([[0.0, lam], [-lam, 0.0]])))


def bell_cm(kind: str) -> BipartiteCM:
    """Two-mode Bell-state covariance matrix ('phi+', 'phi-', 'psi+', 'psi-')."""
    try:
        s14, s23 = _BELL_SIGNS[kind]
    except KeyError:
        raise InvalidParameterError(
            f"unknown Bell kind {kind!r}; expected one of {sorted(_BELL_SIGNS)}"
        ) from None
    m = np.zeros((4, 4))
    m[0, 3], m[3, 0] = s14, -s14
    m[1, 2], m[2, 1] = s23, -s23
    return BipartiteCM(validate_cm(matalg.AntisymmetricMatrix(m)), 1, 1)


def epr_cm(m: int) -> BipartiteCM:
    """Maximally entangled state of two m-mode registers: [[0, I], [-I, 0]]."""
    if m < 1:
        raise InvalidParameterError("need at least one mode per register")
    d = 2 * m
    body = np.block([[np.zeros((d, d)), np.eye(d)], [-np.eye(d), np.zeros((d, d))]])
    return BipartiteCM(validate_cm(matalg.AntisymmetricMatrix(body)), m, m)


def standard_state(kind: str, param=None):
    """Dispatch by name: vacuum(n), bell_*, epr(m), single_mode(λ)."""
    if kind == "vacuum":
        return vacuum_cm(int(param if param is not None else 1))
    if kind.startswith("bell_"):
        names = {"bell_phi_plus": "phi+", "bell_phi_minus": "phi-",
                 "bell_psi_plus": "psi+", "bell_psi_minus": "psi-"}
        if kind not in names:
            raise InvalidParameterError(f"unknown standard state {kind!r}")
        return bell_cm(names[kind])
    if kind == "epr":
        return epr_cm(int(param if param is not None else 1))
    if kind == "single_mode":
        if param is None:
            raise InvalidParameterError("single_mode requires a parameter")
        return single_mode_cm(float(param))
    raise InvalidParameterError(f"unknown standard state {kind!r}")


def marginal(b: BipartiteCM, side: str) -> CovarianceMatrix:
    """Reduced covariance matrix of side 'A' or 'B' (a principal submatrix)."""
    if side not in ("A", "B"):
        raise InvalidParameterError("side must be 'A' or 'B'")
    block = b.block_a if side == "A" else b.block_b
    return validate_cm(matalg.AntisymmetricMatrix(block.copy()))


def product_cm(m_a: CovarianceMatrix, m_b: CovarianceMatrix) -> BipartiteCM:
    """Block-diagonal covariance matrix of the product state (X = 0)."""
    body = _direct_sum(m_a.mat, m_b.mat)
    return BipartiteCM(
        validate_cm(matalg.AntisymmetricMatrix(body)), m_a.modes, m_b.modes
    )


def overlap(m1: CovarianceMatrix, m2: CovarianceMatrix) -> float:
    """State overlap tr(ρ1 ρ2) = sqrt(det((M1 M2 - I)/2)).

    Tiny negative determinants (>= -1e-12) are clamped to zero; anything
    lower signals an invalid input pair.
    """
    if m1.modes != m2.modes:
        raise DimensionMismatchError(
            f"mode mismatch: {m1.modes} vs {m2.modes}"
        )
    d = 2 * m1.modes
    det = float(np.linalg.det((m1.mat @ m2.mat - np.eye(d)) / 2.0))
    if det < -1e-12:
        raise NegativeDeterminantError(f"overlap determinant {det:.3e} < -1e-12")
    return math.sqrt(max(det, 0.0))


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def gaussian_entropy(m: CovarianceMatrix) -> float:
    """Von Neumann entropy in bits: S = Σ_j h((1 + λ_j)/2)."""
    lams = matalg.canonical_form(m.body).lambdas
    return float(sum(_binary_entropy((1.0 + lam) / 2.0) for lam in lams))


def mutual_information(b: BipartiteCM) -> float:
    """I(A;B) = S(A) + S(B) - S(AB) in bits."""
    s_a = gaussian_entropy(marginal(b, "A"))
    s_b = gaussian_entropy(marginal(b, "B"))
    s_ab = gaussian_entropy(b.cm)
    return s_a + s_b - s_ab


def e_cq(b: BipartiteCM) -> float:
    """Half the mutual information; vanishes exactly on product states."""
    return 0.5 * mutual_information(b)


def hamiltonian_from_cm(m: CovarianceMatrix) -> matalg.AntisymmetricMatrix:
    """Quadratic Hamiltonian h with tanh(h/2) = M.

    Raises:
        SingularStateError: if any |λ_j| >= 1 - 1e-12 (pure direction).
    """
    form = matalg.canonical_form(m.body)
    if np.any(np.abs(form.lambdas) >= 1.0 - 1e-12):
        worst = float(np.max(np.abs(form.lambdas)))
        raise SingularStateError(
            f"|lambda| reaches {worst:.12g}; quadratic Hamiltonian diverges"
        )
    h_form = matalg.CanonicalForm(form.rotation, 2.0 * np.arctanh(form.lambdas))
    return matalg.AntisymmetricMatrix(h_form.reconstruct())


def check_parity_superselection_cm(m: CovarianceMatrix) -> bool:
    """CM-level states always satisfy parity superselection.

    Exists for interface symmetry with the dense oracle's parity check.
    """
    return isinstance(m, CovarianceMatrix)
