"""
Dense matrices of the covariant maps and invariant states.

Matrices are complex128 numpy arrays. Bipartite operators act on ℂ^d⊗ℂ^d with
the first factor as the slow index, so |ij⟩ is basis vector i·d+j. Unless a
skew-symmetric unitary V is passed, V = Ω = [[0,I],[−I,0]].
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np
from scipy import linalg

from classification.exceptions import (
    BadDimension,
    NotHermitian,
    NotSkewUnitary,
    NotUnitTrace,
    ShapeMismatch,
)
from classification.rational import RationalPoint2, as_fraction, check_dimension, point

from . import conf

logger = logging.getLogger(__name__)

SSBAR = 'SSbar'
SS = 'SS'
FAMILIES = (SSBAR, SS)


class CanonicalMatrices(NamedTuple):
    omega: np.ndarray
    max_ent: np.ndarray
    max_ent_omega: np.ndarray
    flip: np.ndarray
    flip_omega: np.ndarray


@dataclass(frozen=True)
class SpectrumTriple:
    lambdas: tuple
    multiplicities: tuple

    @property
    def minimum(self):
        return min(self.lambdas)

    def trace(self):
        return sum(lam * m for lam, m in zip(self.lambdas, self.multiplicities))

    def sorted_values(self):
        """Every eigenvalue with multiplicity, ascending, as floats."""
        values = []
        for lam, m in zip(self.lambdas, self.multiplicities):
            values.extend([float(lam)] * m)
        return np.sort(np.array(values))


def _frozen(array):
    array.setflags(write=False)
    return array


def omega_matrix(d):
    if d < 2 or d % 2:
        raise BadDimension(f'symplectic form needs an even dimension, got d={d}')
    n = d // 2
    omega = np.zeros((d, d), dtype=complex)
    omega[:n, n:] = np.eye(n)
    omega[n:, :n] = -np.eye(n)
    return omega


def flip_matrix(d):
    flip = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            flip[i * d + j, j * d + i] = 1
    return flip


def max_ent_vector(d):
    vec = np.zeros(d * d, dtype=complex)
    vec[[i * d + i for i in range(d)]] = 1 / np.sqrt(d)
    return vec


def local(V):
    """I⊗V."""
    return np.kron(np.eye(V.shape[0]), V)


def twisted_flip(V):
    """F^V = (I⊗V)F(I⊗V)*."""
    W = local(V)
    return W @ flip_matrix(V.shape[0]) @ W.conj().T


@lru_cache(maxsize=None)
def canonical_matrices(d):
    check_dimension(d)
    omega = omega_matrix(d)
    max_ent = max_ent_vector(d)
    return CanonicalMatrices(
        omega=_frozen(omega),
        max_ent=_frozen(max_ent),
        max_ent_omega=_frozen(local(omega) @ max_ent),
        flip=_frozen(flip_matrix(d)),
        flip_omega=_frozen(twisted_flip(omega)),
    )


def check_skew_unitary(V, tol=None):
    tol = conf.structural_tol() if tol is None else tol
    V = np.asarray(V, dtype=complex)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise NotSkewUnitary(f'expected a square matrix, got shape {V.shape}')
    d = V.shape[0]
    unitary_residual = np.linalg.norm(V.conj().T @ V - np.eye(d))
    skew_residual = np.linalg.norm(V + V.T)
    if unitary_residual > tol or skew_residual > tol:
        raise NotSkewUnitary(
            f'V is not a skew-symmetric unitary (unitarity {unitary_residual:.3g}, skewness {skew_residual:.3g})'
        )
    return V


def _form(d, V):
    if V is None:
        return canonical_matrices(d).omega
    V = check_skew_unitary(V)
    if V.shape[0] != d:
        raise ShapeMismatch(f'V is {V.shape[0]}×{V.shape[0]}, expected {d}×{d}')
    return V


@dataclass(frozen=True, eq=False)
class MapParams:
    """L_{p,q}: Z ↦ (1−p−q)·Tr(Z)/d·I + pZ + qVZᵀV*."""
    d: int
    p: object
    q: object
    V: Optional[np.ndarray] = None

    def __post_init__(self):
        check_dimension(self.d)
        if self.V is not None:
            object.__setattr__(self, 'V', _form(self.d, self.V))

    @classmethod
    def at(cls, d, pt, V=None):
        pt = point(pt)
        return cls(d, pt.x, pt.y, V)

    @property
    def form(self):
        return _form(self.d, self.V)

    @property
    def floats(self):
        return float(self.p), float(self.q)


def _square_of(d, X, name='matrix'):
    X = np.asarray(X, dtype=complex)
    if X.shape != (d, d):
        raise ShapeMismatch(f'{name} has shape {X.shape}, expected ({d}, {d})')
    return X


def bipartite_dimension(X):
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ShapeMismatch(f'expected a square matrix, got shape {X.shape}')
    d = int(round(np.sqrt(X.shape[0])))
    if d * d != X.shape[0]:
        raise ShapeMismatch(f'{X.shape[0]} is not the square of a local dimension')
    return d


def apply_map(params, Z):
    d = params.d
    Z = _square_of(d, Z, 'input')
    p, q = params.floats
    V = params.form
    return (1 - p - q) * np.trace(Z) / d * np.eye(d) + p * Z + q * V @ Z.T @ V.conj().T


def rho_state(d, a, b, V=None):
    """ρ_{a,b} = (1−a−b)/d²·I + a|ω⟩⟨ω| + (b/d)F^V; the Choi matrix of L_{a,b}."""
    check_dimension(d)
    a, b = float(a), float(b)
    omega = canonical_matrices(d).max_ent
    flip_v = canonical_matrices(d).flip_omega if V is None else twisted_flip(_form(d, V))
    return (1 - a - b) / d**2 * np.eye(d * d) + a * np.outer(omega, omega.conj()) + b / d * flip_v


def choi_of_map(params):
    """(id⊗L)(|ω⟩⟨ω|), assembled block by block."""
    d = params.d
    choi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d), dtype=complex)
            unit[i, j] = 1
            choi[i * d:(i + 1) * d, j * d:(j + 1) * d] = apply_map(params, unit) / d
    return choi


def _multiplicities(d):
    return 1, (d * d + d) // 2, (d * d - d - 2) // 2


def spectrum_rho(d, a, b):
    """Eigenvalues of ρ_{a,b} on |ω⟩⟨ω|, (I+F^Ω)/2 and (I−F^Ω)/2−|ω⟩⟨ω|. Exact for rational inputs."""
    check_dimension(d)
    if isinstance(a, float) or isinstance(b, float):
        c = (1 - a - b) / d**2
    else:
        a, b = as_fraction(a), as_fraction(b)
        c = (1 - a - b) / Fraction(d * d)
    return SpectrumTriple((c + a - b / d, c + b / d, c - b / d), _multiplicities(d))


def ppt_spectrum(d, a, b):
    """Eigenvalues of ρ_{a,b}^Γ on the S⊗S projections |ω^Ω⟩⟨ω^Ω|, (I+F)/2, (I−F)/2−|ω^Ω⟩⟨ω^Ω|."""
    check_dimension(d)
    a, b = as_fraction(a), as_fraction(b)
    c = (1 - a - b) / Fraction(d * d)
    return SpectrumTriple((c + b - a / d, c + a / d, c - a / d), _multiplicities(d))


def partial_transpose(X):
    """Transpose of the second tensor factor."""
    d = bipartite_dimension(X)
    return np.asarray(X).reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)


def partial_trace_second(X):
    """ρ_A: the second factor traced out."""
    d = bipartite_dimension(X)
    return np.einsum('ikjk->ij', np.asarray(X).reshape(d, d, d, d))


def compose_params(ab, pq):
    """L_{a,b}∘L_{p,q} = L_{ap+bq, aq+bp}."""
    a, b = point(ab)
    p, q = point(pq)
    return RationalPoint2(a * p + b * q, a * q + b * p)


@lru_cache(maxsize=None)
def _projections(d, family):
    check_dimension(d)
    if family not in FAMILIES:
        raise ValueError(f'unknown projection family {family!r}')
    mats = canonical_matrices(d)
    identity = np.eye(d * d)
    if family == SSBAR:
        vec, flip = mats.max_ent, mats.flip_omega
    else:
        vec, flip = mats.max_ent_omega, mats.flip
    rank_one = np.outer(vec, vec.conj())
    return tuple(_frozen(P) for P in (rank_one, (identity + flip) / 2, (identity - flip) / 2 - rank_one))


def projections(d, family=SSBAR):
    return _projections(d, family)


def hermitian_eigvalsh(X, tol=None):
    """Eigenvalues of (X+X*)/2 after checking ‖X−X*‖_F is within tolerance."""
    tol = conf.eigen_tol() if tol is None else tol
    X = np.asarray(X, dtype=complex)
    asymmetry = np.linalg.norm(X - X.conj().T)
    if asymmetry > tol:
        raise NotHermitian(f'matrix is not Hermitian (‖X−X*‖ = {asymmetry:.3g})')
    return linalg.eigvalsh((X + X.conj().T) / 2)


def min_eigenvalue(X, tol=None):
    return float(hermitian_eigvalsh(X, tol)[0])


def _check_unit_trace(rho):
    trace = np.trace(rho)
    if abs(trace - 1) > conf.eigen_tol():
        raise NotUnitTrace(f'trace is {trace:.12g}, expected 1')


def state_params_of(rho, V=None):
    """(a,b) of the invariant state that twirling ρ produces."""
    d = bipartite_dimension(rho)
    check_dimension(d)
    rho = np.asarray(rho, dtype=complex)
    _check_unit_trace(rho)
    omega = canonical_matrices(d).max_ent
    flip_v = canonical_matrices(d).flip_omega if V is None else twisted_flip(_form(d, V))
    flip_weight = np.trace(flip_v @ rho).real
    omega_weight = np.vdot(omega, rho @ omega).real
    den = d * d - d - 2
    a = (-1 + flip_weight + (d * d - d) * omega_weight) / den
    b = (-1 + (d - 1) * flip_weight + d * omega_weight) / den
    return a, b


def twirl_analytic(rho, family=SSBAR):
    d = bipartite_dimension(rho)
    rho = np.asarray(rho, dtype=complex)
    twirled = np.zeros_like(rho)
    for P in projections(d, family):
        rank = np.trace(P).real
        twirled += np.trace(P @ rho) / rank * P
    return twirled


def kbre_matrix(rho, k, V=None):
    """
    k(ρ_A⊗I) − ρ − k(I⊗V)ρ^Γ(I⊗V)* and its minimum eigenvalue. A negative
    eigenvalue rules out Schmidt number ≤ k.
    """
    d = bipartite_dimension(rho)
    check_dimension(d)
    rho = np.asarray(rho, dtype=complex)
    W = local(_form(d, V))
    matrix = (k * np.kron(partial_trace_second(rho), np.eye(d)) - rho
              - k * W @ partial_transpose(rho) @ W.conj().T)
    return matrix, min_eigenvalue(matrix)


def congruence_to_omega(V, tol=1e-10):
    """
    Unitary U with UᵀVU = Ω.

    Greedy pairing: each new unit vector u is taken from the orthogonal
    complement of the columns found so far and paired with w = V*ū. The
    complement is invariant under x ↦ V*x̄, so w stays in it.
    """
    V = check_skew_unitary(V, tol)
    d = V.shape[0]
    if d % 2:
        raise NotSkewUnitary(f'skew-symmetric unitaries only exist in even dimension, got {d}')
    n = d // 2
    firsts, partners = [], []
    basis = np.zeros((d, 0), dtype=complex)
    for _ in range(n):
        # standard basis vector with the largest component in the complement
        residuals = np.eye(d, dtype=complex) - basis @ (basis.conj().T)
        column = int(np.argmax(np.linalg.norm(residuals, axis=0)))
        u = residuals[:, column]
        u = u - basis @ (basis.conj().T @ u)
        u /= np.linalg.norm(u)
        w = V.conj().T @ u.conj()
        firsts.append(u)
        partners.append(w)
        basis = np.column_stack([basis, u, w])
    U = np.column_stack(firsts + partners)
    omega = omega_matrix(d)
    residual = np.linalg.norm(U.T @ V @ U - omega)
    if residual > tol:
        raise NotSkewUnitary(f'congruence residual {residual:.3g} exceeds {tol:g}')
    return U


def equivalence_unitary(V):
    """U with Ad_{U*}∘L^V∘Ad_U = L^Ω, i.e. U*VŪ = Ω."""
    V = check_skew_unitary(V)
    return congruence_to_omega(V.conj())
