"""
Seeded samplers for unitaries, symplectic unitaries and orthonormal frames.

Every sampler is a pure function of its dimensions and a 64-bit seed. Random
bits come from numpy's counter-based Philox generator; complex Gaussians are
produced by Box–Muller from consecutive uniform pairs (u₁ for the radius,
u₂ for the phase), filled in row-major order. Work split across tasks uses
derive_seed(seed, index) so results never depend on how it is split.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import qr

from classification.exceptions import BadDimension

from .operators import omega_matrix

SEED_MASK = (1 << 64) - 1


def derive_seed(seed, index):
    """Independent 64-bit seed for task `index` of a run seeded with `seed`."""
    state = np.random.SeedSequence([seed & SEED_MASK, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def generator(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed & SEED_MASK))


def complex_gaussians(rng, shape):
    """Standard complex normals (E|z|² = 1) by Box–Muller."""
    count = int(np.prod(shape))
    uniforms = rng.random(2 * count).reshape(count, 2)
    radius = np.sqrt(-np.log1p(-uniforms[:, 0]))
    phase = 2 * np.pi * uniforms[:, 1]
    return (radius * np.exp(1j * phase)).reshape(shape)


def ginibre(d, seed, cols=None):
    return complex_gaussians(generator(seed), (d, d if cols is None else cols))


def haar_unitary(d, seed):
    if d < 1:
        raise BadDimension(f'unitaries need d >= 1, got {d}')
    q, r = qr(ginibre(d, seed))
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def _theta(v):
    """Antiunitary partner x ↦ Ωᵀx̄; squares to −1 and is orthogonal to x."""
    n = v.shape[0] // 2
    return np.concatenate([-v[n:].conj(), v[:n].conj()])


def haar_symplectic(d, seed):
    """
    S unitary with SᵀΩS = Ω. Columns of the quaternionic Ginibre matrix
    [[A, B], [−B̄, Ā]] come in (x, θ(x)) pairs; Gram–Schmidt over the first
    block, projecting out both members of every earlier pair, keeps the pairing.
    """
    if d < 2 or d % 2:
        raise BadDimension(f'symplectic unitaries need an even d >= 2, got {d}')
    n = d // 2
    rng = generator(seed)
    A = complex_gaussians(rng, (n, n))
    B = complex_gaussians(rng, (n, n))
    firsts = np.vstack([A, -B.conj()])
    columns = []
    for j in range(n):
        v = firsts[:, j].copy()
        for e in columns:
            for basis in (e, _theta(e)):
                v -= np.vdot(basis, v) * basis
        columns.append(v / np.linalg.norm(v))
    return np.column_stack(columns + [_theta(e) for e in columns])


def random_skew_unitary(d, seed):
    """V = UΩUᵀ with U = haar_unitary(d, seed)."""
    if d % 2:
        raise BadDimension(f'skew-symmetric unitaries need an even d, got {d}')
    U = haar_unitary(d, seed)
    return U @ omega_matrix(d) @ U.T


@dataclass(frozen=True, eq=False)
class Frame:
    """k orthonormal vectors of ℂ^d as the columns of a d×k matrix."""
    d: int
    k: int
    columns: np.ndarray

    def gram_residual(self):
        return float(np.linalg.norm(self.columns.conj().T @ self.columns - np.eye(self.k)))

    def pairing_matrix(self, V=None):
        """B_ij = ⟨v_i|V v̄_j⟩; skew-symmetric."""
        V = omega_matrix(self.d) if V is None else V
        return self.columns.conj().T @ V @ self.columns.conj()

    def pairing_sum(self, V=None):
        """Σ_{i,j} |⟨v_i|V v̄_j⟩|²."""
        return float(np.sum(np.abs(self.pairing_matrix(V)) ** 2))

    @property
    def vectors(self):
        return [self.columns[:, j] for j in range(self.k)]


def _check_frame_size(d, k):
    if not 1 <= k <= d:
        raise BadDimension(f'a frame of {k} vectors does not fit in dimension {d}')


def random_frame(d, k, seed):
    _check_frame_size(d, k)
    return Frame(d, k, haar_unitary(d, seed)[:, :k])


def _basis_frame(d, indices):
    columns = np.zeros((d, len(indices)), dtype=complex)
    for j, index in enumerate(indices):
        columns[index, j] = 1
    return Frame(d, len(indices), columns)


def extremal_frames(d, k):
    """
    Frames attaining the extremes of the pairing sum: the max frame pairs e_j
    with e_{j+d/2} (2⌊k/2⌋), the min frame is e_1..e_k (max(2k−d, 0)).
    """
    _check_frame_size(d, k)
    if d % 2:
        raise BadDimension(f'extremal frames need an even d, got {d}')
    n = d // 2
    pairs = k // 2
    indices = []
    for j in range(pairs):
        indices.extend([j, j + n])
    if k % 2:
        indices.append(pairs)
    return {'max_frame': _basis_frame(d, indices), 'min_frame': _basis_frame(d, list(range(k)))}


def frame_bounds(d, k):
    return max(2 * k - d, 0), 2 * (k // 2)
