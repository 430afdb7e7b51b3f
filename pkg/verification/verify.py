"""
Numerical and exact cross-checks of the region geometry.

Each check returns a Verdict. Exact checks work on Fractions and never use a
tolerance; numerical ones compare minimum eigenvalues against a violation
tolerance and report the smallest margin seen.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from classification import families
from classification.exceptions import (
    BadDimension,
    BadIndex,
    EpsTooLarge,
    NotAState,
    ParamsOutsideRegion,
)
from classification.rational import RationalPoint2, as_fraction, check_dimension, check_index, point
from classification.regions import (
    boundary_sample,
    extreme_points,
    in_D,
    in_EB,
    in_P_k,
    in_S_k,
    in_T,
    schmidt_number,
    t_constraints,
    witness_points,
)

from . import conf
from .operators import (
    MapParams,
    apply_map,
    canonical_matrices,
    compose_params,
    min_eigenvalue,
    partial_transpose,
    rho_state,
    state_params_of,
    twirl_analytic,
)
from .sampling import derive_seed, extremal_frames, frame_bounds, generator, haar_symplectic, random_frame

logger = logging.getLogger(__name__)

# samples per partial sum; fixed so the summation order ignores the worker count
TWIRL_CHUNK = 256


@dataclass
class Verdict:
    suite: str
    d: int
    k: Optional[int] = None
    params: dict = field(default_factory=dict)
    passed: bool = True
    n_evaluations: int = 0
    min_margin: Optional[float] = None
    seed: Optional[int] = None
    runtime_ms: Optional[float] = None
    counterexample: Any = None
    details: dict = field(default_factory=dict)
    # headline results, reported next to `passed`
    summary: dict = field(default_factory=dict)

    def record(self, margin):
        self.n_evaluations += 1
        if self.min_margin is None or margin < self.min_margin:
            self.min_margin = float(margin)

    def fail(self, counterexample):
        if self.passed:
            self.passed = False
            self.counterexample = counterexample


class Stopwatch:
    def __enter__(self):
        self.started = time.perf_counter()
        return self

    def __exit__(self, *exc_info):
        self.elapsed_ms = (time.perf_counter() - self.started) * 1000


def run_chunks(func, items, jobs=1):
    """
    Map func over items with a thread pool. Results come back in item order,
    so min/and reductions over them do not depend on the number of workers.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _tol(tol):
    return conf.violation_tol() if tol is None else tol


# k-positivity through Tomiyama matrices

def tomiyama_matrix(params, frame):
    """C_k^v(L) = Σ_ij |i⟩⟨j| ⊗ L(|v_i⟩⟨v_j|), a kd×kd matrix."""
    d, k = params.d, frame.k
    if frame.d != d:
        raise BadDimension(f'frame lives in dimension {frame.d}, map in {d}')
    matrix = np.zeros((k * d, k * d), dtype=complex)
    vectors = frame.vectors
    for i, vi in enumerate(vectors):
        for j, vj in enumerate(vectors):
            matrix[i * d:(i + 1) * d, j * d:(j + 1) * d] = apply_map(params, np.outer(vi, vj.conj()))
    return matrix


def _frame_margin(params, frame):
    return min_eigenvalue(tomiyama_matrix(params, frame))


def kpos_numeric(d, k, pt, n_frames, seed, tol=None, jobs=1):
    """k-positivity of L_{p,q} from the extremal frames and n_frames Haar frames."""
    check_dimension(d)
    check_index(d, k)
    if n_frames < 1:
        raise ValueError('kpos_numeric needs at least one sampled frame')
    tol = _tol(tol)
    pt = point(pt)
    params = MapParams.at(d, pt)
    verdict = Verdict('kpos', d, k, params={'p': pt.x, 'q': pt.y, 'frames': n_frames, 'tol': tol}, seed=seed)
    frames = list(extremal_frames(d, k).values())
    margins = [_frame_margin(params, frame) for frame in frames]
    margins += run_chunks(
        lambda index: _frame_margin(params, random_frame(d, k, derive_seed(seed, index))),
        range(n_frames), jobs,
    )
    for index, margin in enumerate(margins):
        verdict.record(margin)
        if margin < -tol:
            frame = frames[index] if index < len(frames) else random_frame(d, k, derive_seed(seed, index - len(frames)))
            verdict.fail(frame.columns)
    return verdict


# exact six-condition system

@dataclass(frozen=True)
class SixConditionInput:
    d: int
    k: int
    p: Fraction
    q: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ('p', 'q', 's'):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not 0 <= self.s <= 1:
            raise ValueError(f's must lie in [0, 1], got {self.s}')


def six_conditions(cond):
    """Positivity of the Tomiyama matrix for a frame whose first pairing weight is s."""
    d, k, p, q, s = cond.d, cond.k, cond.p, cond.q, cond.s
    A = (1 - p - q) / d
    checks = [A + q >= 0]
    if k < d:
        checks.append(A >= 0)
    if k > 2:
        checks.append(A - q >= 0)
    checks.extend([
        A - q + k * p * s >= 0,
        A + k * p - k * p * s >= 0,
        (A - q) * (A + k * p) + k * p * q * s >= 0,
    ])
    return all(checks)


def extremal_weights(d, k):
    """The two extreme values of s, reached by the extremal frames."""
    low, high = frame_bounds(d, k)
    return Fraction(high, k), Fraction(low, k)


def six_conditions_hold(d, k, pt):
    p, q = point(pt)
    return all(six_conditions(SixConditionInput(d, k, p, q, s)) for s in extremal_weights(d, k))


# witness pairings

def witness_pairing(d, ab, pq):
    """Tr(ρ_{a,b}ρ_{p,q}), exact."""
    a, b = point(ab)
    p, q = point(pq)
    return (1 - (a + b) * (p + q)) / (d * d) + a * p + b * q - (a * q + b * p) / d


def pairing_dense(d, ab, pq):
    a, b = point(ab)
    p, q = point(pq)
    return float(np.trace(rho_state(d, a, b) @ rho_state(d, p, q)).real)


@dataclass(frozen=True)
class SnCertificate:
    sn: int
    violating_witness: Optional[RationalPoint2] = None


def sn_certificate(d, ab, n=None):
    """
    Schmidt number of ρ_{a,b} with a witness from ext(ℙ_{sn−1}) that pairs
    negatively with it. Vertices are tried first, then exact points on the
    curved parts of the extreme set.
    """
    check_dimension(d)
    ab = point(ab)
    if not in_P_k(d, d, ab):
        raise NotAState(f'{ab} does not define a state for d={d}')
    sn = schmidt_number(d, ab)
    if sn == 1:
        return SnCertificate(1)
    n = conf.curve_samples() if n is None else n
    for samples in (n, 4096):
        for witness in witness_points(d, sn - 1, samples):
            if witness_pairing(d, ab, witness) < 0:
                return SnCertificate(sn, witness)
    logger.warning('no sampled witness of ext(P_%s) separates %s for d=%s', sn - 1, ab, d)
    return SnCertificate(sn)


def witness_duality(d, pt, n=None):
    """1 + the largest k whose sampled extreme witnesses detect the state."""
    n = conf.curve_samples() if n is None else n
    detected = 0
    for k in range(1, d):
        if any(witness_pairing(d, pt, w) < 0 for w in witness_points(d, k, n)):
            detected = k
    return detected + 1


# Monte-Carlo twirl

def symplectic_conjugation(S, rho):
    W = np.kron(S, S.conj())
    return W @ rho @ W.conj().T


def twirl_mc_check(d, rho, n, seed, jobs=1):
    if n < 100:
        raise ValueError(f'twirl_mc_check needs n >= 100, got {n}')
    rho = np.asarray(rho, dtype=complex)
    indices = list(range(n))
    groups = [indices[start:start + TWIRL_CHUNK] for start in range(0, n, TWIRL_CHUNK)]

    def partial_sum(group):
        total = np.zeros_like(rho)
        for index in group:
            total += symplectic_conjugation(haar_symplectic(d, derive_seed(seed, index)), rho)
        return total

    empirical = sum(run_chunks(partial_sum, groups, jobs)) / n
    analytic = twirl_analytic(rho)
    error = float(np.linalg.norm(empirical - analytic))
    bound = 5 / np.sqrt(n)
    verdict = Verdict('twirl', d, params={'samples': n}, seed=seed, n_evaluations=n)
    verdict.min_margin = float(bound - error)
    verdict.details = {'frobenius_error': error, 'bound': float(bound)}
    if abs(np.trace(rho) - 1) <= conf.eigen_tol():
        verdict.details['empirical_params'] = [float(x) for x in state_params_of(empirical)]
        verdict.details['state_params'] = [float(x) for x in state_params_of(rho)]
    if error > bound:
        verdict.fail(empirical)
    return verdict


# PPT² and positive × PPT compositions

def _bounding_box(vertices):
    xs = [v.x for v in vertices]
    ys = [v.y for v in vertices]
    return min(xs), max(xs), min(ys), max(ys)


def sample_region_point(rng, vertices, member, resolution=4096):
    """Rejection sample of a rational point with denominator `resolution` in a convex region."""
    x0, x1, y0, y1 = _bounding_box(vertices)
    lo_x, hi_x = int(np.floor(x0 * resolution)), int(np.ceil(x1 * resolution))
    lo_y, hi_y = int(np.floor(y0 * resolution)), int(np.ceil(y1 * resolution))
    while True:
        candidate = RationalPoint2(
            Fraction(int(rng.integers(lo_x, hi_x + 1)), resolution),
            Fraction(int(rng.integers(lo_y, hi_y + 1)), resolution),
        )
        if member(candidate):
            return candidate


def pptsq_scan(d, n_pairs, seed, variant='ppt'):
    """
    Compose sampled pairs and check where the composite lands: two PPT
    points compose into 𝕊₁; a positive point after a PPT point lands in 𝔻.
    """
    check_dimension(d)
    if variant not in ('ppt', 'positive'):
        raise ValueError(f'unknown variant {variant!r}')
    rng = generator(seed)
    ppt_vertices = boundary_sample(d, 'T', 8)
    ppt_member = lambda pt: in_T(d, pt)
    if variant == 'ppt':
        first_vertices, first_member, target, target_name = ppt_vertices, ppt_member, in_EB, 'S1'
    else:
        first_vertices = extreme_points(d, 1).vertices
        first_member = lambda pt: in_P_k(d, 1, pt)
        target, target_name = in_D, 'D'
    verdict = Verdict('pptsq', d, params={'pairs': n_pairs, 'variant': variant}, seed=seed)
    bound_holds = Fraction(4, (d + 2) ** 2) < Fraction(1, d + 1)
    verdict.details = {'target': target_name, 'bound_4_over_d_plus_2_squared': bound_holds}
    if not bound_holds:
        verdict.fail({'bound': 'violated'})
    boundary = families.pv_point(d)
    boundary_composite = compose_params(boundary, boundary)
    verdict.details['boundary_composite'] = [boundary_composite.x, boundary_composite.y]
    if variant == 'ppt' and not in_EB(d, boundary_composite):
        verdict.fail({'ab': boundary, 'pq': boundary})
    for _ in range(n_pairs):
        ab = sample_region_point(rng, first_vertices, first_member)
        pq = sample_region_point(rng, ppt_vertices, ppt_member)
        composite = compose_params(ab, pq)
        inside = target(d, composite)
        verdict.n_evaluations += 1
        if not inside:
            verdict.fail({'ab': ab, 'pq': pq, 'composite': composite})
    return verdict


# optimal PPT fraction of the antisymmetric projection

@dataclass(frozen=True)
class SindiciPianiResult:
    p_min: Fraction
    sigma_star_params: RationalPoint2
    ppt_min_eigenvalue: float
    constraint_residual: float


def _family_interval(d):
    """Feasible p with ((1−p)/(d+1), p) ∈ 𝕋, solved exactly constraint by constraint."""
    low, high = None, None
    for constraint in t_constraints(d):
        at0 = constraint.residual(families.sindici_piani_params(d, 0))
        at1 = constraint.residual(families.sindici_piani_params(d, 1))
        slope = at1 - at0
        if slope == 0:
            if at0 < 0:
                return None
            continue
        root = -at0 / slope
        if slope > 0:
            low = root if low is None else max(low, root)
        else:
            high = root if high is None else min(high, root)
    return low, high


def sindici_piani(d):
    """
    Largest weight p on |ω^Ω⟩ over the states σ* = ρ^Γ_{(1−p)/(d+1), p}
    that stay PPT; the optimum is 1/(d+2).
    """
    check_dimension(d)
    low, high = _family_interval(d)
    p_min = high
    ab = families.sindici_piani_params(d, p_min)
    sigma = partial_transpose(rho_state(d, ab.x, ab.y))
    ppt_min = min(min_eigenvalue(sigma), min_eigenvalue(partial_transpose(sigma)))
    identity = np.eye(d * d)
    antisym = (identity - canonical_matrices(d).flip) / 2
    target = float(p_min) * np.outer(canonical_matrices(d).max_ent_omega, canonical_matrices(d).max_ent_omega.conj())
    residual = float(np.linalg.norm(antisym @ sigma @ antisym - target))
    logger.debug('sindici_piani d=%s: p in [%s, %s], residual %.3g', d, low, high, residual)
    return SindiciPianiResult(p_min, ab, ppt_min, residual)


# states of high Schmidt number

@dataclass(frozen=True, eq=False)
class HighSnState:
    rho: np.ndarray
    ppt: bool
    sn_lower: int
    ppt_min_eigenvalue: float


def _schmidt_lower_bound(d, rho, tol):
    """1 + the largest k whose k-Breuer–Hall witness pairs negatively with ρ."""
    bound = 1
    for k in range(1, d // 2):
        w = families.k_breuer_hall(d, k)
        pairing = float(np.trace(rho_state(d, w.x, w.y) @ rho).real)
        if pairing < -tol:
            bound = k + 1
    return bound


def _certify(d, rho, tol):
    ppt_min = min_eigenvalue(partial_transpose(rho))
    return ppt_min, ppt_min >= -tol, _schmidt_lower_bound(d, rho, tol)


def _require_gap(d, ab):
    ab = point(ab)
    if not in_T(d, ab) or in_S_k(d, d // 2 - 1, ab):
        raise ParamsOutsideRegion(f'{ab} is not PPT with Schmidt number d/2 for d={d}')
    return ab


def high_sn_mixture(d, ab, p0, vectors, weights, tol=None):
    """p₀ρ_{a,b} + Σ p_j |v_j⟩⟨v_j|⊗|Ωv_j⟩⟨Ωv_j|."""
    check_dimension(d)
    tol = conf.structural_tol() if tol is None else tol
    ab = _require_gap(d, ab)
    weights = [float(w) for w in weights]
    if not p0 > 0 or len(weights) != len(vectors) or min(weights, default=0) < 0 \
            or abs(float(p0) + sum(weights) - 1) > tol:
        raise ParamsOutsideRegion('mixture weights must be a probability vector with p0 > 0')
    omega = canonical_matrices(d).omega
    rho = float(p0) * rho_state(d, ab.x, ab.y)
    for weight, v in zip(weights, vectors):
        v = np.asarray(v, dtype=complex)
        v = v / np.linalg.norm(v)
        product = np.kron(v, omega @ v)
        rho = rho + weight * np.outer(product, product.conj())
    ppt_min, ppt, sn_lower = _certify(d, rho, tol)
    return HighSnState(rho, ppt, sn_lower, ppt_min)


def high_sn_perturbed(d, ab, eps, tol=None):
    """(1−ε)ρ_{a,b} + ε|ω^Ω⟩⟨ω^Ω| for (a,b) inside the PPT gap region."""
    check_dimension(d)
    tol = conf.structural_tol() if tol is None else tol
    ab = _require_gap(d, ab)
    if any(constraint.residual(ab) == 0 for constraint in t_constraints(d)):
        raise ParamsOutsideRegion(f'{ab} lies on the boundary of the PPT region')
    eps = float(eps)
    omega_twisted = canonical_matrices(d).max_ent_omega
    rho = (1 - eps) * rho_state(d, ab.x, ab.y) + eps * np.outer(omega_twisted, omega_twisted.conj())
    ppt_min, ppt, sn_lower = _certify(d, rho, tol)
    if not ppt:
        raise EpsTooLarge(f'eps={eps:g} leaves the PPT states (min eigenvalue {ppt_min:.3g})')
    return HighSnState(rho, ppt, sn_lower, ppt_min)


def high_sn_state(d, kind, **kwargs):
    if kind == 'mixture':
        return high_sn_mixture(d, **kwargs)
    if kind == 'perturbed':
        return high_sn_perturbed(d, **kwargs)
    raise ValueError(f'unknown construction {kind!r}')


# pairing sums of orthonormal frames

def optimization_bounds(d, k, n, seed, jobs=1):
    if n < 1:
        raise ValueError('optimization_bounds needs n >= 1')
    if not 1 <= k <= d:
        raise BadIndex(f'k={k} outside [1, {d}]')
    low, high = frame_bounds(d, k)
    verdict = Verdict('lemma-a2', d, k, params={'frames': n}, seed=seed)

    def inspect(index):
        frame = random_frame(d, k, derive_seed(seed, index))
        B = frame.pairing_matrix()
        return frame.pairing_sum(), float(np.linalg.norm(B + B.T))

    for index, (total, skewness) in enumerate(run_chunks(inspect, range(n), jobs)):
        margin = min(total - low, high - total)
        verdict.record(margin)
        if margin < -1e-10 or skewness > 1e-12:
            verdict.fail({'frame_index': index, 'pairing_sum': total, 'skewness': skewness})
    extremes = extremal_frames(d, k)
    attained = {
        'max_frame': extremes['max_frame'].pairing_sum(),
        'min_frame': extremes['min_frame'].pairing_sum(),
    }
    verdict.details = {'lower': low, 'upper': high, 'extremal_sums': attained}
    if abs(attained['max_frame'] - high) > 1e-12 or abs(attained['min_frame'] - low) > 1e-12:
        verdict.fail({'extremal_sums': attained})
    return verdict
