"""
Exact membership predicates for the regions of the parameter plane.

Points (p,q) parametrize the covariant maps L_{p,q}; the same points read as
(a,b) parametrize the invariant states ρ_{a,b}, and the Choi matrix of
L_{a,b} is ρ_{a,b}. All regions are closed, so boundary points belong to
them. Every predicate accepts anything `point()` can coerce; floats are
converted from their exact binary value.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Optional

from . import families
from .exceptions import NotAState, UnsupportedRegion
from .geometry import (
    ConicCoeffs,
    LinearForm,
    conic_arc,
    f_poly,
    g_poly,
    line_l,
)
from .rational import RationalPoint2, check_dimension, check_index, point

logger = logging.getLogger(__name__)

__all__ = [
    'RegionId', 'RegionReport', 'ExtremeSet', 'CurveSegment',
    'f_poly', 'in_P_k', 'in_D', 'in_T', 'in_S_k', 'in_coCP', 'in_EB',
    'in_k_atomic', 'in_gap_region', 'is_optimal_kpos', 'schmidt_number',
    'max_kpos', 'classify', 'extreme_points', 'witness_points', 'boundary_sample',
]


@dataclass(frozen=True)
class HalfPlane:
    """Satisfied where form ≤ 0."""
    form: LinearForm

    def residual(self, pt):
        return -self.form(pt)

    @property
    def lines(self):
        return (self.form,)

    def linearized(self):
        return self


@dataclass(frozen=True)
class ConicSide:
    """Satisfied where conic ≥ 0."""
    conic: ConicCoeffs

    def residual(self, pt):
        return self.conic(pt)

    @property
    def lines(self):
        return ()

    def linearized(self):
        return None


@dataclass(frozen=True)
class CapUnion:
    """Satisfied where line ≤ 0 or ellipse ≤ 0: the half-plane plus the cap beyond the chord."""
    line: LinearForm
    ellipse: ConicCoeffs

    def residual(self, pt):
        return max(-self.line(pt), -self.ellipse(pt))

    @property
    def lines(self):
        return (self.line,)

    def linearized(self):
        return HalfPlane(self.line)


def _leq(n1, n2, rhs):
    return HalfPlane(LinearForm(n1, n2, -Fraction(rhs)))


def _geq(n1, n2, rhs):
    return HalfPlane(LinearForm(-n1, -n2, Fraction(rhs)))


@lru_cache(maxsize=None)
def state_constraints(d):
    check_dimension(d)
    return (
        _leq(1, 1 - d, 1),
        _leq(1, 1 + d, 1),
        _leq(1 - d, 1, Fraction(1, d + 1)),
    )


@lru_cache(maxsize=None)
def p_constraints(d, k):
    check_dimension(d)
    check_index(d, k)
    if k == d:
        return state_constraints(d)
    if k == 1:
        return (_leq(1, 1, 1), _leq(1, 1 - d, 1), _leq(1 - d, 1, 1))
    common = (_leq(1, 1 + d, 1), _leq(1, 1 - d, 1))
    even = k % 2 == 0
    if 2 * k <= d:
        if even:
            extra = (_leq(1 - k * d, 1 + d, 1), _leq(1 - k * d, 1, 1))
        else:
            extra = (ConicSide(f_poly(d, k, k - 1)), _leq(1 - k * d, 1, 1))
    else:
        wide = ConicSide(f_poly(d, k, 2 * k - d))
        if even:
            extra = (_leq(1 - k * d, 1 + d, 1), wide)
        else:
            extra = (ConicSide(f_poly(d, k, k - 1)), wide)
    return common + extra


@lru_cache(maxsize=None)
def d_constraints(d):
    check_dimension(d)
    return (
        _geq(1, 1, Fraction(-(2 + d), d * d - d - 2)),
        _leq(1, 1, 1),
        _leq(1, 1 - d, 1),
        _leq(1 - d, 1, 1),
    )


@lru_cache(maxsize=None)
def t_constraints(d):
    check_dimension(d)
    return (
        _leq(1 - d, 1, Fraction(1, d + 1)),
        _leq(1, 1 - d, Fraction(1, d + 1)),
        _leq(1, 1 + d, 1),
        _leq(1 + d, 1, 1),
    )


@lru_cache(maxsize=None)
def s_constraints(d, k):
    """Schmidt-number-k region, always intersected with the state triangle."""
    check_dimension(d)
    check_index(d, k)
    state = state_constraints(d)
    if k >= d:
        return state
    if k == 1:
        own = (
            _leq(1 - d, 1, Fraction(1, d + 1)),
            _leq(1, 1 - d, Fraction(1, d + 1)),
            _leq(1, 1, Fraction(1, d + 1)),
        )
        return own + state
    band = (
        _leq(1 - d, 1, Fraction(1, d + 1)),
        _geq(1 - d, 1, Fraction(-(k * d - 1), d + 1)),
        _leq(1, 1 - d, 1),
    )
    odd = k % 2 == 1
    if 2 * k <= d:
        own = band + (_leq(Fraction(d - k - 1, k * d - k - 1), 1, Fraction(1, d + 1)),)
    else:
        own = band + (
            _leq(1, 1 + d, 1),
            CapUnion(line_l(d, k, 'l2'), g_poly(d, k, 'g2')),
        )
    if odd:
        own = own + (CapUnion(line_l(d, k, 'l1'), g_poly(d, k, 'g1')),)
    return own + state


def _satisfies(constraints, pt):
    return all(constraint.residual(pt) >= 0 for constraint in constraints)


def _min_residual(constraints, pt):
    return min(constraint.residual(pt) for constraint in constraints)


def in_P_k(d, k, pt):
    return _satisfies(p_constraints(d, k), point(pt))


def in_D(d, pt):
    return _satisfies(d_constraints(d), point(pt))


def in_T(d, pt):
    return _satisfies(t_constraints(d), point(pt))


def in_S_k(d, k, pt):
    return _satisfies(s_constraints(d, k), point(pt))


def in_coCP(d, pt):
    """L_{p,q} is completely copositive iff L_{q,p} is completely positive."""
    return in_P_k(d, d, point(pt).swap())


def in_EB(d, pt):
    """Entanglement breaking: the Choi matrix ρ_{p,q} is separable."""
    return in_S_k(d, 1, pt)


def in_k_atomic(d, k, pt):
    """
    k-positive but not L'+⊤∘L'' with (k+1)-positive L', L''
    (for k=1 this is atomicity). Defined for 1 ≤ k ≤ d/2−1.
    """
    check_dimension(d)
    check_index(d, k)
    if 2 * k > d - 2:
        raise UnsupportedRegion(f'atomicity degrees run over 1..{d // 2 - 1}, got k={k}')
    p, q = point(pt)
    return (p + q < Fraction(-(k + 2), (k + 1) * d - k - 2)
            and p + (1 - d) * q <= 1
            and (1 - k * d) * p + q <= 1)


def in_gap_region(d, pt):
    """PPT states whose Schmidt number is exactly d/2."""
    check_dimension(d)
    pt = point(pt)
    return in_T(d, pt) and pt.x / (d - 3) + pt.y > Fraction(1, d + 1)


def is_optimal_kpos(d, k, pt):
    """Membership in the optimal k-positive maps of the covariant class (1 ≤ k < d)."""
    check_dimension(d)
    check_index(d, k)
    if k == d:
        raise UnsupportedRegion('optimality is only classified for k < d')
    p, q = pt = point(pt)
    if k == 1:
        return (1 - d) * p + q == 1 and Fraction(-1, d - 2) <= p <= 0
    if k % 2 == 0:
        return (1 - k * d) * p + q == 1 and Fraction(-1, k * d - k - 1) <= p <= Fraction(-1, k * d - 1)
    if pt == families.k_breuer_hall(d, k):
        return True
    constraints = p_constraints(d, k)
    on_boundary = _satisfies(constraints, pt) and _min_residual(constraints, pt) == 0
    return on_boundary and not in_P_k(d, d, pt) and p + (1 - d) * q != 1


def schmidt_number(d, pt):
    check_dimension(d)
    pt = point(pt)
    if not in_P_k(d, d, pt):
        raise NotAState(f'{pt} does not define a state for d={d}')
    for k in range(1, d + 1):
        if in_S_k(d, k, pt):
            return k
    return d


def max_kpos(d, pt):
    check_dimension(d)
    pt = point(pt)
    for k in range(d, 0, -1):
        if in_P_k(d, k, pt):
            return k
    return 0


def _k_atomic_degree(d, pt):
    degree = 0
    for k in range(1, d // 2):
        if in_k_atomic(d, k, pt):
            degree = k
    return degree


@dataclass(frozen=True)
class RegionReport:
    d: int
    point: RationalPoint2
    is_state: bool
    co_cp: bool
    max_kpos: int
    decomposable: bool
    ppt: bool
    entanglement_breaking: bool
    k_atomic: int
    schmidt_number: Optional[int] = None
    schmidt_number_gamma: Optional[int] = None
    warnings: tuple = field(default=())


def classify(d, pt, warnings=()):
    check_dimension(d)
    pt = point(pt)
    is_state = in_P_k(d, d, pt)
    co_cp = in_coCP(d, pt)
    report = RegionReport(
        d=d,
        point=pt,
        is_state=is_state,
        co_cp=co_cp,
        max_kpos=max_kpos(d, pt),
        decomposable=in_D(d, pt),
        ppt=in_T(d, pt),
        entanglement_breaking=in_EB(d, pt),
        k_atomic=_k_atomic_degree(d, pt),
        # SN(ρ_{a,b}^Γ) = SN(ρ_{b,a})
        schmidt_number=schmidt_number(d, pt) if is_state else None,
        schmidt_number_gamma=schmidt_number(d, pt.swap()) if co_cp else None,
        warnings=tuple(warnings),
    )
    logger.debug('classified %s for d=%s: %s', pt, d, report)
    return report


@dataclass(frozen=True)
class CurveSegment:
    conic: ConicCoeffs
    start: RationalPoint2
    end: RationalPoint2


@dataclass(frozen=True)
class ExtremeSet:
    vertices: tuple
    curve_segments: tuple = ()


def extreme_points(d, k):
    check_dimension(d)
    check_index(d, k)
    apex = families.state_triangle_apex(d)
    if k == 1:
        corner = Fraction(-1, d - 2)
        return ExtremeSet((RationalPoint2(1, 0), RationalPoint2(0, 1), RationalPoint2(corner, corner)))
    top = RationalPoint2(0, Fraction(1, d + 1))
    if k == d:
        return ExtremeSet((RationalPoint2(1, 0), top, apex))
    reduction = families.k_reduction(d, k)
    fourth = families.k_breuer_hall(d, k) if 2 * k <= d else apex
    segments = []
    if k % 2 == 1:
        segments.append(CurveSegment(f_poly(d, k, k - 1), top, reduction))
    if 2 * k > d:
        segments.append(CurveSegment(f_poly(d, k, 2 * k - d), reduction, apex))
    return ExtremeSet((RationalPoint2(1, 0), top, reduction, fourth), tuple(segments))


def witness_points(d, k, n):
    """Vertices of ext(ℙ_k) followed by n exact points on each curved part."""
    extreme = extreme_points(d, k)
    points = list(extreme.vertices)
    for segment in extreme.curve_segments:
        points.extend(conic_arc(segment.conic, segment.start, segment.end, n))
    return points


@dataclass(frozen=True)
class RegionId:
    tag: str
    k: Optional[int] = None

    @classmethod
    def parse(cls, text, d):
        text = text.strip()
        if text in ('D', 'T'):
            return cls(text)
        tag = text[:1]
        rest = text[1:]
        if rest.startswith('k(') and rest.endswith(')'):
            rest = rest[2:-1]
        if tag not in ('P', 'S') or not rest.isdigit():
            raise UnsupportedRegion(f'unknown region {text!r}')
        k = int(rest)
        if not 1 <= k <= d:
            raise UnsupportedRegion(f'k={k} outside [1, {d}] for region {text!r}')
        return cls(tag, k)

    def __str__(self):
        return self.tag if self.k is None else f'{self.tag}{self.k}'


def _ccw_order(vertices):
    count = len(vertices)
    cx = sum(v.x for v in vertices) / count
    cy = sum(v.y for v in vertices) / count

    def half(v):
        dx, dy = v.x - cx, v.y - cy
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def compare(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        cross = (a.x - cx) * (b.y - cy) - (a.y - cy) * (b.x - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    ordered = sorted(vertices, key=cmp_to_key(compare))
    first = ordered.index(max(ordered))
    return ordered[first:] + ordered[:first]


def _polygon(constraints):
    # caps are replaced by their chords; arcs are spliced in afterwards
    constraints = [c.linearized() for c in constraints if c.linearized() is not None]
    lines = [line for constraint in constraints for line in constraint.lines]
    found = set()
    for index, first in enumerate(lines):
        for second in lines[index + 1:]:
            corner = first.intersect(second)
            if corner is not None and _satisfies(constraints, corner):
                found.add(corner)
    return _ccw_order(list(found))


def _join(vertices, arcs):
    """Closed polyline through vertices, replacing marked edges by arcs."""
    ring = []
    count = len(vertices)
    for index, vertex in enumerate(vertices):
        ring.append(vertex)
        following = vertices[(index + 1) % count]
        arc = arcs.get((vertex, following))
        if arc is not None:
            ring.extend(arc[1:-1])
        elif (following, vertex) in arcs:
            ring.extend(reversed(arcs[(following, vertex)][1:-1]))
    return tuple(ring)


def boundary_sample(d, region, n):
    """
    Closed boundary polyline of a region, counterclockwise from its
    lexicographically largest vertex; the last point connects back to the first.
    Vertices are exact, curved parts carry n exact points each.
    """
    check_dimension(d)
    if n < 8:
        raise ValueError(f'boundary sampling needs n >= 8, got {n}')
    if isinstance(region, str):
        region = RegionId.parse(region, d)
    if region.k is not None and not 1 <= region.k <= d:
        raise UnsupportedRegion(f'k={region.k} outside [1, {d}]')

    if region.tag == 'P':
        extreme = extreme_points(d, region.k)
        vertices = _ccw_order(list(extreme.vertices))
        arcs = {
            (segment.start, segment.end): conic_arc(segment.conic, segment.start, segment.end, n)
            for segment in extreme.curve_segments
        }
        return _join(vertices, arcs)
    if region.tag == 'D':
        return _join(_polygon(d_constraints(d)), {})
    if region.tag == 'T':
        return _join(_polygon(t_constraints(d)), {})
    if region.tag == 'S':
        constraints = s_constraints(d, region.k)
        vertices = _polygon(constraints)
        origin = RationalPoint2(0, 0)
        arcs = {}
        caps = [constraint for constraint in constraints if isinstance(constraint, CapUnion)]
        for cap in caps:
            on_chord = [v for v in vertices if cap.line(v) == 0]
            if len(on_chord) != 2:
                continue
            start, end = on_chord
            if cap.ellipse(start) != 0 or cap.ellipse(end) != 0:
                logger.warning('chord %s of %s does not end on its ellipse; keeping the chord', cap.line, region)
                continue
            arcs[(start, end)] = conic_arc(cap.ellipse, start, end, n, away_from=origin)
        return _join(vertices, arcs)
    raise UnsupportedRegion(f'unknown region {region}')
