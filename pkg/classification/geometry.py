"""
Projective geometry over the rationals.

Conics are stored as the six coefficients of Ax²+Bxy+Cy²+Dx+Ey+F and, when
matrix algebra is needed, as the symmetric homogeneous matrix
[[A,B/2,D/2],[B/2,C,E/2],[D/2,E/2,F]]. Pole–polar duality is taken with
respect to the unit circle: the line px+qy=1 and the point (p,q) are dual.
All arithmetic is exact.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exceptions import (
    DegenerateConic,
    LineThroughOrigin,
    OriginHasNoPolar,
    PointNotOnConic,
    SingularTangent,
    TableMismatch,
)
from .rational import RationalPoint2, as_fraction, check_dimension, check_index, point

logger = logging.getLogger(__name__)


class ConicKind(str, Enum):
    ELLIPSE = 'ellipse'
    HYPERBOLA = 'hyperbola'
    PARABOLA = 'parabola'
    DEGENERATE = 'degenerate'


@dataclass(frozen=True)
class ConicCoeffs:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction
    F: Fraction

    def __post_init__(self):
        for name in 'ABCDEF':
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not any(self.as_tuple()):
            raise DegenerateConic('all conic coefficients vanish')

    def as_tuple(self):
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def __call__(self, pt):
        x, y = point(pt)
        return (self.A * x * x + self.B * x * y + self.C * y * y
                + self.D * x + self.E * y + self.F)

    def gradient(self, pt):
        x, y = point(pt)
        return (2 * self.A * x + self.B * y + self.D,
                self.B * x + 2 * self.C * y + self.E)

    def quadratic_part(self, vx, vy):
        return self.A * vx * vx + self.B * vx * vy + self.C * vy * vy

    def discriminant(self):
        return self.B * self.B - 4 * self.A * self.C

    def scaled(self, factor):
        factor = as_fraction(factor)
        return ConicCoeffs(*(coeff * factor for coeff in self.as_tuple()))

    def homogeneous(self):
        return HomogeneousConic.from_coeffs(self)

    def center(self):
        """Gradient-zero point; only defined for central conics."""
        det = 4 * self.A * self.C - self.B * self.B
        if det == 0:
            raise DegenerateConic('conic has no unique center')
        x = (self.B * self.E - 2 * self.C * self.D) / det
        y = (self.B * self.D - 2 * self.A * self.E) / det
        return RationalPoint2(x, y)

    def ratio_to(self, other):
        """Scale s with self == s * other, or None if not proportional."""
        ratio = None
        for mine, theirs in zip(self.as_tuple(), other.as_tuple()):
            if theirs == 0:
                if mine != 0:
                    return None
                continue
            current = mine / theirs
            if ratio is None:
                ratio = current
            elif current != ratio:
                return None
        return ratio

    def is_proportional(self, other, positive=False):
        ratio = self.ratio_to(other)
        if ratio is None or ratio == 0:
            return False
        return ratio > 0 if positive else True

    def restrict_to_line(self, line):
        """
        Coefficients (a2, a1, a0) of t ↦ conic(P0 + t·v) along the line,
        with P0 a rational point of the line and v its direction.
        """
        origin, direction = line.parametrize()
        vx, vy = direction
        gx, gy = self.gradient(origin)
        return self.quadratic_part(vx, vy), gx * vx + gy * vy, self(origin)

    def touches(self, line):
        """Exact tangency: the restriction has a double root."""
        a2, a1, a0 = self.restrict_to_line(line)
        return a2 != 0 and a1 * a1 - 4 * a2 * a0 == 0


@dataclass(frozen=True)
class HomogeneousConic:
    Q: tuple

    @classmethod
    def from_coeffs(cls, c):
        half = Fraction(1, 2)
        return cls((
            (c.A, c.B * half, c.D * half),
            (c.B * half, c.C, c.E * half),
            (c.D * half, c.E * half, c.F),
        ))

    def to_coeffs(self):
        Q = self.Q
        return ConicCoeffs(Q[0][0], 2 * Q[0][1], Q[1][1], 2 * Q[0][2], 2 * Q[1][2], Q[2][2])

    def det(self):
        (a, b, c), (d, e, f), (g, h, i) = self.Q
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def adjugate(self):
        (a, b, c), (d, e, f), (g, h, i) = self.Q
        return HomogeneousConic((
            (e * i - f * h, c * h - b * i, b * f - c * e),
            (f * g - d * i, a * i - c * g, c * d - a * f),
            (d * h - e * g, b * g - a * h, a * e - b * d),
        ))

    def congruent(self, T):
        """Tᵀ·Q·T for a 3×3 matrix T."""
        Q = self.Q
        QT = [[sum(Q[r][m] * T[m][col] for m in range(3)) for col in range(3)] for r in range(3)]
        return HomogeneousConic(tuple(
            tuple(sum(T[m][r] * QT[m][col] for m in range(3)) for col in range(3))
            for r in range(3)
        ))


@dataclass(frozen=True)
class LinearForm:
    n1: Fraction
    n2: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'n1', as_fraction(self.n1))
        object.__setattr__(self, 'n2', as_fraction(self.n2))
        object.__setattr__(self, 'c', as_fraction(self.c))
        if self.n1 == 0 and self.n2 == 0:
            raise SingularTangent('linear form has zero normal vector')

    def __call__(self, pt):
        x, y = point(pt)
        return self.n1 * x + self.n2 * y + self.c

    def as_tuple(self):
        return (self.n1, self.n2, self.c)

    def is_proportional(self, other):
        a1, b1, c1 = self.as_tuple()
        a2, b2, c2 = other.as_tuple()
        return a1 * b2 == a2 * b1 and a1 * c2 == a2 * c1 and b1 * c2 == b2 * c1

    def parametrize(self):
        if self.n2 != 0:
            origin = RationalPoint2(Fraction(0), -self.c / self.n2)
        else:
            origin = RationalPoint2(-self.c / self.n1, Fraction(0))
        return origin, (-self.n2, self.n1)

    def intersect(self, other):
        det = self.n1 * other.n2 - self.n2 * other.n1
        if det == 0:
            return None
        x = (self.n2 * other.c - self.c * other.n2) / det
        y = (self.c * other.n1 - self.n1 * other.c) / det
        return RationalPoint2(x, y)

    def __str__(self):
        return f'{self.n1}·x + {self.n2}·y + {self.c}'


@dataclass(frozen=True)
class TableRow:
    source_pq: RationalPoint2
    image_ab: RationalPoint2
    tangent: LinearForm


@dataclass(frozen=True)
class ParallelogramReport:
    vertices: tuple
    sides: tuple
    # label -> tuple of booleans, one per side
    tangency: dict
    # label -> index of the side each Table-1 image lies on
    table_sides: dict

    @property
    def all_tangent(self):
        return all(all(flags) for flags in self.tangency.values())


def f_poly(d, k, u):
    """
    The hyperbola family (1−x−(1+d)y)(1−(1−kd)x−y) + d²u·xy, expanded.

    For 0<u<k it passes through (1,0), (−1/(kd−1),0), (0,1) and (0,1/(d+1))
    and degenerates into the two lines at u=0 and u=k.
    """
    check_dimension(d)
    check_index(d, k)
    u = as_fraction(u)
    return ConicCoeffs(
        1 - k * d,
        -k * d * d - k * d + d + 2 + d * d * u,
        d + 1,
        k * d - 2,
        -d - 2,
        1,
    )


def conic_classify(c):
    if c.homogeneous().det() == 0:
        return ConicKind.DEGENERATE
    disc = c.discriminant()
    if disc < 0:
        return ConicKind.ELLIPSE
    if disc > 0:
        return ConicKind.HYPERBOLA
    return ConicKind.PARABOLA


def tangent_line(c, pt):
    pt = point(pt)
    if c(pt) != 0:
        raise PointNotOnConic(f'{pt} is not on the conic (value {c(pt)})')
    p, q = pt
    n1 = 2 * c.A * p + c.B * q + c.D
    n2 = 2 * c.C * q + c.B * p + c.E
    const = c.D * p + c.E * q + 2 * c.F
    if n1 == 0 and n2 == 0:
        raise SingularTangent(f'conic is singular at {pt}')
    return LinearForm(n1, n2, const)


def pole(line):
    if line.c == 0:
        raise LineThroughOrigin(f'{line} passes through the origin')
    return RationalPoint2(-line.n1 / line.c, -line.n2 / line.c)


def polar(pt):
    pt = point(pt)
    if pt.x == 0 and pt.y == 0:
        raise OriginHasNoPolar('the origin has no polar line')
    return LinearForm(pt.x, pt.y, -1)


def _alpha_matrix(d):
    scale = -(d + 1)
    return ((scale * (d - 1), -scale), (-scale, scale * (d - 1)))


def alpha(d, pt):
    pt = point(pt)
    (m11, m12), (m21, m22) = _alpha_matrix(d)
    return RationalPoint2(m11 * pt.x + m12 * pt.y, m21 * pt.x + m22 * pt.y)


def alpha_inv(d, pt):
    pt = point(pt)
    (m11, m12), (m21, m22) = _alpha_matrix(d)
    det = Fraction(m11 * m22 - m12 * m21)
    return RationalPoint2((m22 * pt.x - m12 * pt.y) / det,
                          (m11 * pt.y - m21 * pt.x) / det)


def pullback(c, matrix):
    """The conic c∘M for a linear map M of the plane."""
    (m11, m12), (m21, m22) = matrix
    T = ((m11, m12, 0), (m21, m22, 0), (0, 0, 1))
    return c.homogeneous().congruent(T).to_coeffs()


def inside_negative(c):
    """Flip the sign of a central conic so that it is negative at its center."""
    if c(c.center()) > 0:
        return c.scaled(-1)
    return c


def dual_conic(c):
    """
    Points (x,y) whose polar line px+qy=1 is tangent to c, via the adjugate:
    (x,y,−1)·adj(Q)·(x,y,−1)ᵀ = 0. Ellipses come back negative inside.
    """
    hom = c.homogeneous()
    if hom.det() == 0:
        raise DegenerateConic('dual of a degenerate conic is undefined')
    flip = ((1, 0, 0), (0, 1, 0), (0, 0, -1))
    dual = hom.adjugate().congruent(flip).to_coeffs()
    if conic_classify(dual) == ConicKind.ELLIPSE:
        dual = inside_negative(dual)
    return dual


def g_for_u(d, k, u):
    """Pullback under α of the dual of f_u, negative inside the filled ellipse."""
    u = as_fraction(u)
    if u == 0 or u == k:
        raise DegenerateConic(f'f_u degenerates at u={u} (k={k})')
    g = pullback(dual_conic(f_poly(d, k, u)), _alpha_matrix(d))
    return inside_negative(g)


def g_parameter(d, k, which):
    if which == 'g1':
        return Fraction(k - 1)
    if which == 'g2':
        return Fraction(2 * k - d)
    raise ValueError(f'unknown ellipse {which!r}')


def g_poly(d, k, which):
    check_dimension(d)
    check_index(d, k)
    return g_for_u(d, k, g_parameter(d, k, which))


def line_l(d, k, which):
    check_dimension(d)
    check_index(d, k)
    if which == 'l1':
        return LinearForm(k + d - 1, -(k * d - k + 1), Fraction(-(2 * k * d + k - d - 1), d + 1))
    if which == 'l2':
        return LinearForm(3 * d - k - 3, k * d - k - 3, Fraction(-(d * d + k * d - k - 3), d + 1))
    raise ValueError(f'unknown line {which!r}')


def _table_one(d, k, u):
    """Closed-form rows of the four canonical points for a general u."""
    den = Fraction(d * d - d - 2)
    kden = k * den
    return [
        TableRow(
            RationalPoint2(1, 0),
            RationalPoint2((-2 * k + u) / kden, (-k * d + d * u - u) / kden),
            LinearForm(1 - d, 1, Fraction(-1, d + 1)),
        ),
        TableRow(
            RationalPoint2(0, 1),
            RationalPoint2((k * d - 1 - d * u - k + u) / den, (k - u - 1) / den),
            LinearForm(1, 1 - d, Fraction(-1, d + 1)),
        ),
        TableRow(
            RationalPoint2(0, Fraction(1, d + 1)),
            RationalPoint2((-2 + d * u - u) / den, (-d + u) / den),
            LinearForm(1, 1 - d, -1),
        ),
        TableRow(
            RationalPoint2(Fraction(-1, k * d - 1), 0),
            RationalPoint2((k * k * d - k - k * k - u) / kden, (k * k - k - d * u + u) / kden),
            LinearForm(1 - d, 1, Fraction(k * d - 1, d + 1)),
        ),
    ]


def _table_two(d, k):
    den = Fraction(d * d - d - 2)
    kden = k * den
    return [
        TableRow(RationalPoint2(1, 0),
                 RationalPoint2((-k - 1) / kden, (-d - k + 1) / kden),
                 LinearForm(1 - d, 1, Fraction(-1, d + 1))),
        TableRow(RationalPoint2(0, 1),
                 RationalPoint2(Fraction(1, d + 1), 0),
                 LinearForm(1, 1 - d, Fraction(-1, d + 1))),
        TableRow(RationalPoint2(0, Fraction(1, d + 1)),
                 RationalPoint2((k * d - d - k - 1) / den, (-d + k - 1) / den),
                 LinearForm(1, 1 - d, -1)),
        TableRow(RationalPoint2(Fraction(-1, k * d - 1), 0),
                 RationalPoint2((k * k * d - 2 * k - k * k + 1) / kden, (k - 1) * (k - d + 1) / kden),
                 LinearForm(1 - d, 1, Fraction(k * d - 1, d + 1))),
    ]


def _table_three(d, k):
    den = Fraction(d * d - d - 2)
    kden = k * den
    return [
        TableRow(RationalPoint2(1, 0),
                 RationalPoint2(-d / kden, (k * d - d * d - 2 * k + d) / kden),
                 LinearForm(1 - d, 1, Fraction(-1, d + 1))),
        TableRow(RationalPoint2(0, 1),
                 RationalPoint2((-k * d + d * d + k - d - 1) / den, (d - k - 1) / den),
                 LinearForm(1, 1 - d, Fraction(-1, d + 1))),
        TableRow(RationalPoint2(0, Fraction(1, d + 1)),
                 RationalPoint2((-2 + 2 * k * d - d * d - 2 * k + d) / den, (2 * k - 2 * d) / den),
                 LinearForm(1, 1 - d, -1)),
        TableRow(RationalPoint2(Fraction(-1, k * d - 1), 0),
                 RationalPoint2((k * k * d - 3 * k - k * k + d) / kden, (k - d) * (k - d + 1) / kden),
                 LinearForm(1 - d, 1, Fraction(k * d - 1, d + 1))),
        TableRow(RationalPoint2(-2 / den, -d / den),
                 RationalPoint2(Fraction(d, 3 * d - 2 * k), Fraction(2 * d - 2 * k, (d + 1) * (3 * d - 2 * k))),
                 LinearForm(1, 1 + d, -1)),
    ]


def _pipeline_row(d, f, g, row):
    """Recompute a table row: tangent of f at (p,q), its pole, then α⁻¹."""
    image = alpha_inv(d, pole(tangent_line(f, row.source_pq)))
    if image != row.image_ab:
        raise TableMismatch(f'row {row.source_pq}: closed form {row.image_ab}, pipeline {image}')
    if g(image) != 0:
        raise TableMismatch(f'row {row.source_pq}: image {image} is not on the ellipse')
    if not tangent_line(g, image).is_proportional(row.tangent):
        raise TableMismatch(f'row {row.source_pq}: tangent {row.tangent} does not touch at {image}')
    return row


def table_rows(d, k, which, u=None):
    """
    Rows (p,q) → (a,b) with their tangent lines, verified two ways.

    which is 'general' (needs u with 0<u<k), 'table2' (u=k−1) or 'table3'
    (u=2k−d, plus the fifth row through the vertex of the state triangle).
    """
    check_dimension(d)
    check_index(d, k)
    if which == 'general':
        if u is None:
            raise ValueError('general rows need u')
        u = as_fraction(u)
        rows = _table_one(d, k, u)
    elif which == 'table2':
        u = Fraction(k - 1)
        rows = _table_two(d, k) if u != 0 else []
    elif which == 'table3':
        u = Fraction(2 * k - d)
        rows = _table_three(d, k) if 0 < u < k else []
    else:
        raise ValueError(f'unknown table {which!r}')
    if not rows:
        return []
    f = f_poly(d, k, u)
    g = g_for_u(d, k, u)
    if which != 'general':
        general = _table_one(d, k, u)
        for closed, reference in zip(rows, general):
            if closed.image_ab != reference.image_ab or not closed.tangent.is_proportional(reference.tangent):
                raise TableMismatch(f'{which} row {closed.source_pq} disagrees with the general row')
    verified = [_pipeline_row(d, f, g, row) for row in rows]
    logger.debug('table %s reproduced for d=%s k=%s u=%s', which, d, k, u)
    return verified


def parallelogram_sides(d, k):
    return (
        LinearForm(1 - d, 1, Fraction(-1, d + 1)),
        LinearForm(1, 1 - d, Fraction(-1, d + 1)),
        LinearForm(1 - d, 1, Fraction(k * d - 1, d + 1)),
        LinearForm(1, 1 - d, -1),
    )


def _parallelogram_closed_form(d, k):
    den = Fraction(d * d - d - 2)
    return (
        RationalPoint2(-2 / den, -d / den),
        RationalPoint2(-1 / den, -1 / den),
        RationalPoint2((k * d - k - 1) / den, (k - 1) / den),
        RationalPoint2((k * d - k - 2) / den, (-d + k) / den),
    )


def _ellipse_parameters(d, k):
    params = {}
    if k >= 2:
        params['g1'] = Fraction(k - 1)
    if d < 2 * k < 2 * d:
        params['g2'] = Fraction(2 * k - d)
    if not params:
        params[f'u={Fraction(k, 2)}'] = Fraction(k, 2)
    return params


def parallelogram(d, k):
    """
    The four tangent lines shared by every ellipse of the family and the
    parallelogram they bound, with an exact tangency report.
    """
    check_dimension(d)
    check_index(d, k)
    s1, s2, s3, s4 = sides = parallelogram_sides(d, k)
    vertices = (s1.intersect(s4), s1.intersect(s2), s2.intersect(s3), s3.intersect(s4))
    if vertices != _parallelogram_closed_form(d, k):
        raise TableMismatch(f'parallelogram vertices {vertices} disagree with the closed form')
    tangency = {}
    table_sides = {}
    for label, u in _ellipse_parameters(d, k).items():
        g = g_for_u(d, k, u)
        tangency[label] = tuple(g.touches(side) for side in sides)
        table_sides[label] = tuple(
            next((index for index, side in enumerate(sides) if side(row.image_ab) == 0), None)
            for row in _table_one(d, k, u)
        )
    return ParallelogramReport(vertices, sides, tangency, table_sides)


def conic_arc(c, start, end, n, away_from=None):
    """
    n exact points of c from start to end (both included).

    Lines through start with directions between the tangent at start and the
    chord to end meet c a second time on one of the two arcs. Hyperbola arcs
    use the tangent orientation pointing towards end; for ellipses the arc on
    the far side of the chord from away_from is used.
    """
    start, end = point(start), point(end)
    if n < 2:
        raise ValueError('an arc needs at least its two endpoints')
    if c(start) != 0 or c(end) != 0:
        raise PointNotOnConic('arc endpoints must lie on the conic')
    gx, gy = c.gradient(start)
    if gx == 0 and gy == 0:
        raise SingularTangent(f'conic is singular at {start}')
    chord = (end.x - start.x, end.y - start.y)
    tangent = (-gy, gx)
    if tangent[0] * chord[0] + tangent[1] * chord[1] < 0:
        tangent = (gy, -gx)

    def second_point(tangent_dir, lam):
        vx = (1 - lam) * tangent_dir[0] + lam * chord[0]
        vy = (1 - lam) * tangent_dir[1] + lam * chord[1]
        quad = c.quadratic_part(vx, vy)
        if quad == 0:
            raise DegenerateConic('arc crosses an asymptotic direction')
        s = -(gx * vx + gy * vy) / quad
        return RationalPoint2(start.x + s * vx, start.y + s * vy)

    if away_from is not None and conic_classify(c) == ConicKind.ELLIPSE:
        away_from = point(away_from)
        chord_line = LinearForm(-chord[1], chord[0], chord[1] * start.x - chord[0] * start.y)
        middle = second_point(tangent, Fraction(1, 2))
        if chord_line(middle) * chord_line(away_from) > 0:
            tangent = (-tangent[0], -tangent[1])

    return [second_point(tangent, Fraction(index, n - 1)) for index in range(n)]
