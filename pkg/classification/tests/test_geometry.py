from fractions import Fraction

from django.test import SimpleTestCase

from classification.exceptions import (
    DegenerateConic,
    LineThroughOrigin,
    OriginHasNoPolar,
    PointNotOnConic,
)
from classification.geometry import (
    ConicCoeffs,
    ConicKind,
    LinearForm,
    alpha,
    alpha_inv,
    conic_arc,
    conic_classify,
    dual_conic,
    f_poly,
    g_for_u,
    g_poly,
    line_l,
    parallelogram,
    polar,
    pole,
    table_rows,
    tangent_line,
)
from classification.rational import RationalPoint2

F = Fraction
UNIT_CIRCLE = ConicCoeffs(1, 0, 1, 0, 0, -1)


class HyperbolaFamilyTest(SimpleTestCase):
    def test_expanded_coefficients(self):
        self.assertEqual(f_poly(4, 3, 2).as_tuple(), (-11, -22, 5, 10, -6, 1))

    def test_passes_through_the_four_points(self):
        for d in (4, 6, 8):
            for k in range(1, d + 1):
                for u in (F(0), F(1, 3), F(k, 2), F(k)):
                    f = f_poly(d, k, u)
                    for pt in ((1, 0), (F(-1, k * d - 1), 0), (0, 1), (0, F(1, d + 1))):
                        self.assertEqual(f(pt), 0)

    def test_kinds(self):
        self.assertEqual(conic_classify(f_poly(4, 3, 2)), ConicKind.HYPERBOLA)
        self.assertEqual(conic_classify(f_poly(4, 1, 0)), ConicKind.DEGENERATE)
        self.assertEqual(conic_classify(f_poly(6, 3, 3)), ConicKind.DEGENERATE)
        self.assertEqual(conic_classify(UNIT_CIRCLE), ConicKind.ELLIPSE)

    def test_all_zero_coefficients(self):
        with self.assertRaises(DegenerateConic):
            ConicCoeffs(0, 0, 0, 0, 0, 0)


class TangentPoleTest(SimpleTestCase):
    def test_circle_tangent(self):
        self.assertEqual(tangent_line(UNIT_CIRCLE, (1, 0)).as_tuple(), (2, 0, -2))

    def test_tangent_at_the_top_point(self):
        for d, k in ((6, 3), (8, 3), (8, 5)):
            line = tangent_line(f_poly(d, k, k - 1), (0, F(1, d + 1)))
            self.assertTrue(line.is_proportional(LinearForm(1 - (k - 1) * d, 1 + d, -1)))

    def test_tangent_off_the_conic(self):
        with self.assertRaises(PointNotOnConic):
            tangent_line(UNIT_CIRCLE, (0, 0))

    def test_pole_and_polar(self):
        self.assertEqual(pole(LinearForm(1, 0, -1)), RationalPoint2(1, 0))
        self.assertEqual(polar((1, 0)).as_tuple(), (1, 0, -1))
        with self.assertRaises(LineThroughOrigin):
            pole(LinearForm(1, 1, 0))
        with self.assertRaises(OriginHasNoPolar):
            polar((0, 0))

    def test_poles_of_tangents_lie_on_the_dual(self):
        f = f_poly(4, 3, 2)
        dual = dual_conic(f)
        for pt in ((0, F(1, 5)), (1, 0), (0, 1)):
            self.assertEqual(dual(pole(tangent_line(f, pt))), 0)

    def test_circle_is_self_dual(self):
        self.assertTrue(dual_conic(UNIT_CIRCLE).is_proportional(UNIT_CIRCLE, positive=True))

    def test_alpha_round_trip(self):
        pt = RationalPoint2(F(3, 7), F(-2, 11))
        for d in (4, 6, 8):
            self.assertEqual(alpha_inv(d, alpha(d, pt)), pt)
            self.assertEqual(alpha(d, alpha_inv(d, pt)), pt)


class EllipseTest(SimpleTestCase):
    def test_degenerate_parameters(self):
        with self.assertRaises(DegenerateConic):
            g_for_u(6, 3, 0)
        with self.assertRaises(DegenerateConic):
            g_for_u(6, 3, 3)

    def test_ellipses_are_negative_inside(self):
        g = g_for_u(6, 3, 1)
        self.assertEqual(conic_classify(g), ConicKind.ELLIPSE)
        self.assertLess(g(g.center()), 0)

    def test_ellipses_coincide_exactly_at_k_equals_d_minus_one(self):
        for d in (4, 6, 8, 10):
            for k in range(2, d):
                if 2 * k > d:
                    same = g_poly(d, k, 'g1').is_proportional(g_poly(d, k, 'g2'), positive=True)
                    self.assertEqual(same, k == d - 1, f'd={d} k={k}')

    def test_lines(self):
        self.assertEqual(line_l(6, 3, 'l1')((F(2, 7), F(-1, 7))), 0)
        self.assertEqual(line_l(6, 4, 'l2')((F(3, 5), F(2, 35))), 0)
        self.assertLess(line_l(6, 3, 'l1')((F(1, 8), F(1, 8))), 0)


class TableTest(SimpleTestCase):
    def test_table_two_row(self):
        rows = {row.source_pq: row for row in table_rows(8, 3, 'table2')}
        row = rows[RationalPoint2(0, 1)]
        self.assertEqual(row.image_ab, RationalPoint2(F(1, 9), 0))
        self.assertTrue(row.tangent.is_proportional(LinearForm(1, -7, F(-1, 9))))

    def test_table_three_fifth_row(self):
        d = 6
        source = RationalPoint2(F(-2, d * d - d - 2), F(-d, d * d - d - 2))
        rows = {row.source_pq: row for row in table_rows(d, 4, 'table3')}
        self.assertEqual(rows[source].image_ab, RationalPoint2(F(3, 5), F(2, 35)))
        self.assertTrue(rows[source].tangent.is_proportional(LinearForm(1, 7, -1)))

    def test_every_table_reproduces(self):
        for d in (4, 6, 8, 10):
            for k in range(1, d + 1):
                self.assertEqual(len(table_rows(d, k, 'general', F(k, 2))), 4)
                self.assertEqual(len(table_rows(d, k, 'table2')), 0 if k == 1 else 4)
                self.assertEqual(len(table_rows(d, k, 'table3')), 5 if d < 2 * k < 2 * d else 0)

    def test_general_rows_need_u(self):
        with self.assertRaises(ValueError):
            table_rows(6, 3, 'general')

    def test_parallelogram(self):
        shape = parallelogram(4, 3)
        self.assertEqual(shape.vertices, (
            RationalPoint2(F(-1, 5), F(-2, 5)),
            RationalPoint2(F(-1, 10), F(-1, 10)),
            RationalPoint2(F(4, 5), F(1, 5)),
            RationalPoint2(F(7, 10), F(-1, 10)),
        ))
        self.assertTrue(shape.all_tangent)


class ConicArcTest(SimpleTestCase):
    def test_arc_points_are_exact(self):
        f = f_poly(4, 3, 2)
        start, end = RationalPoint2(0, F(1, 5)), RationalPoint2(F(-1, 11), 0)
        points = conic_arc(f, start, end, 17)
        self.assertEqual(len(points), 17)
        self.assertEqual(points[0], start)
        self.assertEqual(points[-1], end)
        for pt in points:
            self.assertEqual(f(pt), 0)

    def test_arc_needs_points_on_the_conic(self):
        with self.assertRaises(PointNotOnConic):
            conic_arc(UNIT_CIRCLE, (1, 0), (0, 0), 8)
