from fractions import Fraction
from unittest.mock import patch

import numpy as np
from django.test import SimpleTestCase, override_settings

from classification import families
from classification.exceptions import BadDimension, UnsupportedRegion
from classification.rational import RationalPoint2
from classification.regions import in_P_k, in_S_k, witness_points
from verification.serializers import VerdictSerializer, to_jsonable
from verification.suites import SUITES, canonical_suite, duality_miss, near_boundary, rational_grid, run_suite

F = Fraction


class GridTest(SimpleTestCase):
    def test_rational_grid(self):
        grid = rational_grid(21)
        self.assertEqual(len(grid), 441)
        self.assertEqual(grid[0], RationalPoint2(F(-3, 5), F(-3, 5)))
        self.assertEqual(grid[-1], RationalPoint2(F(11, 10), F(11, 10)))

    def test_near_boundary(self):
        member = lambda pt: in_P_k(4, 2, pt)
        self.assertTrue(near_boundary(member, RationalPoint2(1, 0)))
        self.assertFalse(near_boundary(member, RationalPoint2(0, 0)))


class SuiteTest(SimpleTestCase):
    def test_every_suite_is_registered(self):
        self.assertEqual(
            set(SUITES),
            {'kpos', 'sixcond', 'pairing', 'twirl', 'pptsq', 'sdp', 'lemma-a2', 'tables', 'high-sn',
             'duality', 'dualcurve'},
        )

    def test_sdp(self):
        verdict = run_suite('sdp', 6)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.details['p_min'], '1/8')

    def test_tables(self):
        verdict = run_suite('tables', 8, k=3)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.k, 3)

    def test_tables_every_k(self):
        self.assertTrue(run_suite('tables', 6).passed)

    def test_kpos(self):
        verdict = run_suite('kpos', 4, k=2, frames=20, grid=9, seed=7, tol=1e-9)
        self.assertTrue(verdict.passed)
        self.assertGreater(verdict.details['compared_points'], 0)
        self.assertEqual(verdict.seed, 7)

    def test_kpos_ignores_the_worker_count(self):
        one = run_suite('kpos', 4, k=3, frames=10, grid=5, seed=3, jobs=1)
        two = run_suite('kpos', 4, k=3, frames=10, grid=5, seed=3, jobs=2)
        self.assertEqual((one.passed, one.min_margin, one.n_evaluations), (two.passed, two.min_margin, two.n_evaluations))

    def test_sixcond(self):
        self.assertTrue(run_suite('sixcond', 4, grid=11).passed)
        with self.assertRaises(UnsupportedRegion):
            run_suite('sixcond', 4, k=1)

    def test_pairing(self):
        verdict = run_suite('pairing', 6, samples=40, seed=1)
        self.assertTrue(verdict.passed)
        self.assertTrue(verdict.details['k2_breuer_hall_detects_pv'])

    def test_pairing_detects_pv_for_every_k(self):
        verdict = run_suite('pairing', 8, samples=5, seed=0)
        self.assertTrue(verdict.passed)
        for k in (1, 2, 3):
            self.assertIs(verdict.details[f'k{k}_breuer_hall_detects_pv'], True)

    @patch('verification.suites.families.pv_point', return_value=RationalPoint2(0, 0))
    def test_pairing_fails_when_a_witness_misses_the_state(self, mock_point):
        verdict = run_suite('pairing', 6, samples=5, seed=0)
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.counterexample['k'], 1)
        self.assertFalse(verdict.details['k1_breuer_hall_detects_pv'])

    def test_twirl(self):
        verdict = run_suite('twirl', 4, samples=200, seed=0)
        self.assertTrue(verdict.passed)
        self.assertIn('pv_point', verdict.details)

    def test_pptsq(self):
        self.assertTrue(run_suite('pptsq', 4, samples=200, seed=5).passed)

    def test_frame_bounds(self):
        verdict = run_suite('lemma-a2', 6, k=4, samples=200, seed=0)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.suite, 'lemma-a2')

    def test_frame_bounds_alias(self):
        verdict = run_suite('frame-bounds', 4, k=2, samples=20, seed=0)
        self.assertEqual(verdict.suite, 'lemma-a2')
        self.assertEqual(canonical_suite('frame-bounds'), 'lemma-a2')

    def test_high_sn(self):
        verdict = run_suite('high-sn', 6, seed=0)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.details['mixture']['sn_lower'], 3)
        self.assertEqual(verdict.details['perturbed']['sn_lower'], 3)

    def test_duality(self):
        self.assertTrue(run_suite('duality', 4, samples=15, seed=2).passed)

    def test_dualcurve(self):
        verdict = run_suite('dualcurve', 6, samples=16)
        self.assertTrue(verdict.passed)
        self.assertGreater(verdict.n_evaluations, 0)

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            run_suite('unknown', 4)

    def test_bad_dimension(self):
        with self.assertRaises(BadDimension):
            run_suite('sdp', 7)

    @override_settings(SYMPENT_SEED=99)
    def test_environment_seed_wins(self):
        self.assertEqual(run_suite('pairing', 4, samples=5, seed=1).seed, 99)

    @override_settings(SYMPENT_REPORT_TIMING=False)
    def test_timing_can_be_switched_off(self):
        self.assertIsNone(run_suite('sdp', 4).runtime_ms)


class DualityMissTest(SimpleTestCase):
    """States just outside 𝕊₁ for d=4, on the ray from the maximally mixed state to the PV state."""

    def setUp(self):
        self.pv = families.pv_point(4)
        # lo·pv ∈ 𝕊₁ and hi·pv ∉ 𝕊₁
        lo, hi = F(0), F(1)
        while hi - lo > F(1, 10**12):
            mid = (lo + hi) / 2
            if in_S_k(4, 1, self.pv.scaled(mid)):
                lo = mid
            else:
                hi = mid
        self.edge = self.pv.scaled(hi)
        self.outside = self.pv.scaled(hi * (1 + F(1, 10**6)))

    def test_points_are_outside(self):
        self.assertFalse(in_S_k(4, 1, self.edge))
        self.assertFalse(in_S_k(4, 1, self.outside))
        self.assertTrue(in_P_k(4, 4, self.outside))

    def test_miss_far_outside_the_band_fails(self):
        self.assertEqual(duality_miss(4, 1, self.outside, []), 'fail')

    def test_miss_inside_the_band_is_adjudicated(self):
        self.assertEqual(duality_miss(4, 1, self.edge, []), 'adjudicated')

    def test_denser_witnesses_settle_a_miss(self):
        self.assertEqual(duality_miss(4, 1, self.pv, witness_points(4, 1, 8)), 'refined')

    @patch('verification.suites.witness_points', return_value=[])
    @patch('verification.suites.sample_region_point')
    def test_suite_fails_on_an_undetected_state(self, mock_sample, mock_witnesses):
        mock_sample.return_value = self.outside
        verdict = run_suite('duality', 4, samples=1, seed=0)
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.counterexample['k'], 1)
        self.assertEqual(verdict.counterexample['point'], self.outside)

    @patch('verification.suites.witness_points', return_value=[])
    @patch('verification.suites.sample_region_point')
    def test_suite_excuses_a_miss_inside_the_band(self, mock_sample, mock_witnesses):
        mock_sample.return_value = self.edge
        verdict = run_suite('duality', 4, samples=1, seed=0)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.details['adjudicated_near_boundary'], 1)


class VerdictSerializerTest(SimpleTestCase):
    def test_serialized_fields(self):
        data = VerdictSerializer(run_suite('sdp', 4)).data
        self.assertEqual(list(data)[:3], ['suite', 'd', 'k'])
        self.assertNotIn('counterexample', data)
        self.assertEqual(data['details']['p_min'], '1/6')

    def test_headline_fields_sit_before_passed(self):
        data = VerdictSerializer(run_suite('sdp', 6)).data
        self.assertEqual(data['p_min'], '1/8')
        self.assertEqual(data['sigma_star_params'], ['1/8', '1/8'])
        keys = list(data)
        self.assertEqual(keys.index('sigma_star_params') + 1, keys.index('passed'))

    def test_no_headline_fields_without_summary(self):
        data = VerdictSerializer(run_suite('pairing', 4, samples=5, seed=0)).data
        self.assertNotIn('p_min', data)

    def test_timing_context(self):
        data = VerdictSerializer(run_suite('sdp', 4), context={'timing': False}).data
        self.assertNotIn('runtime_ms', data)

    def test_same_seed_same_json(self):
        first = VerdictSerializer(run_suite('pairing', 4, samples=10, seed=3), context={'timing': False}).data
        second = VerdictSerializer(run_suite('pairing', 4, samples=10, seed=3), context={'timing': False}).data
        self.assertEqual(first, second)

    def test_to_jsonable(self):
        self.assertEqual(to_jsonable(F(-3, 6)), '-1/2')
        self.assertEqual(to_jsonable(RationalPoint2(F(1, 8), 0)), ['1/8', '0'])
        matrix = to_jsonable(np.array([[1, 2j]]))
        self.assertEqual(matrix, {'rows': 1, 'cols': 2, 'entries': [[1.0, 0.0], [0.0, 2.0]]})
        self.assertEqual(to_jsonable({'n': np.int64(3), 'ok': np.bool_(True)}), {'n': 3, 'ok': True})
