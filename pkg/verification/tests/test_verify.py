from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from classification import families
from classification.exceptions import EpsTooLarge, NotAState, ParamsOutsideRegion
from classification.rational import RationalPoint2
from classification.regions import in_P_k, schmidt_number
from verification.operators import MapParams, canonical_matrices, min_eigenvalue, rho_state
from verification.sampling import Frame, complex_gaussians, extremal_frames, generator, haar_unitary, random_frame
from verification.verify import (
    SixConditionInput,
    Verdict,
    high_sn_mixture,
    high_sn_perturbed,
    high_sn_state,
    kpos_numeric,
    optimization_bounds,
    pairing_dense,
    pptsq_scan,
    run_chunks,
    sindici_piani,
    six_conditions,
    six_conditions_hold,
    sn_certificate,
    tomiyama_matrix,
    twirl_mc_check,
    witness_duality,
    witness_pairing,
)

F = Fraction
BH4 = RationalPoint2(F(-1, 2), F(-1, 2))


class VerdictTest(SimpleTestCase):
    def test_first_failure_is_kept(self):
        verdict = Verdict('kpos', 4)
        verdict.record(0.5)
        verdict.record(-0.25)
        verdict.fail('first')
        verdict.fail('second')
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.counterexample, 'first')
        self.assertEqual(verdict.n_evaluations, 2)
        self.assertEqual(verdict.min_margin, -0.25)

    def test_run_chunks_keeps_order(self):
        self.assertEqual(run_chunks(lambda x: x * x, range(10), jobs=4), [x * x for x in range(10)])


class TomiyamaTest(SimpleTestCase):
    def test_full_standard_frame_gives_the_scaled_choi_matrix(self):
        frame = Frame(4, 4, np.eye(4, dtype=complex))
        params = MapParams(4, F(1, 5), F(1, 7))
        np.testing.assert_allclose(tomiyama_matrix(params, frame), 4 * rho_state(4, F(1, 5), F(1, 7)), atol=1e-14)

    def test_depolarizing_channel(self):
        matrix = tomiyama_matrix(MapParams(4, 0, 0), random_frame(4, 2, 3))
        np.testing.assert_allclose(matrix, np.eye(8) / 4, atol=1e-14)

    def test_breuer_hall_fails_on_the_min_frame(self):
        frame = extremal_frames(4, 2)['min_frame']
        self.assertLess(min_eigenvalue(tomiyama_matrix(MapParams.at(4, BH4), frame)), 0)


class KPositivityNumericTest(SimpleTestCase):
    def test_cp_point_passes(self):
        verdict = kpos_numeric(4, 2, (0, 0), 50, seed=7, tol=1e-9)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.n_evaluations, 52)

    def test_boundary_point_passes_within_tolerance(self):
        self.assertTrue(kpos_numeric(6, 2, (F(-1, 9), F(-2, 9)), 30, seed=1).passed)

    def test_outside_point_fails_with_a_frame(self):
        verdict = kpos_numeric(6, 3, (F(-1, 9), F(-2, 9)), 30, seed=1)
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.counterexample.shape, (6, 3))

    def test_jobs_do_not_change_the_verdict(self):
        one = kpos_numeric(4, 2, (F(1, 10), F(-1, 10)), 40, seed=5, jobs=1)
        four = kpos_numeric(4, 2, (F(1, 10), F(-1, 10)), 40, seed=5, jobs=4)
        self.assertEqual(one.passed, four.passed)
        self.assertEqual(one.min_margin, four.min_margin)


class SixConditionTest(SimpleTestCase):
    def test_breuer_hall(self):
        self.assertFalse(six_conditions(SixConditionInput(4, 2, F(-1, 2), F(-1, 2), 0)))
        self.assertTrue(six_conditions(SixConditionInput(4, 2, F(-1, 2), F(-1, 2), 1)))

    def test_weight_range(self):
        with self.assertRaises(ValueError):
            SixConditionInput(4, 2, 0, 0, F(3, 2))

    def test_agrees_with_the_exact_regions(self):
        axis = [F(-3, 5) + F(17, 200) * index for index in range(21)]
        for d in (4, 6):
            for k in range(2, d):
                for x in axis:
                    for y in axis:
                        self.assertEqual(six_conditions_hold(d, k, (x, y)), in_P_k(d, k, (x, y)), f'd={d} k={k} ({x}, {y})')


class WitnessTest(SimpleTestCase):
    def test_pairing_sign(self):
        self.assertEqual(witness_pairing(6, (F(1, 8), F(1, 8)), (F(-1, 9), F(-2, 9))), F(-1, 216))

    def test_pairing_against_dense_trace(self):
        for ab, pq in (((F(1, 8), F(1, 8)), (F(-1, 9), F(-2, 9))), ((F(1, 3), F(-1, 4)), (F(2, 7), F(1, 11)))):
            self.assertAlmostEqual(float(witness_pairing(6, ab, pq)), pairing_dense(6, ab, pq), delta=1e-13)

    def test_certificate_for_pv_state(self):
        certificate = sn_certificate(6, (F(1, 8), F(1, 8)))
        self.assertEqual(certificate.sn, 3)
        self.assertEqual(certificate.violating_witness, RationalPoint2(F(-1, 9), F(-2, 9)))

    def test_certificate_for_gap_state(self):
        certificate = sn_certificate(6, (F(1, 10), F(9, 70)))
        self.assertEqual(certificate.sn, 3)
        self.assertLess(witness_pairing(6, (F(1, 10), F(9, 70)), certificate.violating_witness), 0)

    def test_separable_states_need_no_witness(self):
        certificate = sn_certificate(4, (0, 0))
        self.assertEqual(certificate.sn, 1)
        self.assertIsNone(certificate.violating_witness)

    def test_certificate_needs_a_state(self):
        with self.assertRaises(NotAState):
            sn_certificate(4, BH4)

    def test_duality(self):
        for pt in ((F(1, 8), F(1, 8)), (F(1, 10), F(9, 70)), (F(9, 70), F(1, 10)), (0, 0)):
            self.assertEqual(witness_duality(6, pt, 64), schmidt_number(6, pt))


class TwirlCheckTest(SimpleTestCase):
    def test_maximally_mixed_state_is_fixed(self):
        verdict = twirl_mc_check(4, np.eye(16) / 16, 100, seed=0)
        self.assertTrue(verdict.passed)
        self.assertLess(verdict.details['frobenius_error'], 1e-12)

    def test_random_pure_state(self):
        vec = haar_unitary(16, 3)[:, 0]
        rho = np.outer(vec, vec.conj())
        verdict = twirl_mc_check(4, rho, 2000, seed=2)
        self.assertTrue(verdict.passed)
        np.testing.assert_allclose(verdict.details['empirical_params'], verdict.details['state_params'], atol=0.05)

    def test_seed_determinism_across_jobs(self):
        rho = rho_state(4, F(1, 6), F(1, 6))
        one = twirl_mc_check(4, rho, 300, seed=4, jobs=1)
        three = twirl_mc_check(4, rho, 300, seed=4, jobs=3)
        self.assertEqual(one.details['frobenius_error'], three.details['frobenius_error'])

    def test_needs_enough_samples(self):
        with self.assertRaises(ValueError):
            twirl_mc_check(4, np.eye(16) / 16, 10, seed=0)


class CompositionScanTest(SimpleTestCase):
    def test_ppt_pairs_compose_into_separable_states(self):
        verdict = pptsq_scan(4, 300, seed=1)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.n_evaluations, 300)
        self.assertTrue(verdict.details['bound_4_over_d_plus_2_squared'])

    def test_positive_after_ppt_is_decomposable(self):
        self.assertTrue(pptsq_scan(6, 200, seed=2, variant='positive').passed)

    def test_unknown_variant(self):
        with self.assertRaises(ValueError):
            pptsq_scan(4, 10, seed=0, variant='cp')


class AntisymmetricFractionTest(SimpleTestCase):
    def test_optimal_fraction(self):
        for d, expected in ((4, F(1, 6)), (6, F(1, 8)), (8, F(1, 10))):
            result = sindici_piani(d)
            self.assertEqual(result.p_min, expected)
            self.assertEqual(result.sigma_star_params, families.sindici_piani_params(d, expected))
            self.assertGreater(result.ppt_min_eigenvalue, -1e-12)
            self.assertLess(result.constraint_residual, 1e-12)


class HighSchmidtNumberTest(SimpleTestCase):
    def test_mixture(self):
        vectors = list(complex_gaussians(generator(0), (2, 6)))
        state = high_sn_mixture(6, families.pv_point(6), F(1, 2), vectors, [0.25, 0.25])
        self.assertTrue(state.ppt)
        self.assertEqual(state.sn_lower, 3)
        self.assertAlmostEqual(float(np.trace(state.rho).real), 1.0)

    def test_perturbed(self):
        state = high_sn_state(6, 'perturbed', ab=(F(3, 25), F(3, 25)), eps=1e-3)
        self.assertTrue(state.ppt)
        self.assertEqual(state.sn_lower, 3)

    def test_perturbation_too_large(self):
        with self.assertRaises(EpsTooLarge):
            high_sn_perturbed(6, (F(3, 25), F(3, 25)), 0.5)

    def test_outside_the_gap_region(self):
        with self.assertRaises(ParamsOutsideRegion):
            high_sn_perturbed(6, (0, 0), 1e-3)
        with self.assertRaises(ParamsOutsideRegion):
            high_sn_mixture(6, families.pv_point(6), F(1, 2), [np.ones(6)], [0.7])

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            high_sn_state(6, 'twirled')

    def test_product_terms_do_not_meet_the_witnesses(self):
        omega = canonical_matrices(6).omega
        v = complex_gaussians(generator(3), (6,))
        product = np.kron(v, omega @ v)
        w = families.k_breuer_hall(6, 2)
        pairing = np.vdot(product, rho_state(6, w.x, w.y) @ product).real
        self.assertAlmostEqual(pairing, 0.0, delta=1e-12)


class FrameBoundsTest(SimpleTestCase):
    def test_bounds_hold(self):
        verdict = optimization_bounds(6, 4, 300, seed=0)
        self.assertTrue(verdict.passed)
        self.assertEqual((verdict.details['lower'], verdict.details['upper']), (2, 4))

    def test_single_vectors(self):
        verdict = optimization_bounds(4, 1, 100, seed=1)
        self.assertTrue(verdict.passed)
        self.assertLess(abs(verdict.min_margin), 1e-12)

    def test_coinciding_bounds(self):
        verdict = optimization_bounds(6, 5, 100, seed=2)
        self.assertTrue(verdict.passed)
        self.assertLess(abs(verdict.min_margin), 1e-10)
