from unittest.mock import patch

from django.contrib.auth.models import User
from django.test import TestCase
from rest_framework import status
from rest_framework.test import APIClient

from verification.models import VerificationRun
from verification.tasks import execute_verification_run


class VerificationRunModelTest(TestCase):
    def setUp(self):
        self.run = VerificationRun.objects.create(suite='sdp', d=6, params={'jobs': 2})

    def test_defaults(self):
        self.assertEqual(self.run.status, VerificationRun.Status.PENDING)
        self.assertIsNone(self.run.passed)
        self.assertFalse(self.run.is_finished)

    def test_str(self):
        self.assertEqual(str(self.run), 'sdp d=6 (pending)')
        self.run.k = 2
        self.assertEqual(str(self.run), 'sdp d=6 k=2 (pending)')

    def test_suite_options(self):
        self.assertEqual(self.run.suite_options(), {'jobs': 2, 'k': None, 'seed': None})

    def test_store_verdict(self):
        self.run.store_verdict({'passed': False, 'seed': 3, 'n_evaluations': 10, 'min_margin': -0.5, 'runtime_ms': 1.5})
        self.run.refresh_from_db()
        self.assertEqual(self.run.status, VerificationRun.Status.FAILED)
        self.assertFalse(self.run.passed)
        self.assertEqual(self.run.seed, 3)
        self.assertTrue(self.run.is_finished)
        self.assertIsNotNone(self.run.finished_at)

    def test_mark_error(self):
        self.run.mark_error('BadDimension: nope')
        self.run.refresh_from_db()
        self.assertEqual(self.run.status, VerificationRun.Status.ERROR)
        self.assertEqual(self.run.error_message, 'BadDimension: nope')


class VerificationTaskTest(TestCase):
    def test_runs_the_suite(self):
        run = VerificationRun.objects.create(suite='sdp', d=4)
        result = execute_verification_run(run.id)
        run.refresh_from_db()
        self.assertEqual(result, f'Verification run {run.id} passed')
        self.assertTrue(run.passed)
        self.assertEqual(run.report['details']['p_min'], '1/6')

    def test_missing_run(self):
        self.assertEqual(execute_verification_run(999), 'Verification run with id 999 not found')

    def test_domain_error_marks_the_run(self):
        run = VerificationRun.objects.create(suite='sixcond', d=4, k=1)
        result = execute_verification_run(run.id)
        run.refresh_from_db()
        self.assertTrue(result.startswith(f'Verification run {run.id} errored'))
        self.assertEqual(run.status, VerificationRun.Status.ERROR)
        self.assertTrue(run.error_message.startswith('UnsupportedRegion'))


class VerificationRunAPITest(TestCase):
    def setUp(self):
        self.client = APIClient()
        self.user = User.objects.create_user(
            username='testuser',
            email='test@example.com',
            password='testpass123'
        )

    def test_list_runs(self):
        VerificationRun.objects.create(suite='sdp', d=6)
        response = self.client.get('/api/runs/')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['count'], 1)

    def test_filter_runs(self):
        VerificationRun.objects.create(suite='sdp', d=6)
        VerificationRun.objects.create(suite='tables', d=8, k=3)
        response = self.client.get('/api/runs/', {'suite': 'tables'})
        self.assertEqual(response.data['count'], 1)
        self.assertEqual(response.data['results'][0]['k'], 3)

    @patch('verification.views.execute_verification_run.delay')
    def test_create_run_authenticated(self, mock_delay):
        self.client.force_authenticate(user=self.user)
        data = {'suite': 'kpos', 'd': 4, 'k': 2, 'seed': 7, 'params': {'frames': 100, 'tol': 1e-9}}
        response = self.client.post('/api/runs/', data, format='json')
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertEqual(response.data['status'], 'pending')
        run = VerificationRun.objects.get()
        mock_delay.assert_called_once_with(run.id)

    @patch('verification.views.execute_verification_run.delay')
    def test_create_run_with_suite_alias(self, mock_delay):
        self.client.force_authenticate(user=self.user)
        for suite in ('lemma-a2', 'frame-bounds'):
            response = self.client.post('/api/runs/', {'suite': suite, 'd': 6, 'k': 4}, format='json')
            self.assertEqual(response.status_code, status.HTTP_201_CREATED, suite)
            self.assertEqual(response.data['suite'], 'lemma-a2')
        self.assertEqual(VerificationRun.objects.filter(suite='lemma-a2').count(), 2)

    def test_create_run_unauthenticated(self):
        response = self.client.post('/api/runs/', {'suite': 'sdp', 'd': 6}, format='json')
        self.assertEqual(response.status_code, status.HTTP_403_FORBIDDEN)

    @patch('verification.views.execute_verification_run.delay')
    def test_create_run_rejects_bad_input(self, mock_delay):
        self.client.force_authenticate(user=self.user)
        for data in (
            {'suite': 'unknown', 'd': 6},
            {'suite': 'sdp', 'd': 7},
            {'suite': 'kpos', 'd': 4, 'k': 9},
            {'suite': 'sdp', 'd': 6, 'params': {'colour': 'red'}},
            {'suite': 'kpos', 'd': 4, 'params': {'tol': 0.5}},
        ):
            response = self.client.post('/api/runs/', data, format='json')
            self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST, data)
        mock_delay.assert_not_called()

    @patch('verification.views.execute_verification_run.delay')
    def test_rerun_finished_run(self, mock_delay):
        run = VerificationRun.objects.create(suite='sdp', d=6)
        run.mark_error('boom')
        self.client.force_authenticate(user=self.user)
        response = self.client.post(f'/api/runs/{run.id}/rerun/')
        self.assertEqual(response.status_code, status.HTTP_202_ACCEPTED)
        self.assertEqual(response.data['status'], 'pending')
        mock_delay.assert_called_once_with(run.id)

    @patch('verification.views.execute_verification_run.delay')
    def test_rerun_pending_run(self, mock_delay):
        run = VerificationRun.objects.create(suite='sdp', d=6)
        self.client.force_authenticate(user=self.user)
        response = self.client.post(f'/api/runs/{run.id}/rerun/')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        mock_delay.assert_not_called()
