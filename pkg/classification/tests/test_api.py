from django.test import TestCase
from rest_framework import status
from rest_framework.test import APIClient


class ClassifyAPITest(TestCase):
    def setUp(self):
        self.client = APIClient()

    def test_classify_pv_state(self):
        response = self.client.post('/api/classify/', {'d': 6, 'p': '1/8', 'q': '1/8'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['p'], '1/8')
        self.assertTrue(response.data['is_state'])
        self.assertTrue(response.data['ppt'])
        self.assertEqual(response.data['schmidt_number'], 3)
        self.assertEqual(response.data['warnings'], [])

    def test_classify_decimal_input_warns(self):
        response = self.client.post('/api/classify/', {'d': 4, 'p': '0.1', 'q': 0}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data['warnings']), 1)
        self.assertNotEqual(response.data['p'], '1/10')

    def test_classify_bad_dimension(self):
        response = self.client.post('/api/classify/', {'d': 5, 'p': '0', 'q': '0'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.data['error'], 'BadDimension')

    def test_classify_rejects_garbage(self):
        response = self.client.post('/api/classify/', {'d': 4, 'p': 'x', 'q': '0'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('p', response.data)


class BoundaryAPITest(TestCase):
    def setUp(self):
        self.client = APIClient()

    def test_ppt_boundary(self):
        response = self.client.get('/api/boundary/', {'d': 4, 'region': 'T', 'samples': 8})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['region'], 'T')
        self.assertEqual(len(response.data['points']), 4)
        self.assertEqual(set(response.data['points'][0]), {'x', 'y'})

    def test_unknown_region(self):
        response = self.client.get('/api/boundary/', {'d': 4, 'region': 'Q1'})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('region', response.data)

    def test_too_few_samples(self):
        response = self.client.get('/api/boundary/', {'d': 4, 'region': 'T', 'samples': 4})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
