import logging

from drf_spectacular.utils import OpenApiParameter, extend_schema
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from .exceptions import SympentError
from .regions import boundary_sample, classify
from .serializers import (
    BoundaryRequestSerializer,
    BoundarySerializer,
    ClassifyRequestSerializer,
    RegionReportSerializer,
)

logger = logging.getLogger(__name__)


def error_response(exc):
    logger.info('rejected request: %s', exc)
    return Response(
        {'detail': str(exc), 'error': type(exc).__name__},
        status=status.HTTP_400_BAD_REQUEST,
    )


class ClassifyView(APIView):
    permission_classes = [AllowAny]

    @extend_schema(
        summary='Classify a parameter point',
        description='Exact region memberships, maximal k-positivity and Schmidt numbers of (p, q) in dimension d.',
        request=ClassifyRequestSerializer,
        responses={200: RegionReportSerializer},
    )
    def post(self, request):
        serializer = ClassifyRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        try:
            report = classify(data['d'], (data['p'], data['q']), warnings=data['warnings'])
        except SympentError as exc:
            return error_response(exc)
        return Response(RegionReportSerializer(report).data)


class BoundaryView(APIView):
    permission_classes = [AllowAny]

    @extend_schema(
        summary='Boundary polyline of a region',
        parameters=[
            OpenApiParameter(name='d', type=int, required=True, description='Even dimension, at least 4'),
            OpenApiParameter(name='region', type=str, required=True, description='D, T, P<k> or S<k>'),
            OpenApiParameter(name='samples', type=int, required=False, description='Points per curved part (>= 8)'),
        ],
        responses={200: BoundarySerializer},
    )
    def get(self, request):
        serializer = BoundaryRequestSerializer(data=request.query_params)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        try:
            points = boundary_sample(data['d'], data['region'], data['samples'])
        except SympentError as exc:
            return error_response(exc)
        payload = {'d': data['d'], 'region': str(data['region']), 'points': points}
        return Response(BoundarySerializer(payload).data)
