from drf_spectacular.utils import OpenApiParameter, extend_schema, extend_schema_view
from rest_framework import mixins, status, viewsets
from rest_framework.decorators import action
from rest_framework.permissions import AllowAny, IsAuthenticated
from rest_framework.response import Response

from .filters import VerificationRunFilter
from .models import VerificationRun
from .serializers import VerificationRunCreateSerializer, VerificationRunSerializer
from .tasks import execute_verification_run


@extend_schema_view(
    list=extend_schema(
        summary='List verification runs',
        description='Paginated persisted runs, newest first',
        parameters=[
            OpenApiParameter(name='suite', type=str, description='Filter by suite name', required=False),
            OpenApiParameter(name='d', type=int, description='Filter by dimension', required=False),
            OpenApiParameter(name='status', type=str, description='pending, running, passed, failed or error', required=False),
            OpenApiParameter(name='passed', type=bool, description='Filter by verdict', required=False),
            OpenApiParameter(name='ordering', type=str, description='Order by: created_at, -created_at, runtime_ms, d', required=False),
        ],
    ),
    retrieve=extend_schema(summary='Get a verification run with its full report'),
    create=extend_schema(
        summary='Queue a verification run',
        description='Stores a pending run and hands it to the Celery worker.',
        request=VerificationRunCreateSerializer,
        responses={201: VerificationRunSerializer},
    ),
)
@extend_schema(tags=['Verification'])
class VerificationRunViewSet(mixins.CreateModelMixin, viewsets.ReadOnlyModelViewSet):
    queryset = VerificationRun.objects.all()
    filterset_class = VerificationRunFilter
    ordering_fields = ['created_at', 'runtime_ms', 'd']

    def get_serializer_class(self):
        if self.action == 'create':
            return VerificationRunCreateSerializer
        return VerificationRunSerializer

    def get_permissions(self):
        if self.action in ['list', 'retrieve']:
            return [AllowAny()]
        return [IsAuthenticated()]

    def create(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        run = serializer.save()
        execute_verification_run.delay(run.id)
        return Response(VerificationRunSerializer(run).data, status=status.HTTP_201_CREATED)

    @extend_schema(summary='Run a finished verification again', request=None, responses={202: VerificationRunSerializer})
    @action(detail=True, methods=['post'])
    def rerun(self, request, pk=None):
        run = self.get_object()
        if not run.is_finished:
            return Response(
                {'detail': 'This run has not finished yet.'},
                status=status.HTTP_400_BAD_REQUEST
            )
        run.status = VerificationRun.Status.PENDING
        run.passed = None
        run.finished_at = None
        run.save(update_fields=['status', 'passed', 'finished_at'])
        execute_verification_run.delay(run.id)
        return Response(VerificationRunSerializer(run).data, status=status.HTTP_202_ACCEPTED)
