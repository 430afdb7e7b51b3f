import django_filters

from .models import VerificationRun


class VerificationRunFilter(django_filters.FilterSet):
    created_from = django_filters.DateTimeFilter(field_name='created_at', lookup_expr='gte')
    created_to = django_filters.DateTimeFilter(field_name='created_at', lookup_expr='lte')
    finished = django_filters.BooleanFilter(method='filter_finished')

    class Meta:
        model = VerificationRun
        fields = ['suite', 'd', 'k', 'status', 'passed']

    def filter_finished(self, queryset, name, value):
        return queryset.filter(finished_at__isnull=not value)
