from fractions import Fraction

import numpy as np
from rest_framework import serializers

from classification.exceptions import SympentError
from classification.rational import RationalPoint2, check_dimension, check_index, fraction_str

from .models import VerificationRun
from .suites import SUITE_NAMES, canonical_suite

SUITE_OPTION_KEYS = ('frames', 'grid', 'samples', 'tol', 'jobs')


def to_jsonable(value):
    """Rationals as 'num/den', points as pairs, matrices as row-major [re, im] entries."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, RationalPoint2):
        return [fraction_str(value.x), fraction_str(value.y)]
    if isinstance(value, np.ndarray):
        if value.ndim == 2:
            return {
                'rows': value.shape[0],
                'cols': value.shape[1],
                'entries': [[float(z.real), float(z.imag)] for z in value.astype(complex).ravel()],
            }
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return value


class VerdictSerializer(serializers.Serializer):
    suite = serializers.CharField()
    d = serializers.IntegerField()
    k = serializers.IntegerField(allow_null=True)
    params = serializers.SerializerMethodField()
    passed = serializers.BooleanField()
    n_evaluations = serializers.IntegerField()
    min_margin = serializers.FloatField(allow_null=True)
    seed = serializers.IntegerField(allow_null=True)
    runtime_ms = serializers.FloatField(allow_null=True)
    counterexample = serializers.SerializerMethodField()
    details = serializers.SerializerMethodField()

    def get_params(self, obj):
        return to_jsonable(obj.params)

    def get_counterexample(self, obj):
        return to_jsonable(obj.counterexample)

    def get_details(self, obj):
        return to_jsonable(obj.details)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        if instance.counterexample is None:
            data.pop('counterexample')
        if not self.context.get('timing', True):
            data.pop('runtime_ms')
        if instance.summary:
            ordered = {}
            for name, value in data.items():
                if name == 'passed':
                    ordered.update(to_jsonable(instance.summary))
                ordered[name] = value
            data = ordered
        return data


class VerificationRunSerializer(serializers.ModelSerializer):
    class Meta:
        model = VerificationRun
        fields = [
            'id', 'suite', 'd', 'k', 'seed', 'params', 'status', 'passed',
            'n_evaluations', 'min_margin', 'runtime_ms', 'report',
            'error_message', 'created_at', 'finished_at',
        ]
        read_only_fields = fields


class VerificationRunCreateSerializer(serializers.ModelSerializer):
    suite = serializers.ChoiceField(choices=SUITE_NAMES)

    class Meta:
        model = VerificationRun
        fields = ['id', 'suite', 'd', 'k', 'seed', 'params', 'status']
        read_only_fields = ['id', 'status']

    def validate_suite(self, value):
        return canonical_suite(value)

    def validate_params(self, value):
        unknown = set(value) - set(SUITE_OPTION_KEYS)
        if unknown:
            raise serializers.ValidationError(f'unknown suite options: {", ".join(sorted(unknown))}')
        for key in ('frames', 'grid', 'samples', 'jobs'):
            if key in value and (not isinstance(value[key], int) or value[key] < 1):
                raise serializers.ValidationError(f'{key} must be a positive integer')
        if 'tol' in value and not (isinstance(value['tol'], (int, float)) and 0 < value['tol'] <= 1e-3):
            raise serializers.ValidationError('tol must lie in (0, 1e-3]')
        return value

    def validate(self, attrs):
        try:
            check_dimension(attrs['d'])
            if attrs.get('k') is not None:
                check_index(attrs['d'], attrs['k'])
        except SympentError as exc:
            raise serializers.ValidationError({'detail': str(exc), 'error': type(exc).__name__})
        return attrs
