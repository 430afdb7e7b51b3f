from fractions import Fraction

from rest_framework import serializers

from .rational import decimal_warnings, fraction_str, parse_rational
from .regions import RegionId
from .exceptions import UnsupportedRegion


class RationalField(serializers.Field):
    """Exact rational carried as a reduced 'num/den' string."""

    default_error_messages = {
        'invalid': 'Expected a rational such as "1/8", "-3" or a decimal literal.',
    }

    def to_representation(self, value):
        return fraction_str(value)

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, int):
            return Fraction(data)
        if isinstance(data, float):
            return Fraction(data)
        try:
            return parse_rational(str(data))
        except (ValueError, ZeroDivisionError):
            self.fail('invalid')


class RegionReportSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    p = RationalField(source='point.x')
    q = RationalField(source='point.y')
    is_state = serializers.BooleanField()
    co_cp = serializers.BooleanField()
    max_kpos = serializers.IntegerField()
    decomposable = serializers.BooleanField()
    ppt = serializers.BooleanField()
    entanglement_breaking = serializers.BooleanField()
    k_atomic = serializers.IntegerField()
    schmidt_number = serializers.IntegerField(allow_null=True)
    schmidt_number_gamma = serializers.IntegerField(allow_null=True)
    warnings = serializers.ListField(child=serializers.CharField())


class ClassifyRequestSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    p = RationalField()
    q = RationalField()

    def validate(self, attrs):
        raw = self.initial_data
        attrs['warnings'] = decimal_warnings(p=raw.get('p'), q=raw.get('q'))
        return attrs


class BoundaryRequestSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    region = serializers.CharField()
    samples = serializers.IntegerField(min_value=8, default=64)

    def validate(self, attrs):
        try:
            attrs['region'] = RegionId.parse(attrs['region'], attrs['d'])
        except UnsupportedRegion as exc:
            raise serializers.ValidationError({'region': str(exc)})
        return attrs


class BoundaryPointSerializer(serializers.Serializer):
    x = RationalField()
    y = RationalField()


class BoundarySerializer(serializers.Serializer):
    d = serializers.IntegerField()
    region = serializers.CharField()
    points = BoundaryPointSerializer(many=True)
