from django.core.management.base import BaseCommand

from classification.cli import RationalArgumentsMixin, domain_error, rational_arg, render_json
from classification.exceptions import SympentError
from classification.rational import decimal_warnings
from classification.regions import classify
from classification.serializers import RegionReportSerializer


class Command(RationalArgumentsMixin, BaseCommand):
    help = 'Classify the parameter point (p, q) of the covariant map / invariant state in dimension d'

    def add_arguments(self, parser):
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--p', type=rational_arg, required=True)
        parser.add_argument('--q', type=rational_arg, required=True)

    def handle(self, *args, **options):
        p, q = options['p'], options['q']
        warnings = decimal_warnings(p=p.text, q=q.text)
        try:
            report = classify(options['d'], (p.value, q.value), warnings=warnings)
        except SympentError as exc:
            raise domain_error(exc)
        self.stdout.write(render_json(RegionReportSerializer(report).data))
