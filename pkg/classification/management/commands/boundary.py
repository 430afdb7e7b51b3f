import logging
from pathlib import Path

from django.core.management.base import BaseCommand

from classification.cli import domain_error
from classification.exceptions import SympentError
from classification.export import to_csv, to_svg
from classification.regions import RegionId, boundary_sample

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Export the boundary polyline of D, T, P<k> or S<k> as CSV or SVG'

    def add_arguments(self, parser):
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--region', required=True, help='D, T, P<k>, Pk(<k>), S<k> or Sk(<k>)')
        parser.add_argument('--samples', type=int, default=64)
        parser.add_argument('--format', choices=['csv', 'svg'], default='csv')
        parser.add_argument('--out', default=None, help='Output file; stdout when omitted')

    def handle(self, *args, **options):
        d = options['d']
        try:
            region = RegionId.parse(options['region'], d)
            points = boundary_sample(d, region, options['samples'])
        except (SympentError, ValueError) as exc:
            raise domain_error(exc)
        writer = to_svg if options['format'] == 'svg' else to_csv
        text = writer(d, region, points)
        if options['out']:
            Path(options['out']).write_text(text)
            logger.info('wrote %d boundary points of %s to %s', len(points), region, options['out'])
        else:
            self.stdout.write(text, ending='')
