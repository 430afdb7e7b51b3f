import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from classification import families
from classification.cli import RationalArgumentsMixin, domain_error, rational_arg
from classification.exceptions import BadIndex, SympentError
from classification.rational import RationalPoint2, check_dimension
from verification.matrix_io import dumps
from verification.operators import rho_state

logger = logging.getLogger(__name__)


class Command(RationalArgumentsMixin, BaseCommand):
    help = 'Write the Choi matrix of the k-Breuer-Hall map, the k-reduction map or L_{p,q}'

    def add_arguments(self, parser):
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--k', type=int, default=None)
        parser.add_argument('--kind', choices=['kbh', 'kred', 'custom'], required=True)
        parser.add_argument('--p', type=rational_arg, default=None)
        parser.add_argument('--q', type=rational_arg, default=None)
        parser.add_argument('--out', default=None, help='Output file; stdout when omitted')

    def handle(self, *args, **options):
        d, k, kind = options['d'], options['k'], options['kind']
        try:
            point = self.point(d, k, kind, options)
            matrix = rho_state(d, point.x, point.y)
        except SympentError as exc:
            raise domain_error(exc)

        text = dumps(matrix)
        if options['out']:
            Path(options['out']).write_text(text)
            logger.info('wrote %s Choi matrix at (%s, %s) to %s', kind, point.x, point.y, options['out'])
        else:
            self.stdout.write(text, ending='')

    def point(self, d, k, kind, options):
        check_dimension(d)
        if kind == 'custom':
            if options['p'] is None or options['q'] is None:
                raise CommandError('--kind custom needs --p and --q', returncode=2)
            return RationalPoint2(options['p'].value, options['q'].value)
        if k is None:
            raise CommandError(f'--kind {kind} needs --k', returncode=2)
        if kind == 'kbh' and not 1 <= k <= d // 2 - 1:
            raise BadIndex(f'the k-Breuer-Hall map needs 1 <= k <= d/2-1, got k={k} for d={d}')
        if kind == 'kbh':
            return families.k_breuer_hall(d, k)
        return families.k_reduction(d, k)
