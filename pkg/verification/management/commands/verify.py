import logging

from django.core.management.base import BaseCommand, CommandError

from classification.cli import domain_error, render_json, tolerance_arg
from classification.exceptions import SympentError
from verification import conf
from verification.models import VerificationRun
from verification.serializers import SUITE_OPTION_KEYS, VerdictSerializer
from verification.suites import SUITE_NAMES, canonical_suite, run_suite

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Run a named verification suite and print its verdict as JSON (exit 1 when it fails)'

    def add_arguments(self, parser):
        parser.add_argument('--suite', required=True, choices=SUITE_NAMES)
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--k', type=int, default=None)
        parser.add_argument('--frames', type=int, default=None, help='Sampled frames per grid point')
        parser.add_argument('--grid', type=int, default=None, help='Grid points per side')
        parser.add_argument('--samples', type=int, default=None)
        parser.add_argument('--seed', type=int, default=None, help='Overridden by SYMPENT_SEED')
        parser.add_argument('--tol', type=tolerance_arg, default=None)
        parser.add_argument('--jobs', type=int, default=None)
        parser.add_argument('--save', action='store_true', help='Persist the verdict as a VerificationRun')
        parser.add_argument('--no-timing', action='store_true', help='Leave runtime_ms out of the output')

    def handle(self, *args, **options):
        suite, d = canonical_suite(options['suite']), options['d']
        suite_options = {key: options[key] for key in SUITE_OPTION_KEYS if options[key] is not None}
        try:
            verdict = run_suite(suite, d, k=options['k'], seed=options['seed'], **suite_options)
        except (SympentError, ValueError) as exc:
            raise domain_error(exc)

        timing = conf.report_timing() and not options['no_timing']
        data = VerdictSerializer(verdict, context={'timing': timing}).data
        if options['save']:
            run = VerificationRun.objects.create(
                suite=suite, d=d, k=options['k'], seed=verdict.seed, params=suite_options,
            )
            run.store_verdict(data)
            logger.info('saved verdict as verification run %s', run.id)

        self.stdout.write(render_json(data))
        if not verdict.passed:
            raise CommandError(f'suite {suite} failed for d={d}', returncode=1)
