import logging

from celery import shared_task

from classification.exceptions import SympentError

from .models import VerificationRun
from .serializers import VerdictSerializer
from .suites import run_suite

logger = logging.getLogger(__name__)


def execute_run(run):
    """Run the suite of a persisted run and store its verdict."""
    run.status = VerificationRun.Status.RUNNING
    run.save(update_fields=['status'])
    verdict = run_suite(run.suite, run.d, **run.suite_options())
    run.store_verdict(VerdictSerializer(verdict).data)
    return run


@shared_task
def execute_verification_run(run_id):
    try:
        run = VerificationRun.objects.get(id=run_id)
    except VerificationRun.DoesNotExist:
        return f'Verification run with id {run_id} not found'

    try:
        execute_run(run)
    except (SympentError, ValueError) as exc:
        logger.warning('verification run %s failed to execute: %s', run_id, exc)
        run.mark_error(f'{type(exc).__name__}: {exc}')
        return f'Verification run {run_id} errored: {exc}'
    except Exception as exc:
        logger.exception('verification run %s crashed', run_id)
        run.mark_error(f'{type(exc).__name__}: {exc}')
        return f'Error executing verification run {run_id}: {exc}'

    return f'Verification run {run_id} {run.status}'
