from django.core.validators import MinValueValidator
from django.db import models
from django.utils import timezone

SUITE_CHOICES = [
    ('kpos', 'k-positivity oracle agreement'),
    ('sixcond', 'Six-condition system'),
    ('pairing', 'Witness pairing'),
    ('twirl', 'Monte-Carlo twirl'),
    ('pptsq', 'PPT-squared compositions'),
    ('sdp', 'Optimal antisymmetric PPT fraction'),
    ('lemma-a2', 'Frame pairing bounds'),
    ('tables', 'Tangent tables'),
    ('high-sn', 'High Schmidt number states'),
    ('duality', 'Witness duality'),
    ('dualcurve', 'Parametric dual curves'),
]


class VerificationRun(models.Model):
    class Status(models.TextChoices):
        PENDING = 'pending', 'Pending'
        RUNNING = 'running', 'Running'
        PASSED = 'passed', 'Passed'
        FAILED = 'failed', 'Failed'
        ERROR = 'error', 'Error'

    suite = models.CharField(max_length=32, choices=SUITE_CHOICES, db_index=True)
    d = models.PositiveIntegerField(validators=[MinValueValidator(4)])
    k = models.PositiveIntegerField(null=True, blank=True, validators=[MinValueValidator(1)])
    seed = models.BigIntegerField(null=True, blank=True)
    params = models.JSONField(default=dict, blank=True)
    status = models.CharField(max_length=16, choices=Status.choices, default=Status.PENDING, db_index=True)
    passed = models.BooleanField(null=True, blank=True)
    n_evaluations = models.BigIntegerField(default=0)
    min_margin = models.FloatField(null=True, blank=True)
    runtime_ms = models.FloatField(null=True, blank=True)
    report = models.JSONField(default=dict, blank=True)
    error_message = models.TextField(blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['suite', 'd'], name='run_suite_d_idx'),
            models.Index(fields=['status', 'created_at'], name='run_status_created_idx'),
        ]

    def __str__(self):
        k = f' k={self.k}' if self.k else ''
        return f'{self.suite} d={self.d}{k} ({self.status})'

    @property
    def is_finished(self):
        return self.status in (self.Status.PASSED, self.Status.FAILED, self.Status.ERROR)

    def suite_options(self):
        options = dict(self.params)
        options.update(k=self.k, seed=self.seed)
        return options

    def store_verdict(self, report):
        """Copy a serialized verdict onto the run and save it."""
        self.report = report
        self.passed = report['passed']
        self.status = self.Status.PASSED if self.passed else self.Status.FAILED
        self.seed = report.get('seed')
        self.n_evaluations = report.get('n_evaluations', 0)
        self.min_margin = report.get('min_margin')
        self.runtime_ms = report.get('runtime_ms')
        self.error_message = ''
        self.finished_at = timezone.now()
        self.save()

    def mark_error(self, message):
        self.status = self.Status.ERROR
        self.passed = None
        self.error_message = message
        self.finished_at = timezone.now()
        self.save()
