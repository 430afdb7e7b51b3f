# Generated by Django 5.2.4

import django.core.validators
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('suite', models.CharField(choices=[('kpos', 'k-positivity oracle agreement'), ('sixcond', 'Six-condition system'), ('pairing', 'Witness pairing'), ('twirl', 'Monte-Carlo twirl'), ('pptsq', 'PPT-squared compositions'), ('sdp', 'Optimal antisymmetric PPT fraction'), ('lemma-a2', 'Frame pairing bounds'), ('tables', 'Tangent tables'), ('high-sn', 'High Schmidt number states'), ('duality', 'Witness duality'), ('dualcurve', 'Parametric dual curves')], db_index=True, max_length=32)),
                ('d', models.PositiveIntegerField(validators=[django.core.validators.MinValueValidator(4)])),
                ('k', models.PositiveIntegerField(blank=True, null=True, validators=[django.core.validators.MinValueValidator(1)])),
                ('seed', models.BigIntegerField(blank=True, null=True)),
                ('params', models.JSONField(blank=True, default=dict)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('passed', 'Passed'), ('failed', 'Failed'), ('error', 'Error')], db_index=True, default='pending', max_length=16)),
                ('passed', models.BooleanField(blank=True, null=True)),
                ('n_evaluations', models.BigIntegerField(default=0)),
                ('min_margin', models.FloatField(blank=True, null=True)),
                ('runtime_ms', models.FloatField(blank=True, null=True)),
                ('report', models.JSONField(blank=True, default=dict)),
                ('error_message', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.AddIndex(
            model_name='verificationrun',
            index=models.Index(fields=['suite', 'd'], name='run_suite_d_idx'),
        ),
        migrations.AddIndex(
            model_name='verificationrun',
            index=models.Index(fields=['status', 'created_at'], name='run_status_created_idx'),
        ),
    ]
