from django.contrib import admin

from .models import VerificationRun


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ['suite', 'd', 'k', 'seed', 'status', 'passed', 'n_evaluations', 'runtime_ms', 'created_at']
    list_filter = ['suite', 'status', 'passed', 'd', 'created_at']
    search_fields = ['suite', 'error_message']
    readonly_fields = ['report', 'n_evaluations', 'min_margin', 'runtime_ms', 'created_at', 'finished_at']
    date_hierarchy = 'created_at'
    ordering = ['-created_at']
