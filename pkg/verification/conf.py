"""Numeric defaults, read lazily from Django settings."""
from django.conf import settings


def structural_tol():
    return settings.SYMPENT_STRUCTURAL_TOL


def eigen_tol():
    return settings.SYMPENT_EIGEN_TOL


def violation_tol():
    return settings.SYMPENT_VIOLATION_TOL


def curve_samples():
    return settings.SYMPENT_CURVE_SAMPLES


def default_jobs():
    return max(1, settings.SYMPENT_JOBS)


def report_timing():
    return settings.SYMPENT_REPORT_TIMING


def resolve_seed(seed=None):
    """SYMPENT_SEED wins over an explicit seed, which wins over the default."""
    if settings.SYMPENT_SEED is not None:
        return settings.SYMPENT_SEED
    if seed is not None:
        return seed
    return settings.SYMPENT_DEFAULT_SEED
