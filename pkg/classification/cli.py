"""Helpers shared by the management commands of both apps."""
import argparse
import re
from dataclasses import dataclass
from fractions import Fraction

from django.core.management.base import CommandError
from rest_framework.renderers import JSONRenderer

from .exceptions import SympentError
from .rational import parse_rational


@dataclass(frozen=True)
class RationalArg:
    value: Fraction
    text: str


def rational_arg(text):
    try:
        return RationalArg(parse_rational(text), text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f'not a rational: {text!r}') from exc


def tolerance_arg(text):
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f'not a tolerance: {text!r}') from exc
    if not 0 < value <= 1e-3:
        raise argparse.ArgumentTypeError(f'tolerance must lie in (0, 1e-3], got {text}')
    return value


def render_json(data):
    return JSONRenderer().render(data).decode('utf-8')


def domain_error(exc):
    code = exc.exit_code if isinstance(exc, SympentError) else 3
    return CommandError(f'{type(exc).__name__}: {exc}', returncode=code)


class RationalArgumentsMixin:
    """Lets '--p -1/2' parse as a value rather than as an unknown option."""

    negative_number = re.compile(r'^-\d+$|^-\d*\.\d+([eE][-+]?\d+)?$|^-\d+/\d+$')

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser._negative_number_matcher = self.negative_number
        return parser
