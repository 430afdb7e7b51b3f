"""
Exact numbers for the (p,q)/(a,b) parameter plane.

Everything here is Fraction-based. Floats are accepted but converted from
their exact binary value, so callers decide how to round.
"""
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

from .exceptions import BadDimension, BadIndex


def as_fraction(value):
    """Convert an int, Fraction, float, Decimal or 'num/den' string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError('booleans are not parameters')
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Real):
        return Fraction(value)
    raise TypeError(f'cannot convert {type(value).__name__} to a rational')


def parse_rational(text):
    """
    Parse '1/8', '-3', '0.125' or '1e-3'.

    Ratios and integers are exact. Decimal literals are read as a double first
    and then converted from its exact binary value, so '0.1' is not 1/10;
    callers that care pass ratios. Raises ValueError on anything else.
    """
    text = text.strip()
    if not text:
        raise ValueError('empty rational')
    if is_decimal_literal(text):
        try:
            return Fraction(float(text))
        except OverflowError as exc:
            raise ValueError(f'{text!r} is not finite') from exc
    return Fraction(text)


def is_decimal_literal(text):
    return '/' not in text and any(ch in text for ch in '.eE')


def fraction_str(value):
    """Reduced 'num/den' (or plain integer) representation."""
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


@dataclass(frozen=True, order=True)
class RationalPoint2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        # Fraction is always stored reduced with a positive denominator
        object.__setattr__(self, 'x', as_fraction(self.x))
        object.__setattr__(self, 'y', as_fraction(self.y))

    @classmethod
    def of(cls, x, y):
        return cls(as_fraction(x), as_fraction(y))

    def swap(self):
        return RationalPoint2(self.y, self.x)

    def scaled(self, factor):
        factor = as_fraction(factor)
        return RationalPoint2(self.x * factor, self.y * factor)

    def __add__(self, other):
        return RationalPoint2(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return RationalPoint2(self.x - other.x, self.y - other.y)

    def as_floats(self):
        return float(self.x), float(self.y)

    def __iter__(self):
        yield self.x
        yield self.y

    def __str__(self):
        return f'({fraction_str(self.x)}, {fraction_str(self.y)})'


def point(value):
    """Coerce a RationalPoint2 or a pair into a RationalPoint2."""
    if isinstance(value, RationalPoint2):
        return value
    x, y = value
    return RationalPoint2.of(x, y)


def check_dimension(d):
    if isinstance(d, bool) or not isinstance(d, int):
        raise BadDimension(f'dimension must be an integer, got {d!r}')
    if d < 4 or d % 2:
        raise BadDimension(f'dimension must be an even integer >= 4, got {d}')
    return d


def check_index(d, k):
    if isinstance(k, bool) or not isinstance(k, int):
        raise BadIndex(f'k must be an integer, got {k!r}')
    if not 1 <= k <= d:
        raise BadIndex(f'k must lie in [1, {d}], got {k}')
    return k


def decimal_warnings(**raw):
    """Warnings for inputs that went through a double on the way in."""
    return [
        f'{name}={value} was read as a double and converted exactly from its binary value'
        for name, value in raw.items()
        if isinstance(value, float) or (isinstance(value, str) and is_decimal_literal(value))
    ]
