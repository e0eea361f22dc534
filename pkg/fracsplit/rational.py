# encoding: utf-8
""" Exact rational helpers.

Orders, exponents and s-domain coefficients are kept as
:py:class:`fractions.Fraction` values. These helpers parse user input without
a binary float round trip, and format fractions as ``"p/q"`` strings.

>>> to_fraction('3/2')
Fraction(3, 2)
>>> to_fraction('0.3')
Fraction(3, 10)
>>> format_fraction(Fraction(-7, 4))
'-7/4'

"""
import math
import numbers
from fractions import Fraction


def to_fraction(value):
    """ Parse a value into an exact fraction.

    :param value:
        An int, a Fraction, a string like ``"3/2"``, ``"-1.25"`` or ``"4"``,
        or a float (which is read through its shortest ``repr``).

    :raise ValueError: If the value cannot be read as a rational number.
    :rtype: fractions.Fraction
    """
    if isinstance(value, bool):
        raise ValueError("Invalid rational {!r}".format(value))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("Invalid rational {!r}".format(value))
        return Fraction(repr(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError("Invalid rational {!r}".format(value))
    raise ValueError("Invalid rational {!r}".format(value))


def format_fraction(value):
    """ Format a rational as ``"p/q"``, or ``"p"`` if it is an integer. """
    value = to_fraction(value)
    if value.denominator == 1:
        return '{:d}'.format(value.numerator)
    return '{:d}/{:d}'.format(value.numerator, value.denominator)


def is_integer(value):
    """ Check if a rational is an integer. """
    return to_fraction(value).denominator == 1


def ceil_int(value):
    """ Exact ceiling of a rational. """
    value = to_fraction(value)
    return -((-value.numerator) // value.denominator)
