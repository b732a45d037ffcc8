"""Exact rationals as "p/q" strings at every IO boundary."""
from fractions import Fraction
from typing import Annotated, Union

from pydantic import PlainSerializer, PlainValidator

from services.errors import OutOfRange


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise OutOfRange(f"refusing floating point value {value!r}; pass 'p/q'")
    text = str(value).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise OutOfRange(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _validate(value):
    try:
        return parse_rational(value)
    except OutOfRange as e:
        raise ValueError(e.detail)


Rational = Annotated[
    Fraction,
    PlainValidator(_validate),
    PlainSerializer(format_rational, return_type=str),
]
