"""
Exact rational numbers and their text form.

Rationals travel through files and command output as strings ``"p/q"``
(``"p"`` when the denominator is 1). The annotated ``Rational`` type lets
pydantic models accept those strings, integers and decimal strings while
holding a ``Fraction`` internally.
"""

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Annotated, Any, Sequence, Union

from pydantic import PlainSerializer, PlainValidator

Number = Union[Fraction, float]


def to_fraction(value: Any) -> Fraction:
    """Parse ``value`` into a Fraction; floats go through their shortest repr."""
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, _RationalABC):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {value!r}") from e
    raise ValueError(f"not a rational: {value!r}")


def format_fraction(value: Fraction) -> str:
    return str(Fraction(value))


def format_number(value: Any, digits: int = 12) -> Union[str, float]:
    """Exact values become ``"p/q"`` strings, floats keep ``digits`` significant digits."""
    if isinstance(value, float):
        return float(f"{value:.{digits}g}")
    return format_fraction(value)


def parse_point(text: str) -> tuple[Fraction, ...]:
    """Parse ``"1/2,0,3/4"`` into a tuple of Fractions."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    return tuple(to_fraction(p) for p in parts)


def as_fractions(values: Sequence[Any]) -> tuple[Fraction, ...]:
    return tuple(to_fraction(v) for v in values)


Rational = Annotated[
    Fraction,
    PlainValidator(to_fraction),
    PlainSerializer(format_fraction, return_type=str),
]
