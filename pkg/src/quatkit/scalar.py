"""Scalar modes: exact rationals or binary floats, never mixed.

Exact values are :class:`fractions.Fraction` (arbitrary precision, always in
lowest terms with a positive denominator). Float values are Python floats.
Plain ``int`` is accepted on input in either mode and converted.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Union

from .errors import ModeMismatchError

Scalar = Union[Fraction, float]


class Mode(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def mode_of(value) -> Mode | None:
    """Mode a raw value forces, or None for a mode-neutral int."""
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, Fraction):
        return Mode.EXACT
    if isinstance(value, float):
        return Mode.FLOAT
    if isinstance(value, int):
        return None
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def infer_mode(values) -> Mode:
    found = {m for m in map(mode_of, values) if m is not None}
    if len(found) > 1:
        raise ModeMismatchError("exact and float scalars mixed")
    return found.pop() if found else Mode.EXACT


def coerce(value, mode: Mode) -> Scalar:
    """Bring ``value`` into ``mode``; only ints cross modes implicitly."""
    m = mode_of(value)
    if m is not None and m is not mode:
        raise ModeMismatchError(f"{m.value} scalar used in {mode.value} context")
    if mode is Mode.EXACT:
        return Fraction(value)
    return float(value)


def to_mode(value: Scalar, mode: Mode) -> Scalar:
    """Explicit (possibly lossy) conversion between modes."""
    if mode is Mode.EXACT:
        if isinstance(value, float) and not math.isfinite(value):
            raise ValueError("cannot convert non-finite float to an exact rational")
        return Fraction(value)
    return float(value)


def parse_scalar(text: str, mode: Mode) -> Scalar:
    """Parse ``"n"``, ``"n/d"`` or a decimal literal."""
    text = text.strip()
    if mode is Mode.EXACT:
        return Fraction(text)
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def render_scalar(value: Scalar) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return repr(float(value))
