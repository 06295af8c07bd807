"""Scalar fields: exact rationals or IEEE doubles, plus literal parsing/formatting."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "INFINITE",
    "ScalarField",
    "EXACT",
    "FLOAT",
    "parse_length",
    "format_exact",
    "format_decimal",
    "format_scalar",
]

#: Sentinel for an infinite resistance (bridges). Compares greater than every scalar.
INFINITE = math.inf

_RATIONAL = re.compile(r"^[+-]?\d+/\d+$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


@dataclass(frozen=True)
class ScalarField:
    """Arithmetic backend used for matrices and invariants.

    ``kind`` is ``"exact"`` (``Fraction``) or ``"float"``. ``tolerance`` is the
    relative threshold used by :meth:`close`; it must be 0 for exact fields and
    positive for float fields.
    """

    kind: str
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise ValueError(f"unknown scalar field kind {self.kind!r}")
        if self.kind == "exact" and self.tolerance != 0:
            raise ValueError("exact field must have tolerance 0")
        if self.kind == "float" and not self.tolerance > 0:
            raise ValueError("float field needs a positive tolerance")

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    def convert(self, x):
        if x == INFINITE:
            return INFINITE
        return Fraction(x) if self.exact else float(x)

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def one(self):
        return Fraction(1) if self.exact else 1.0

    def close(self, a, b, scale=1) -> bool:
        """Equality in this field: exact, or relative within ``tolerance``.

        ``scale`` is a floor on the magnitude used for the relative test, so
        quantities that should vanish are compared against the size of the
        terms that produced them.
        """
        if self.exact:
            return a == b
        if a == b:
            return True
        mag = max(abs(a), abs(b), abs(scale))
        return abs(a - b) <= self.tolerance * mag


EXACT = ScalarField("exact", 0)
FLOAT = ScalarField("float", 1e-9)


def parse_length(text: str) -> Fraction:
    """Parse ``p/q`` or a decimal literal into an exact ``Fraction``.

    Raises ``ValueError`` for anything else (including a zero denominator).
    """
    s = text.strip()
    if _RATIONAL.match(s):
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    if _DECIMAL.match(s):
        return Fraction(s)
    raise ValueError(f"not a rational or decimal literal: {text!r}")


def format_exact(x) -> str:
    if x == INFINITE:
        return "inf"
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return format_decimal(x)


def format_decimal(x, digits: int = 12) -> str:
    if x == INFINITE:
        return "inf"
    return f"{float(x):.{digits}g}"


def format_scalar(x, digits: int = 12) -> str:
    """``p/q`` for rationals, ``digits`` significant digits for floats."""
    if isinstance(x, (Fraction, int)):
        return format_exact(x)
    return format_decimal(x, digits)
