"""Exact rational plumbing.

All coordinates in this package are :class:`fractions.Fraction` values.
Iterating a piecewise-linear map multiplies denominators, so any fixed
precision would eventually misclassify least periods; arbitrary-precision
rationals make every comparison in the package exact.

The textual form used on every external surface (map files, CLI flags,
reports) is ``"p/q"`` in lowest terms with positive ``q``, or a bare
integer ``"p"``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str, field: str = "rational") -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.

    ``field`` names the offending input in the error message, so CLI
    diagnostics can point at the flag or file key that was malformed.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise DomainError(f"{field}: not a rational 'p/q' or integer 'p': {text!r}")
    if "/" in s and s.split("/")[1] == "0":
        raise DomainError(f"{field}: zero denominator in {text!r}")
    return Fraction(s)


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``"p/q"`` in lowest terms, or ``"p"`` for integers."""
    return str(value)


def decimal12(value: Fraction) -> str:
    """Decimal rendering with 12 significant digits, for plot output only."""
    return f"{value.numerator / value.denominator:.12g}"
