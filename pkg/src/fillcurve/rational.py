"""Exact rational helpers shared across the package.

Every coordinate, length and area in this library is a `fractions.Fraction`.
The helpers here handle the "num/den" wire encoding used by all JSON/CSV
surfaces and the decimal rendering used only when serializing coordinates
for display (SVG, optional CSV columns).
"""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse a 'num/den' string (or bare integer string) into a Fraction.

    Decimal points and exponents are rejected: inputs are exact by contract.
    """
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r} (use num/den)")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def rational_str(value: Fraction | int) -> str:
    """Canonical 'num/den' form, always with an explicit denominator."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def decimal_str(value: Fraction | int, significant_digits: int = 12) -> str:
    """Round a rational to decimal with round-half-even at the given
    number of significant digits, rendered as a plain (non-exponent) string
    with trailing zeros stripped.  Pure function of its inputs.
    """
    f = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = significant_digits
        ctx.rounding = ROUND_HALF_EVEN
        d = Decimal(f.numerator) / Decimal(f.denominator)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s if s not in ("", "-") else "0"
