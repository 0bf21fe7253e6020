"""Exact rational helpers and certified bisection.

All scalars in this package are :class:`fractions.Fraction` values.  Decimal
text only appears at the display boundary (:func:`to_decimal`).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

Rational = Fraction

_RATIONAL_RE = re.compile(r"-?[0-9]+(?:/[0-9]+)?")


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class BracketError(ValueError):
    """The initial bracket does not satisfy f(lo) >= 0 >= f(hi)."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction.

    Floats are refused: they would smuggle rounding into the core.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (base 10, optional leading ``-``)."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_decimal(x: Fraction, digits: int = 15, mode: str = "round") -> str:
    """Render ``x`` with exactly ``digits`` fractional digits.

    ``mode`` is ``"round"`` (half away from zero) or ``"truncate"``.
    """
    if digits < 0:
        raise DomainError("digits must be >= 0")
    x = as_rational(x)
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**digits
    if mode == "round":
        units = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    elif mode == "truncate":
        units = scaled.numerator // scaled.denominator
    else:
        raise ValueError(f"unknown rounding mode {mode!r}")
    whole, frac = divmod(units, 10**digits)
    if units == 0:
        sign = ""
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def floor_ratio(b, a) -> int:
    """Return floor(b / a) exactly, for a > 0 and b >= 0."""
    a, b = as_rational(a), as_rational(b)
    if a <= 0:
        raise DomainError(f"floor_ratio needs a > 0, got {a}")
    if b < 0:
        raise DomainError(f"floor_ratio needs b >= 0, got {b}")
    # (b.n / b.d) / (a.n / a.d) without building the intermediate Fraction
    return (b.numerator * a.denominator) // (b.denominator * a.numerator)


@dataclass(frozen=True)
class Bracket:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= as_rational(x) <= self.hi


def bisect_decreasing(
    f: Callable[[Fraction], Fraction], bracket0: Bracket, tol
) -> Bracket:
    """Shrink a sign-change bracket of a decreasing function to width <= tol.

    Every sign test is an exact rational evaluation, so the returned bracket
    satisfies ``f(lo) >= 0 >= f(hi)`` with no rounding caveat.
    """
    tol = as_rational(tol)
    if tol <= 0:
        raise DomainError("tol must be positive")
    lo, hi = bracket0.lo, bracket0.hi
    if f(lo) < 0 or f(hi) > 0:
        raise BracketError(f"f does not change sign on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return Bracket(lo, hi)
