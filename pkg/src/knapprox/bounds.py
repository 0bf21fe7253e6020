"""Exact value of alpha_mn, the worst precision over m-row, n-column instances.

With n = q*m + r, 0 <= r < m::

    alpha_mn = alpha_1q / (m + r * (alpha_1q / alpha_1,q+1 - 1))
             = 1 / (r / alpha_1,q+1 + (m - r) / alpha_1q)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import DomainError, to_decimal
from .sequences import ALPHA1_INF_DIGITS, alpha1

_ALPHA1_INF = Fraction(int(ALPHA1_INF_DIGITS.replace("0.", "", 1)), 10**15)


class BoundMismatch(AssertionError):
    """The two closed forms of alpha_mn disagree (never expected)."""


@dataclass(frozen=True)
class BoundBreakdown:
    m: int
    n: int
    q: int
    r: int
    alpha_mn: Fraction
    sandwich_lo: Fraction
    sandwich_hi: Fraction


def _form_ratio(m: int, q: int, r: int) -> Fraction:
    a_q = alpha1(q)
    if r == 0:
        return a_q / m
    return a_q / (m + r * (a_q / alpha1(q + 1) - 1))


def _form_harmonic(m: int, q: int, r: int) -> Fraction:
    inv = (m - r) / alpha1(q)
    if r:
        inv += r / alpha1(q + 1)
    return 1 / inv


def alpha_mn(m: int, n: int) -> BoundBreakdown:
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if n < m:
        raise DomainError(f"alpha_mn needs n >= m (got m={m}, n={n})")
    q, r = divmod(n, m)
    value = _form_ratio(m, q, r)
    other = _form_harmonic(m, q, r)
    if value != other:
        raise BoundMismatch(f"alpha_{m},{n}: {value} != {other}")
    ceil_q = q + (r > 0)
    return BoundBreakdown(
        m=m,
        n=n,
        q=q,
        r=r,
        alpha_mn=value,
        sandwich_lo=alpha1(ceil_q) / m,
        sandwich_hi=alpha1(q) / m,
    )


def asymptotic_reference(m: int, digits: int = 15) -> str:
    """alpha_1inf / m, truncated to ``digits`` decimals (at most 15)."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if not 1 <= digits <= 15:
        raise DomainError("alpha_1inf is only known to 15 digits")
    return to_decimal(_ALPHA1_INF / m, digits, mode="truncate")
