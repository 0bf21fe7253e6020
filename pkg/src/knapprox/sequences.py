"""The integer sequences delta_n, epsilon_n and the one-row precision alpha_1n.

    delta_1 = epsilon_1 = 1
    delta_n   = delta_{n-1} * (delta_{n-1} + 1)
    epsilon_n = 1 + epsilon_{n-1} * (delta_{n-1} + 1)
    alpha_1n  = delta_n / epsilon_n

alpha_1n is the worst precision of the best single-item-type solution of a
one-row integer knapsack with n item types.  ``mu(n)`` brackets the weight
shift of the extremal one-row instance, the root in [0, 1) of
sum_{j<=n} 1/(delta_j + mu) = 1.
"""
from __future__ import annotations

import threading
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .numeric import Bracket, DomainError, as_rational, bisect_decreasing

#: delta_12 has 417 digits and the digit count doubles with every row.
PRACTICAL_MAX_N = 12

#: Limit of alpha_1n as n grows, to the 15 digits known.
ALPHA1_INF_DIGITS = "0.591355492056890"


@dataclass(frozen=True)
class SequenceRow:
    n: int
    delta: int
    epsilon: int

    @property
    def alpha1(self) -> Fraction:
        return Fraction(self.delta, self.epsilon)


@dataclass(frozen=True)
class MuBracket:
    n: int
    bracket: Bracket
    tol: Fraction


class SequenceTable:
    """Write-once memo of (delta_n, epsilon_n), grown on demand."""

    def __init__(self):
        self._rows = [(1, 1)]
        self._lock = threading.Lock()

    def row(self, n: int) -> SequenceRow:
        if n < 1:
            raise DomainError(f"sequence index must be >= 1, got {n}")
        if n > PRACTICAL_MAX_N:
            warnings.warn(
                f"n={n} exceeds the practical ceiling {PRACTICAL_MAX_N}; "
                "the digit count of delta_n doubles per row",
                RuntimeWarning,
                stacklevel=2,
            )
        if n > len(self._rows):
            with self._lock:
                rows = list(self._rows)
                while len(rows) < n:
                    d, e = rows[-1]
                    rows.append((d * (d + 1), 1 + e * (d + 1)))
                # publish atomically; readers see either the old or new list
                self._rows = rows
        d, e = self._rows[n - 1]
        return SequenceRow(n, d, e)

    def delta(self, n: int) -> int:
        return self.row(n).delta

    def epsilon(self, n: int) -> int:
        return self.row(n).epsilon


_TABLE = SequenceTable()


def delta(n: int) -> int:
    return _TABLE.delta(n)


def epsilon(n: int) -> int:
    return _TABLE.epsilon(n)


def sequence_table(max_n: int) -> list[SequenceRow]:
    if max_n < 1:
        raise DomainError(f"max_n must be >= 1, got {max_n}")
    return [_TABLE.row(n) for n in range(1, max_n + 1)]


def alpha1(n: int) -> Fraction:
    """Exact delta_n / epsilon_n."""
    return _TABLE.row(n).alpha1


def mu_equation(n: int):
    """Return f(mu) = sum_{j<=n} 1/(delta_j + mu) - 1, decreasing in mu >= 0."""
    deltas = [r.delta for r in sequence_table(n)]

    def f(x: Fraction) -> Fraction:
        return sum((Fraction(1) / (d + x) for d in deltas), Fraction(0)) - 1

    return f


def mu(n: int, tol) -> MuBracket:
    """Certified bracket of width <= tol around mu_n.

    mu_1 is exactly 0 (the equation reduces to 1/(1 + mu) = 1), so n = 1
    returns the degenerate bracket [0, 0].
    """
    tol = as_rational(tol)
    if tol <= 0:
        raise DomainError("tol must be positive")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return MuBracket(1, Bracket(0, 0), tol)
    br = bisect_decreasing(mu_equation(n), Bracket(0, 1), tol)
    return MuBracket(n, br, tol)
