"""Worst-case instances whose precision approaches alpha_mn.

A size-k block is the one-row problem

    max  sum_j x_j / delta_j   s.t.  sum_j x_j / (delta_j + mu) <= 1

for j = 1..k.  Every single item fits exactly delta_j times, giving value 1,
while x = (1, ..., 1) is feasible with value epsilon_k / delta_k.  The
m-row instance is a direct product of r blocks of size q + 1 followed by
m - r blocks of size q, where n = q*m + r.

mu_k is irrational for k >= 2, so the upper end of a certified bracket is
used: it keeps (1, ..., 1) feasible and stays below 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import alpha_mn
from .model import Instance, direct_product
from .numeric import DomainError, as_rational, format_rational
from .sequences import MuBracket, delta, epsilon, mu


@dataclass(frozen=True)
class WorstCaseSpec:
    m: int
    n: int
    q: int
    r: int
    tol: Fraction
    mu_brackets: dict  # block size -> MuBracket
    expected_alpha: Fraction

    @property
    def block_sizes(self) -> list:
        return [self.q + 1] * self.r + [self.q] * (self.m - self.r)

    def to_meta(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "tol": format_rational(self.tol),
            "expected_alpha": format_rational(self.expected_alpha),
            "block_sizes": self.block_sizes,
            "mu_brackets": {
                str(k): [format_rational(mb.bracket.lo), format_rational(mb.bracket.hi)]
                for k, mb in sorted(self.mu_brackets.items())
            },
            "blocks": [
                {
                    "k": k,
                    "gamma": "1",
                    "beta": format_rational(Fraction(epsilon(k), delta(k))),
                }
                for k in self.block_sizes
            ],
        }


def mu_upper(k: int, tol) -> MuBracket:
    """mu(k, tol), tightened further if needed so that the upper end is < 1."""
    tol = as_rational(tol)
    bracket = mu(k, tol)
    while bracket.bracket.hi >= 1:
        tol /= 2
        bracket = mu(k, tol)
    return bracket


def worst_block(k: int, tol) -> Instance:
    tol = as_rational(tol)
    if k < 1:
        raise DomainError(f"block size must be >= 1, got {k}")
    if tol <= 0 or tol >= 1:
        raise DomainError("tol must lie in (0, 1)")
    shift = mu_upper(k, tol).bracket.hi
    deltas = [delta(j) for j in range(1, k + 1)]
    return Instance(
        [[1 / (d + shift) for d in deltas]],
        [1],
        [Fraction(1, d) for d in deltas],
    )


def generate(m: int, n: int, tol) -> tuple[Instance, WorstCaseSpec]:
    tol = as_rational(tol)
    if m < 1 or n < m:
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    bound = alpha_mn(m, n)
    q, r = bound.q, bound.r
    sizes = [q + 1] * r + [q] * (m - r)
    brackets = {k: mu_upper(k, tol) for k in set(sizes)}
    spec = WorstCaseSpec(m, n, q, r, tol, brackets, bound.alpha_mn)
    blocks = [worst_block(k, tol) for k in sizes]
    return direct_product(blocks, meta=spec.to_meta()), spec
