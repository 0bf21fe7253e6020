from fractions import Fraction as F

import pytest

from knapprox.bounds import alpha_mn, asymptotic_reference
from knapprox.numeric import DomainError, to_decimal
from knapprox.sequences import ALPHA1_INF_DIGITS, alpha1

# q + 1 <= 12 keeps every alpha_1k within the practical sequence ceiling
GRID = [(m, n) for m in range(1, 11) for n in range(m, 41) if n // m + 1 <= 12]


@pytest.mark.parametrize("n", range(1, 9))
def test_one_row_is_alpha1(n):
    assert alpha_mn(1, n).alpha_mn == alpha1(n)


def test_one_row_three():
    assert alpha_mn(1, 3).alpha_mn == F(3, 5)


@pytest.mark.parametrize("m", range(1, 8))
def test_square(m):
    assert alpha_mn(m, m).alpha_mn == F(1, m)


def test_two_by_five():
    # alpha_12 = 2/3, alpha_13 = 3/5 plugged into both closed forms
    a2, a3 = F(2, 3), F(3, 5)
    ratio_form = a2 / (2 + 1 * (a2 / a3 - 1))
    harmonic_form = 1 / (1 / a3 + 1 / a2)
    assert ratio_form == harmonic_form == F(6, 19)
    b = alpha_mn(2, 5)
    assert (b.q, b.r, b.alpha_mn) == (2, 1, F(6, 19))


@pytest.mark.parametrize("m, n", [(2, 1), (0, 3), (5, 4)])
def test_domain(m, n):
    with pytest.raises(DomainError):
        alpha_mn(m, n)


def test_asymptotic_reference():
    assert asymptotic_reference(1, 15) == "0.591355492056890"
    assert asymptotic_reference(2, 5) == "0.29567"
    with pytest.raises(DomainError):
        asymptotic_reference(1, 16)


@pytest.mark.parametrize("m, n", GRID)
def test_sandwich_and_decomposition(m, n):
    b = alpha_mn(m, n)
    assert n == b.q * m + b.r and 0 <= b.r < m
    assert b.sandwich_lo <= b.alpha_mn <= b.sandwich_hi
    assert (b.alpha_mn == b.sandwich_hi) == (b.r == 0)


@pytest.mark.parametrize("m", range(1, 11))
def test_monotone_in_n(m):
    ns = [n for (mm, n) in GRID if mm == m]
    values = [alpha_mn(m, n).alpha_mn for n in ns]
    assert all(later <= earlier for earlier, later in zip(values, values[1:]))


@pytest.mark.parametrize("m", range(1, 7))
def test_scaled_bound_reaches_limit(m):
    # m * alpha_mn for q >= 8 already agrees with alpha_1inf to 15 digits
    assert to_decimal(m * alpha_mn(m, 8 * m).alpha_mn, 15) == ALPHA1_INF_DIGITS
    assert to_decimal(m * alpha_mn(m, 9 * m + m - 1).alpha_mn, 15) == ALPHA1_INF_DIGITS
