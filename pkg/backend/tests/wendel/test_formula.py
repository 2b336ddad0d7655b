from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.errors import ContractViolation
from app.wendel import (
    WendelQuery,
    binomial_cdf_half,
    p_exact,
    p_exact_lp,
    p_float,
    window_bounds,
    window_estimate,
)


@pytest.mark.parametrize("d", range(1, 51))
def test_p_exact_closed_forms(d: int) -> None:
    assert p_exact(d, d) == 0
    assert p_exact(2 * d, d) == Fraction(1, 2)
    assert p_exact(d + 1, d) == Fraction(1, 2**d)


def test_p_exact_small_case() -> None:
    assert p_exact(5, 2) == Fraction(11, 16)


def test_p_exact_clamps_below_dimension() -> None:
    assert p_exact(2, 5) == 0


def test_p_exact_lp_shifts_n() -> None:
    assert p_exact_lp(1, 1) == Fraction(1, 2)
    assert p_exact_lp(25, 10) == p_exact(26, 10)


def test_invalid_query() -> None:
    with pytest.raises(ContractViolation):
        WendelQuery(0, 1)
    with pytest.raises(ContractViolation):
        p_exact(3, 0)


def test_monotone_in_n_and_d() -> None:
    for d in range(1, 51):
        for n in range(d, 200):
            assert p_exact(n + 1, d) >= p_exact(n, d)
            assert p_exact(n, d + 1) <= p_exact(n, d)


@given(st.integers(min_value=1, max_value=200), st.integers(min_value=1, max_value=200))
def test_binomial_tail_identity(n: int, d: int) -> None:
    if n <= d:
        assert p_exact(n, d) == 0
    else:
        assert 1 - p_exact(n, d) == binomial_cdf_half(n - 1, d - 1)


def test_p_float_symmetric_case() -> None:
    assert p_float(30, 15) == 0.5


def test_p_float_small_case() -> None:
    assert p_float(5, 2) == pytest.approx(0.6875, abs=1e-12)


def test_p_float_large_case() -> None:
    value = p_float(1000, 400)
    assert 0.0 < value < 1.0
    assert value == pytest.approx(float(p_exact(1000, 400)), rel=1e-12)


@pytest.mark.parametrize("n", [2, 3, 10, 41, 100, 257, 600, 1200, 2000])
def test_p_float_matches_exact(n: int) -> None:
    for d in sorted({1, 2, n // 4 or 1, n // 3 or 1, n // 2, n - 1, n}):
        if d < 1:
            continue
        exact = float(p_exact(n, d))
        if exact == 0.0:
            assert p_float(n, d) == 0.0
        else:
            assert p_float(n, d) == pytest.approx(exact, rel=1e-12)


def test_window_estimate_half() -> None:
    assert window_estimate(15, Fraction(1, 2)) == 30
    assert window_estimate(1, 0.5) == 2


def test_window_estimate_brackets_target() -> None:
    target = Fraction(99, 100)
    n = window_estimate(100, 0.99)
    assert p_exact(n, 100) >= target > p_exact(n - 1, 100)


def test_window_estimate_rejects_bad_target() -> None:
    with pytest.raises(ContractViolation):
        window_estimate(3, 1.0)


def test_window_bounds() -> None:
    lo, hi = window_bounds(15)
    assert lo <= 30 <= hi
    assert hi - 30 == 30 - lo
