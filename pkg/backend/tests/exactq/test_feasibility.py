from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.errors import ContractViolation
from app.exactq import (
    FarkasCertificate,
    QMatrix,
    Witness,
    solve_feasibility,
    verify_outcome,
)
from tests.utils.utils import vec

small_fraction = st.fractions(min_value=-3, max_value=3, max_denominator=4)
nonnegative_fraction = st.fractions(min_value=0, max_value=3, max_denominator=4)


@st.composite
def systems(draw: st.DrawFn) -> tuple[QMatrix, tuple[Fraction, ...]]:
    r = draw(st.integers(min_value=1, max_value=3))
    k = draw(st.integers(min_value=1, max_value=4))
    rows = [[draw(small_fraction) for _ in range(k)] for _ in range(r)]
    b = tuple(draw(small_fraction) for _ in range(r))
    return QMatrix.from_rows(rows), b


def test_identity_system() -> None:
    outcome = solve_feasibility(QMatrix.identity(2), vec(1, 1))
    assert isinstance(outcome, Witness)
    assert outcome.weights == (1, 1)


def test_sign_obstruction() -> None:
    m = QMatrix.from_rows([[1, 1]])
    outcome = solve_feasibility(m, vec(-1))
    assert isinstance(outcome, FarkasCertificate)
    assert outcome.y == (-1,)
    assert verify_outcome(m, vec(-1), outcome)


def test_zero_right_hand_side() -> None:
    outcome = solve_feasibility(QMatrix.from_rows([[1, -1]]), vec(0))
    assert isinstance(outcome, Witness)
    assert outcome.weights == (0, 0)


def test_verify_rejects_wrong_witness() -> None:
    m = QMatrix.identity(2)
    assert verify_outcome(m, vec(1, 1), Witness(vec(1, 1)))
    assert not verify_outcome(m, vec(1, 1), Witness(vec(1, 2)))
    assert not verify_outcome(m, vec(1, 1), Witness(vec(1)))


def test_dimension_mismatch() -> None:
    with pytest.raises(ContractViolation):
        solve_feasibility(QMatrix.identity(2), vec(1, 1, 1))


def test_degenerate_columns_terminate() -> None:
    # zero and duplicated columns produce ties at every ratio test
    m = QMatrix.from_rows([[0, 1, 1, -1, 1], [0, 1, 1, -1, 1], [0, -1, -1, 1, 0]])
    b = vec(1, 1, -1)
    outcome = solve_feasibility(m, b)
    assert verify_outcome(m, b, outcome)


@settings(max_examples=200, deadline=None)
@given(systems())
def test_outcome_always_verifies(system: tuple[QMatrix, tuple[Fraction, ...]]) -> None:
    m, b = system
    assert verify_outcome(m, b, solve_feasibility(m, b))


@settings(max_examples=1000, deadline=None)
@given(systems(), st.data())
def test_witness_and_certificate_are_exclusive(
    system: tuple[QMatrix, tuple[Fraction, ...]], data: st.DataObject
) -> None:
    m, b = system
    outcome = solve_feasibility(m, b)
    assert verify_outcome(m, b, outcome)
    if isinstance(outcome, Witness):
        # any y with y^T M <= 0 has y^T b = y^T M lambda <= 0
        ys = data.draw(st.lists(st.tuples(*[small_fraction] * m.rows), min_size=1, max_size=20))
        for y in [*ys, b, tuple(-v for v in b)]:
            assert not verify_outcome(m, b, FarkasCertificate(y))
    else:
        # every lambda >= 0 has y^T M lambda <= 0 < y^T b
        weights = data.draw(
            st.lists(st.tuples(*[nonnegative_fraction] * m.cols), min_size=1, max_size=20)
        )
        for w in [*weights, tuple(Fraction(0) for _ in range(m.cols))]:
            assert not verify_outcome(m, b, Witness(w))


def test_large_dyadic_entries() -> None:
    # 53-bit dyadic coordinates, as produced by the Gaussian sampler
    scale = 2**53
    rows = [
        [Fraction(6004799503160661, scale), Fraction(-3, 4), Fraction(1, 2)],
        [Fraction(-1, scale), Fraction(5, 8), Fraction(-7, scale)],
    ]
    m = QMatrix.from_rows(rows)
    for b in (vec(1, 1), vec(-1, 0), (Fraction(1, scale), Fraction(-3, 2))):
        assert verify_outcome(m, b, solve_feasibility(m, b))
