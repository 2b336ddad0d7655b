import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from app.core.errors import CertificateError, ContractViolation
from app.exactq.matrix import QMatrix, QVector, common_denominator, dot, scaled_integers

logger = logging.getLogger(__name__)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Witness:
    """lambda >= 0 with M lambda = b."""

    weights: QVector
    pivots: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FarkasCertificate:
    """y with y^T M <= 0 and y^T b > 0."""

    y: QVector
    pivots: int = field(default=0, compare=False)


FeasibilityOutcome = Witness | FarkasCertificate


def _pivot(tableau: list[list[int]], cost: list[int], pr: int, pc: int, det: int) -> int:
    """
    Integer-preserving pivot: every row is D times its rational counterpart,
    D being the last pivot. The pivot row is kept as is and all other rows
    are updated by an exact division. Returns the new D.
    """
    head = tableau[pr]
    p = head[pc]
    for i, row in enumerate(tableau):
        if i == pr:
            continue
        f = row[pc]
        if f:
            tableau[i] = [(p * a - f * h) // det for a, h in zip(row, head)]
        elif p != det:
            tableau[i] = [p * a // det for a in row]
    f = cost[pc]
    if f:
        cost[:] = [(p * a - f * h) // det for a, h in zip(cost, head)]
    elif p != det:
        cost[:] = [p * a // det for a in cost]
    return p


def solve_feasibility(m: QMatrix, b: Sequence[Fraction]) -> FeasibilityOutcome:
    """
    Decide {lambda >= 0 : M lambda = b} exactly with a phase-1 simplex.

    M and b are scaled to integers once and the tableau is pivoted
    fraction-free. Artificial variables start in the basis and the sum of
    artificials is minimised under Bland's smallest-index rule, which cannot
    cycle. At the optimum either every artificial is zero (the basic solution
    is a witness) or the simplex multipliers of the phase-1 problem form a
    Farkas vector.
    """
    if len(b) != m.rows:
        raise ContractViolation(
            f"right-hand side has {len(b)} entries for a {m.rows}-row system"
        )
    r, k = m.rows, m.cols
    width = k + r
    m_scale, m_rows = m.integer_form
    scale = math.lcm(m_scale, common_denominator(b))
    lift = scale // m_scale
    rhs = scaled_integers(b, scale)
    signs = [-1 if v < 0 else 1 for v in rhs]

    tableau: list[list[int]] = []
    for i, row in enumerate(m_rows):
        s = signs[i] * lift
        t = [s * v for v in row]
        t.extend(1 if j == i else 0 for j in range(r))
        t.append(signs[i] * rhs[i])
        tableau.append(t)
    basis = [k + i for i in range(r)]

    # reduced costs of the phase-1 objective sum(artificials); last slot is -value
    cost = [-sum(row[j] for row in tableau) for j in range(k)]
    cost.extend(0 for _ in range(r))
    cost.append(-sum(row[-1] for row in tableau))

    det = 1
    pivots = 0
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving: int | None = None
        for i in range(r):
            a = tableau[i][entering]
            if a <= 0:
                continue
            if leaving is None:
                leaving = i
                continue
            # ratios rhs/a compared by cross-multiplication; D cancels
            best = tableau[leaving]
            here, there = tableau[i][-1] * best[entering], best[-1] * a
            if here < there or (here == there and basis[i] < basis[leaving]):
                leaving = i
        if leaving is None:
            # phase-1 objective is bounded below by zero
            raise CertificateError("phase-1 simplex reported an unbounded direction")
        det = _pivot(tableau, cost, leaving, entering, det)
        basis[leaving] = entering
        pivots += 1

    residual = sum(tableau[i][-1] for i in range(r) if basis[i] >= k)
    logger.debug(f"phase-1 finished: {r}x{k} system, {pivots} pivots")
    if residual == 0:
        weights = [_ZERO] * k
        for i, var in enumerate(basis):
            if var < k:
                weights[var] = Fraction(tableau[i][-1], det)
        return Witness(weights=tuple(weights), pivots=pivots)
    # artificial i has reduced cost 1 - u_i, stored times D; scaling M and b
    # by one positive constant leaves the Farkas vector unchanged
    y = [signs[i] * (det - cost[k + i]) for i in range(r)]
    g = math.gcd(*y) or 1
    return FarkasCertificate(y=tuple(Fraction(v // g) for v in y), pivots=pivots)


def verify_outcome(m: QMatrix, b: Sequence[Fraction], outcome: FeasibilityOutcome) -> bool:
    """Re-check the outcome's defining (in)equalities with exact arithmetic."""
    if len(b) != m.rows:
        return False
    if isinstance(outcome, Witness):
        w = outcome.weights
        if len(w) != m.cols or any(v < 0 for v in w):
            return False
        return m.matvec(w) == tuple(b)
    y = outcome.y
    if len(y) != m.rows:
        return False
    return all(v <= 0 for v in m.vecmat(y)) and dot(y, b) > 0


def solve_verified(m: QMatrix, b: Sequence[Fraction]) -> FeasibilityOutcome:
    outcome = solve_feasibility(m, b)
    if not verify_outcome(m, b, outcome):
        raise CertificateError(f"{type(outcome).__name__} failed exact re-verification")
    return outcome
