import logging
from collections.abc import Sequence
from fractions import Fraction

from app.core.errors import CertificateError, ContractViolation
from app.exactq import (
    FarkasCertificate,
    QMatrix,
    QVector,
    as_vector,
    inverse,
    parse_rational,
    pivot_columns,
    rank,
    solve_verified,
)
from app.hullgeom.schemas import (
    ContainmentWitness,
    HullVerdict,
    OriginClass,
    SpanningCertificate,
    StrictSeparator,
    WeakSeparator,
)

logger = logging.getLogger(__name__)

_ZERO = Fraction(0)

Points = Sequence[Sequence[Fraction]]


def _dimension(points: Points) -> int:
    if not points:
        raise ContractViolation("need at least one point")
    d = len(points[0])
    if d < 1:
        raise ContractViolation("points must have at least one coordinate")
    for i, p in enumerate(points):
        if len(p) != d:
            raise ContractViolation(f"point {i} has dimension {len(p)}, expected {d}")
    return d


def _unit(d: int, j: int, sign: int) -> QVector:
    return tuple(Fraction(sign if t == j else 0) for t in range(d))


def _is_convex_witness(system: QMatrix, weights: Sequence[Fraction] | None) -> bool:
    if weights is None or len(weights) != system.cols:
        return False
    if any(w < 0 for w in weights) or sum(weights, _ZERO) != 1:
        return False
    return not any(system.matvec(weights))


class HullService:
    @staticmethod
    def contains_origin(points: Points) -> ContainmentWitness | StrictSeparator:
        """
        Decide 0 in conv(points) from {sum lambda_i X_i = 0, sum lambda_i = 1, lambda >= 0}.
        A Farkas vector (y, t) of that system has <X_i, y> <= -t < 0, so y
        strictly separates the points from the origin.
        """
        d = _dimension(points)
        system = QMatrix.from_columns([(*p, Fraction(1)) for p in points], rows=d + 1)
        rhs = (*(Fraction(0) for _ in range(d)), Fraction(1))
        outcome = solve_verified(system, rhs)
        if isinstance(outcome, FarkasCertificate):
            return StrictSeparator(y=outcome.y[:d])
        return ContainmentWitness(weights=outcome.weights)

    @staticmethod
    def interior_contains_origin(points: Points) -> SpanningCertificate | WeakSeparator:
        """
        0 in int conv(points) iff cone(points) = R^d iff the points span R^d
        and some strictly positive combination of them vanishes.

        One phase-1 solve looks for lambda >= 1 with sum lambda_i X_i = 0; its
        Farkas vector, if any, is a weak separator. The 2d memberships
        +/-e_j in cone(points) then share one column basis B: B^-1 (+/-e_j)
        is shifted along lambda until it is non-negative.
        """
        d = _dimension(points)
        system = QMatrix.from_columns(points, rows=d)
        drift = tuple(-sum(coords, _ZERO) for coords in zip(*points))
        null = solve_verified(system, drift)
        if isinstance(null, FarkasCertificate):
            return WeakSeparator(y=null.y)
        positive = [w + 1 for w in null.weights]

        basis = pivot_columns(system)
        if len(basis) < d:
            # lambda > 0 puts the whole span in the cone, so the first axis
            # that is refused lies outside the span
            for j in range(d):
                outcome = solve_verified(system, _unit(d, j, 1))
                if isinstance(outcome, FarkasCertificate):
                    return WeakSeparator(y=outcome.y)
            raise CertificateError("rank-deficient point set reached every axis")

        inv = inverse(QMatrix.from_columns([points[i] for i in basis], rows=d))
        witnesses: list[QVector] = []
        for j in range(d):
            column = inv.column(j)
            for sign in (1, -1):
                alpha = [_ZERO] * len(points)
                for i, v in zip(basis, column):
                    alpha[i] = sign * v
                shift = max((-a / w for a, w in zip(alpha, positive) if a < 0), default=_ZERO)
                witnesses.append(tuple(a + shift * w for a, w in zip(alpha, positive)))
        return SpanningCertificate(witnesses=tuple(witnesses))

    @staticmethod
    def classify_origin(points: Points) -> HullVerdict:
        """
        Outside / Boundary / Interior with certificates attached and re-verified.
        """
        containment = HullService.contains_origin(points)
        if isinstance(containment, StrictSeparator):
            verdict = HullVerdict(origin_class=OriginClass.OUTSIDE, separator=containment.y)
        else:
            interior = HullService.interior_contains_origin(points)
            if isinstance(interior, SpanningCertificate):
                verdict = HullVerdict(
                    origin_class=OriginClass.INTERIOR,
                    witness=containment.weights,
                    spanning_witnesses=interior.witnesses,
                )
            else:
                verdict = HullVerdict(
                    origin_class=OriginClass.BOUNDARY,
                    witness=containment.weights,
                    separator=interior.y,
                )
        if not HullService.verify_verdict(points, verdict):
            raise CertificateError(f"{verdict.origin_class.value} verdict failed re-verification")
        return verdict

    @staticmethod
    def affine_hull_dim(points: Points) -> int:
        _dimension(points)
        base = points[0]
        diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
        if not diffs:
            return 0
        return rank(QMatrix.from_rows(diffs))

    @staticmethod
    def dimension_deficient(points: Points) -> bool:
        """dim aff(points + {0}) <= d - 1, i.e. the points miss a full-dimensional hull with 0."""
        d = _dimension(points)
        origin = tuple(Fraction(0) for _ in range(d))
        return HullService.affine_hull_dim([*points, origin]) < d

    @staticmethod
    def verify_verdict(points: Points, verdict: HullVerdict) -> bool:
        """Exact re-check of every certificate and of the class-consistency rules."""
        try:
            d = _dimension(points)
        except ContractViolation:
            return False
        system = QMatrix.from_columns(points, rows=d)
        if verdict.origin_class is OriginClass.OUTSIDE:
            y = verdict.separator
            if y is None or len(y) != d or verdict.witness is not None:
                return False
            return all(v < 0 for v in system.vecmat(y))

        if not _is_convex_witness(system, verdict.witness):
            return False
        if verdict.origin_class is OriginClass.BOUNDARY:
            y = verdict.separator
            if y is None or len(y) != d or not any(y):
                return False
            return all(v <= 0 for v in system.vecmat(y))

        spanning = verdict.spanning_witnesses
        if verdict.separator is not None or spanning is None or len(spanning) != 2 * d:
            return False
        for idx, weights in enumerate(spanning):
            target = _unit(d, idx // 2, 1 if idx % 2 == 0 else -1)
            if len(weights) != len(points) or any(w < 0 for w in weights):
                return False
            if system.matvec(weights) != target:
                return False
        return True

    @staticmethod
    def parse_points(text: str, dyadic_bits: int | None = None) -> list[QVector]:
        """
        One point per line, coordinates separated by whitespace or commas.
        Blank lines and lines starting with '#' are skipped.
        """
        points: list[QVector] = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            body = line.strip()
            if not body or body.startswith("#"):
                continue
            tokens = body.replace(",", " ").split()
            try:
                points.append(as_vector(parse_rational(t, dyadic_bits) for t in tokens))
            except ContractViolation as e:
                raise ContractViolation(f"line {lineno}: {e.detail}")
        _dimension(points)
        return points
