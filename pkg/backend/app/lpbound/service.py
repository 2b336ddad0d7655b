import csv
import io
import json
import logging
from fractions import Fraction
from typing import Any

from pydantic import ValidationError

from app.core.errors import CertificateError, ConfigError, ContractViolation, ZeroCostVector
from app.exactq import FarkasCertificate, QMatrix, QVector, dot, parse_rational, solve_verified
from app.hullgeom import HullService, OriginClass
from app.lpbound.schemas import BoundednessVerdict, ConsistencyReport, LPInstance, LPInstanceIn

logger = logging.getLogger(__name__)


def _dyadic_entries(value: Any, bits: int) -> Any:
    """Round every float (or decimal string) in a parsed JSON document to m / 2**bits."""
    if isinstance(value, list):
        return [_dyadic_entries(v, bits) for v in value]
    if isinstance(value, dict):
        return {k: _dyadic_entries(v, bits) for k, v in value.items()}
    if isinstance(value, float):
        return parse_rational(repr(value), bits)
    if isinstance(value, str):
        return parse_rational(value, bits)
    return value


class LPService:
    @staticmethod
    def is_bounded(inst: LPInstance) -> BoundednessVerdict:
        """
        x = 0 is always feasible, so the LP is bounded iff c lies in the cone of
        the rows of A, i.e. {lambda >= 0 : A^T lambda = c} is feasible. A Farkas
        vector y of that system has A y <= 0 and <c, y> > 0: a recession ray.
        """
        if not any(inst.c):
            raise ZeroCostVector("cost vector must be non-zero")
        outcome = solve_verified(inst.A.transpose(), inst.c)
        if isinstance(outcome, FarkasCertificate):
            verdict = BoundednessVerdict(verdict="Unbounded", ray=outcome.y)
        else:
            verdict = BoundednessVerdict(verdict="Bounded", cone_weights=outcome.weights)
        if not LPService.verify_boundedness(inst, verdict):
            raise CertificateError(f"{verdict.verdict} certificate failed re-verification")
        return verdict

    @staticmethod
    def verify_boundedness(inst: LPInstance, verdict: BoundednessVerdict) -> bool:
        if verdict.bounded:
            weights = verdict.cone_weights
            if weights is None or verdict.ray is not None or len(weights) != inst.A.rows:
                return False
            if any(w < 0 for w in weights):
                return False
            return inst.A.vecmat(weights) == tuple(inst.c)
        ray = verdict.ray
        if ray is None or verdict.cone_weights is not None or len(ray) != inst.A.cols:
            return False
        return all(v <= 0 for v in inst.A.matvec(ray)) and dot(inst.c, ray) > 0

    @staticmethod
    def sandwich_points(inst: LPInstance) -> list[QVector]:
        """rows(A) together with -c."""
        return [*inst.A.row_list(), tuple(-v for v in inst.c)]

    @staticmethod
    def sandwich_check(inst: LPInstance) -> ConsistencyReport:
        """
        Deterministic fragment of the boundedness/containment reduction:
        conv(rows, -c) has 0 in its interior => bounded => 0 in conv(rows, -c).
        """
        hull = HullService.classify_origin(LPService.sandwich_points(inst))
        boundedness = LPService.is_bounded(inst)
        violations: list[str] = []
        if hull.origin_class is OriginClass.INTERIOR and not boundedness.bounded:
            violations.append("Interior but Unbounded")
        if boundedness.bounded and hull.origin_class is OriginClass.OUTSIDE:
            violations.append("Bounded but Outside")
        for v in violations:
            logger.warning(f"sandwich violation: {v}")
        return ConsistencyReport(
            hull=hull,
            boundedness=boundedness,
            passed=not violations,
            violations=tuple(violations),
        )

    @staticmethod
    def parse_instance(text: str, fmt: str = "json", dyadic_bits: int | None = None) -> LPInstance:
        """
        json: {"A": [[...], ...], "c": [...]} with "p/q" or integer entries
        (floats and decimal strings too when dyadic_bits is given).
        csv: one row of A per line, and a final line starting with "c".
        """
        if fmt == "json":
            try:
                data = json.loads(text)
                if dyadic_bits is not None:
                    data = _dyadic_entries(data, dyadic_bits)
                return LPInstanceIn.model_validate(data).to_instance()
            except (ValidationError, json.JSONDecodeError) as e:
                raise ConfigError(f"invalid LP instance: {e}")
        if fmt != "csv":
            raise ConfigError(f"unknown instance format {fmt!r}")
        rows: list[list[Fraction]] = []
        cost: list[Fraction] | None = None
        for record in csv.reader(io.StringIO(text)):
            cells = [cell.strip() for cell in record if cell.strip()]
            if not cells or cells[0].startswith("#"):
                continue
            if cells[0].lower() == "c":
                cost = [parse_rational(v, dyadic_bits) for v in cells[1:]]
            else:
                rows.append([parse_rational(v, dyadic_bits) for v in cells])
        if cost is None or not rows:
            raise ContractViolation("csv instance needs rows of A and a 'c' line")
        return LPInstance(A=QMatrix.from_rows(rows), c=tuple(cost))
