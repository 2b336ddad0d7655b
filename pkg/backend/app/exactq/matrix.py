import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from app.core.errors import ContractViolation

QVector = tuple[Fraction, ...]
RationalLike = Fraction | int | str

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str, dyadic_bits: int | None = None) -> Fraction:
    """
    Parse ``p/q`` or an integer string.
    Decimal input is only accepted with ``dyadic_bits``, rounded to m / 2**bits.
    """
    token = text.strip()
    if _RATIONAL_RE.match(token):
        num, _, den = token.partition("/")
        if den and int(den) == 0:
            raise ContractViolation(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)
    if dyadic_bits is None:
        raise ContractViolation(
            f"{text!r} is not a rational (use p/q, or pass dyadic bits for decimals)"
        )
    try:
        value = float(token)
    except ValueError:
        raise ContractViolation(f"cannot parse {text!r} as a number")
    if not math.isfinite(value):
        raise ContractViolation(f"non-finite value {text!r}")
    return to_dyadic(value, dyadic_bits)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_dyadic(value: float, bits: int) -> Fraction:
    """Round a finite float to the nearest m / 2**bits."""
    scale = 1 << bits
    return Fraction(round(Fraction(value) * scale), scale)


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ContractViolation("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ContractViolation(f"unsupported scalar {value!r} (floats need dyadic rounding)")


def as_vector(values: Iterable[RationalLike]) -> QVector:
    return tuple(to_rational(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ContractViolation(f"length mismatch {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


@dataclass(frozen=True)
class QMatrix:
    """Exact rational matrix, row-major."""

    rows: int
    cols: int
    entries: QVector

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ContractViolation(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ContractViolation(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[RationalLike]], cols: int | None = None
    ) -> "QMatrix":
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and cols != width:
            raise ContractViolation(f"expected {cols} columns, got {width}")
        entries: list[Fraction] = []
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ContractViolation(
                    f"row {i} has {len(row)} entries, expected {width}"
                )
            entries.extend(to_rational(v) for v in row)
        return cls(rows=len(rows), cols=width, entries=tuple(entries))

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[RationalLike]], rows: int | None = None
    ) -> "QMatrix":
        if not columns:
            return cls(rows=rows or 0, cols=0, entries=())
        return cls.from_rows(columns, cols=rows).transpose()

    @classmethod
    def identity(cls, size: int) -> "QMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(size)] for i in range(size)],
            cols=size,
        )

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> QVector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> QVector:
        return self.entries[j :: self.cols] if self.cols else ()

    def row_list(self) -> list[QVector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        entries = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return QMatrix(rows=self.cols, cols=self.rows, entries=entries)

    def with_row(self, row: Sequence[RationalLike]) -> "QMatrix":
        if self.rows and len(row) != self.cols:
            raise ContractViolation(f"row of length {len(row)} for {self.cols} columns")
        width = self.cols if self.rows else len(row)
        return QMatrix(
            rows=self.rows + 1,
            cols=width,
            entries=self.entries + as_vector(row),
        )

    @cached_property
    def integer_form(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """(s, P) with M = P / s and P integer."""
        scale = common_denominator(self.entries)
        ints = scaled_integers(self.entries, scale)
        return scale, tuple(
            tuple(ints[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)
        )

    def matvec(self, v: Sequence[Fraction]) -> QVector:
        """M v"""
        if len(v) != self.cols:
            raise ContractViolation(f"vector of length {len(v)} for {self.cols} columns")
        scale, rows = self.integer_form
        den = common_denominator(v)
        ints = scaled_integers(v, den)
        total = scale * den
        return tuple(
            Fraction(sum(a * x for a, x in zip(row, ints) if x), total) for row in rows
        )

    def vecmat(self, y: Sequence[Fraction]) -> QVector:
        """y^T M"""
        if len(y) != self.rows:
            raise ContractViolation(f"vector of length {len(y)} for {self.rows} rows")
        scale, rows = self.integer_form
        den = common_denominator(y)
        sums = [0] * self.cols
        for w, row in zip(scaled_integers(y, den), rows):
            if w:
                for j, a in enumerate(row):
                    sums[j] += w * a
        total = scale * den
        return tuple(Fraction(s, total) for s in sums)


def common_denominator(values: Iterable[Fraction]) -> int:
    return math.lcm(1, *(v.denominator for v in values))


def scaled_integers(values: Iterable[Fraction], scale: int) -> list[int]:
    """v * scale for each v; scale must be a multiple of every denominator."""
    return [v.numerator * (scale // v.denominator) for v in values]


def pivot_columns(m: QMatrix) -> list[int]:
    """
    Pivot columns of a fraction-free (Bareiss) row echelon form of M.
    They index a maximal set of linearly independent columns.
    """
    a = [list(row) for row in m.integer_form[1]]
    pivots: list[int] = []
    prev = 1
    for c in range(m.cols):
        r = len(pivots)
        if r == m.rows:
            break
        pivot = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        head = a[r]
        for i in range(r + 1, m.rows):
            row = a[i]
            lead = row[c]
            for j in range(c + 1, m.cols):
                row[j] = (head[c] * row[j] - lead * head[j]) // prev
            row[c] = 0
        prev = head[c]
        pivots.append(c)
    return pivots


def rank(m: QMatrix) -> int:
    """
    Exact rank by fraction-free (Bareiss) elimination.
    Entries are cleared of denominators first, so every step is integer-only
    and each division by the previous pivot is exact.
    """
    return len(pivot_columns(m))


def inverse(m: QMatrix) -> QMatrix:
    """
    Exact inverse by fraction-free Gauss-Jordan on [P | I], where M = P / s.
    After each pivot the tableau is D * (current tableau) with D the last
    pivot, so every division is exact and no gcd is taken until the end.
    """
    if m.rows != m.cols:
        raise ContractViolation(f"cannot invert a {m.rows}x{m.cols} matrix")
    size = m.rows
    scale, rows = m.integer_form
    t = [[*row, *(1 if j == i else 0 for j in range(size))] for i, row in enumerate(rows)]
    prev = 1
    for c in range(size):
        pivot = next((i for i in range(c, size) if t[i][c]), None)
        if pivot is None:
            raise ContractViolation("matrix is singular")
        t[c], t[pivot] = t[pivot], t[c]
        head = t[c]
        p = head[c]
        for i in range(size):
            f = t[i][c]
            if i != c:
                t[i] = [(p * a - f * h) // prev for a, h in zip(t[i], head)]
        prev = p
    # t == prev * [I | P^-1] and M^-1 = s * P^-1
    return QMatrix(
        rows=size,
        cols=size,
        entries=tuple(Fraction(scale * v, prev) for row in t for v in row[size:]),
    )
