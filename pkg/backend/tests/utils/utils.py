import random
from fractions import Fraction

from app.exactq import QVector


def vec(*values: int | str | Fraction) -> QVector:
    return tuple(Fraction(v) for v in values)


def random_rational(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_points(rng: random.Random, m: int, d: int) -> list[QVector]:
    return [tuple(random_rational(rng) for _ in range(d)) for _ in range(m)]


def sign_patterns(n: int, d: int) -> list[list[QVector]]:
    """Every n x d matrix with +-1 entries, as lists of rows."""
    out: list[list[QVector]] = []
    for mask in range(1 << (n * d)):
        bits = [1 if mask >> k & 1 else -1 for k in range(n * d)]
        out.append([vec(*bits[i * d : (i + 1) * d]) for i in range(n)])
    return out
