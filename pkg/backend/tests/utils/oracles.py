"""Brute-force planar oracles, independent of the simplex code."""

from fractions import Fraction
from itertools import combinations

from app.exactq import QVector


def cross(p: QVector, q: QVector) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


def _dot(p: QVector, q: QVector) -> Fraction:
    return p[0] * q[0] + p[1] * q[1]


def _in_triangle(p: QVector, q: QVector, r: QVector) -> bool:
    area = cross((q[0] - p[0], q[1] - p[1]), (r[0] - p[0], r[1] - p[1]))
    if area == 0:
        return False
    signs = [cross(p, q), cross(q, r), cross(r, p)]
    return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)


def contains_origin_2d(points: list[QVector]) -> bool:
    """0 in conv(points), by Caratheodory: some 1, 2 or 3 points already capture it."""
    if any(p[0] == 0 and p[1] == 0 for p in points):
        return True
    for p, q in combinations(points, 2):
        if cross(p, q) == 0 and _dot(p, q) < 0:
            return True
    return any(_in_triangle(p, q, r) for p, q, r in combinations(points, 3))


def has_weak_separator_2d(points: list[QVector]) -> bool:
    """
    Some y != 0 with <p, y> <= 0 for all p. The cone of such y, when proper and
    non-trivial, has a boundary ray orthogonal to one of the points.
    """
    candidates: list[QVector] = [(Fraction(1), Fraction(0))]
    for p in points:
        candidates.append((-p[1], p[0]))
        candidates.append((p[1], -p[0]))
    return any(
        (y[0] or y[1]) and all(_dot(p, y) <= 0 for p in points) for y in candidates
    )


def classify_2d(points: list[QVector]) -> str:
    if not contains_origin_2d(points):
        return "Outside"
    return "Boundary" if has_weak_separator_2d(points) else "Interior"


def in_cone_2d(rows: list[QVector], c: QVector) -> bool:
    """c in cone(rows), checked over single rows and independent pairs."""
    for a in rows:
        if cross(a, c) == 0 and _dot(a, c) > 0:
            return True
    for a, b in combinations(rows, 2):
        det = cross(a, b)
        if det == 0:
            continue
        if cross(c, b) / det >= 0 and cross(a, c) / det >= 0:
            return True
    return False
