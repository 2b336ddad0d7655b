"""
Wendel's probability p(n, d) = 1 - 2^(1-n) * sum_{k<d} C(n-1, k).

p(n, d) is P{Binomial(n-1, 1/2) >= d}: the chance that n symmetric points in
general position capture the origin in their convex hull.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.stats import binom, norm

from app.core.errors import ContractViolation

logger = logging.getLogger(__name__)

# ratios below this no longer move a double-precision partial sum >= 1
_NEGLIGIBLE = 2.0**-64


@dataclass(frozen=True)
class WendelQuery:
    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1:
            raise ContractViolation(f"need n >= 1 and d >= 1, got n={self.n}, d={self.d}")


def p_exact(n: int, d: int) -> Fraction:
    WendelQuery(n, d)
    m = n - 1
    if d > m:
        return Fraction(0)
    if 2 * d > m:
        upper = sum(math.comb(m, k) for k in range(d, m + 1))
        value = Fraction(upper, 1 << m)
    else:
        lower = sum(math.comb(m, k) for k in range(d))
        value = 1 - Fraction(lower, 1 << m)
    return max(value, Fraction(0))


def p_exact_lp(n: int, d: int) -> Fraction:
    """Boundedness probability of max <x,c> s.t. Ax <= 1 for continuous rows."""
    return p_exact(n + 1, d)


def _anchored_tail(m: int, start: int, step: int) -> float:
    # Terms of Binomial(m, 1/2) from `start` outward; the anchor is the largest.
    anchor = float(binom.pmf(start, m, 0.5))
    log_anchor = math.log(anchor) if anchor > 0.0 else float(binom.logpmf(start, m, 0.5))
    parts = [1.0]
    ratio = 1.0
    k = start
    while True:
        if step > 0:
            if k >= m:
                break
            ratio *= (m - k) / (k + 1)
        else:
            if k <= 0:
                break
            ratio *= k / (m - k + 1)
        k += step
        if ratio < _NEGLIGIBLE:
            break
        parts.append(ratio)
    return math.exp(log_anchor + math.log(math.fsum(parts)))


def p_float(n: int, d: int) -> float:
    """
    Log-space evaluation of p(n, d) for n up to ~1e6.
    Whichever binomial tail is at most 1/2 is summed (compensated, via fsum),
    so there is no cancellation when p is tiny or close to one.
    """
    WendelQuery(n, d)
    m = n - 1
    if d > m:
        return 0.0
    if n == 2 * d:
        return 0.5
    if 2 * d > m:
        return _anchored_tail(m, d, step=1)
    return 1.0 - _anchored_tail(m, d - 1, step=-1)


def _as_fraction(target: float | Fraction) -> Fraction:
    if isinstance(target, Fraction):
        return target
    # decimal reading of the float: 0.99 means 99/100
    return Fraction(repr(float(target)))


def window_estimate(d: int, target: float | Fraction) -> int:
    """
    Smallest n with p_exact(n, d) >= target.
    The normal approximation p ~ Phi((n - 1 - 2d) / sqrt(n - 1)) only seeds the
    search; the answer is settled by exact comparisons.
    """
    goal = _as_fraction(target)
    if not 0 < goal < 1:
        raise ContractViolation(f"target must lie in (0, 1), got {target}")
    WendelQuery(1, d)
    z = float(norm.ppf(float(goal)))
    root = (z + math.sqrt(z * z + 8 * d)) / 2
    n = max(d + 1, round(root * root) + 1)
    hint = n
    if p_exact(n, d) >= goal:
        while p_exact(n - 1, d) >= goal:
            n -= 1
    else:
        while p_exact(n, d) < goal:
            n += 1
    logger.debug(f"window_estimate(d={d}, target={goal}): hint {hint}, exact {n}")
    return n


def window_bounds(d: int, width: float = 3.0) -> tuple[int, int]:
    """The n range 2d +/- width*sqrt(d)."""
    spread = math.ceil(width * math.sqrt(d))
    return max(1, 2 * d - spread), 2 * d + spread


def binomial_cdf_half(m: int, k: int) -> Fraction:
    """P{Binomial(m, 1/2) <= k}, accumulated row by row of Pascal's triangle."""
    row = [1]
    for _ in range(m):
        row = [a + b for a, b in zip([0, *row], [*row, 0])]
    if k < 0:
        return Fraction(0)
    return Fraction(sum(row[: k + 1]), 1 << m)
