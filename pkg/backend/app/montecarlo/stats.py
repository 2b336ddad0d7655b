import math
from collections.abc import Sequence

import numpy as np
from scipy.stats import norm

from app.core.errors import ContractViolation


def wilson_interval(successes: int, trials: int, confidence: float) -> tuple[float, float]:
    """Wilson score interval, clamped to [0, 1] and exact at the support edges."""
    if trials < 1 or not 0 <= successes <= trials:
        raise ContractViolation(f"need 0 <= successes <= trials, trials >= 1; got {successes}/{trials}")
    if not 0.0 < confidence < 1.0:
        raise ContractViolation(f"confidence must lie in (0, 1), got {confidence}")
    z = float(norm.ppf(1.0 - (1.0 - confidence) / 2.0))
    p = successes / trials
    z2n = z * z / trials
    center = (p + z2n / 2.0) / (1.0 + z2n)
    half = z / (1.0 + z2n) * math.sqrt(p * (1.0 - p) / trials + z2n / (4.0 * trials))
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


def log_linear_slope(xs: Sequence[float], freqs: Sequence[float]) -> float:
    """Least-squares slope of log(freq) against x."""
    if len(xs) < 2:
        raise ContractViolation("a slope needs at least two points")
    slope, _ = np.polyfit(np.asarray(xs, dtype=float), np.log(np.asarray(freqs, dtype=float)), 1)
    return float(slope)
