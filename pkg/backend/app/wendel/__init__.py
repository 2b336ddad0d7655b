from app.wendel.formula import (
    WendelQuery,
    binomial_cdf_half,
    p_exact,
    p_exact_lp,
    p_float,
    window_bounds,
    window_estimate,
)

__all__ = [
    "WendelQuery",
    "binomial_cdf_half",
    "p_exact",
    "p_exact_lp",
    "p_float",
    "window_bounds",
    "window_estimate",
]
