"""Exact r-derangement numbers and their arithmetic."""
from .core import (
    binomial,
    c_r,
    derangement,
    factorial,
    falling_factorial,
    lah,
    oracle_count,
    r_derangement,
    r_derangement_closed,
    r_derangement_convolution,
    r_derangement_lift,
)

__all__ = [
    "binomial",
    "c_r",
    "derangement",
    "factorial",
    "falling_factorial",
    "lah",
    "oracle_count",
    "r_derangement",
    "r_derangement_closed",
    "r_derangement_convolution",
    "r_derangement_lift",
]
