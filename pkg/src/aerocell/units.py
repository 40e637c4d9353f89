"""Decibel/linear power conversions shared across the package.

All powers are handled in dBm (absolute) or dB (ratios); linear-domain
arithmetic happens in milliwatts and is converted back immediately.
"""

from __future__ import annotations

import math
from typing import Iterable


def db_to_linear(db: float) -> float:
    """Ratio in dB -> linear ratio."""
    return 10.0 ** (db / 10.0)


def linear_to_db(ratio: float) -> float:
    """Linear ratio -> dB. ratio must be > 0."""
    return 10.0 * math.log10(ratio)


def dbm_to_mw(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0)


def mw_to_dbm(mw: float) -> float:
    return 10.0 * math.log10(mw)


def power_sum_dbm(levels_dbm: Iterable[float]) -> float:
    """Combine incoherent power levels (dBm) by summing milliwatts."""
    total_mw = math.fsum(dbm_to_mw(p) for p in levels_dbm)
    if total_mw <= 0.0:
        raise ValueError("power sum requires at least one level")
    return mw_to_dbm(total_mw)


def clamp(value: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, value))
