"""3D geometry and air-to-ground large-scale path loss.

The channel is a log-distance model anchored at 1 km free-space loss:

    PL = 32.44 + 20*log10(f_MHz) + 10*n*log10(d_km) + X_sigma

with an optional log-normal shadowing term X_sigma. Shadowing draws come
from a counter-based random stream keyed by (seed, link id, sample
index), so results never depend on evaluation order and are reproducible
across runs; sigma = 0 disables the term entirely.

Suited to the line-of-sight rural geometry this package targets; no
small-scale fading, Doppler, or ground reflection.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np


class NearFieldError(ValueError):
    """Geometry closer than the 1 m modeling floor."""


@dataclass(frozen=True)
class Pose:
    """Position in meters; z is height above ground."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if self.z < 0:
            raise ValueError("pose z (height above ground) must be >= 0")


@dataclass(frozen=True)
class ChannelParams:
    freq_mhz: float
    pathloss_exponent: float = 2.2
    shadowing_sigma_db: float = 0.0
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.freq_mhz <= 0:
            raise ValueError("carrier frequency must be positive")
        if not 1.6 <= self.pathloss_exponent <= 4.0:
            raise ValueError("pathloss exponent must lie in [1.6, 4]")
        if self.shadowing_sigma_db < 0:
            raise ValueError("shadowing sigma must be >= 0 dB")


def distance_3d(a: Pose, b: Pose) -> float:
    """Euclidean distance between two poses, in meters."""
    return math.dist((a.x, a.y, a.z), (b.x, b.y, b.z))


def _shadowing_db(params: ChannelParams, link_id: str, sample_index: int) -> float:
    # Philox is counter-based: keying on (seed, link) and counting on the
    # sample index gives order-independent, reproducible draws.
    link_key = int.from_bytes(
        hashlib.blake2s(link_id.encode("utf-8"), digest_size=8).digest(), "little"
    )
    bitgen = np.random.Philox(
        key=np.array([params.rng_seed & 0xFFFFFFFFFFFFFFFF, link_key], dtype=np.uint64),
        counter=np.array([sample_index, 0, 0, 0], dtype=np.uint64),
    )
    draw = np.random.Generator(bitgen).standard_normal()
    return float(draw) * params.shadowing_sigma_db


def path_loss_db(
    params: ChannelParams,
    a: Pose,
    b: Pose,
    link_id: str = "",
    sample_index: int = 0,
) -> float:
    """Large-scale path loss between two poses, in dB.

    ``link_id`` and ``sample_index`` key the shadowing draw; callers that
    want a reciprocal channel must use the same link_id for both
    directions. Distances below 1 m are rejected rather than
    extrapolated.
    """
    d_m = distance_3d(a, b)
    if d_m < 1.0:
        raise NearFieldError(f"distance {d_m:.3f} m is below the 1 m modeling floor")
    pl = (
        32.44
        + 20.0 * math.log10(params.freq_mhz)
        + 10.0 * params.pathloss_exponent * math.log10(d_m / 1000.0)
    )
    if params.shadowing_sigma_db > 0.0:
        pl += _shadowing_db(params, link_id, sample_index)
    return pl


def rx_power_dbm(tx_eirp_dbm: float, rx_antenna_gain_dbi: float, pl_db: float) -> float:
    """Link-budget identity: received power = EIRP + Rx gain - path loss."""
    return tx_eirp_dbm + rx_antenna_gain_dbi - pl_db
