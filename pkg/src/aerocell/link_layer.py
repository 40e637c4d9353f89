"""SINR to LTE throughput abstraction for a 20 MHz FDD carrier.

Link adaptation collapses to a 15-row CQI table mapping an SNR threshold
to a spectral efficiency. Rate for a CQI is

    min(cap, efficiency * usable_bandwidth * (1 - overhead)) * impl_factor

where the cap is the direction's theoretical maximum and the
implementation factor absorbs the measured gap between a real modem and
that maximum. The table ships as data (data/cqi_table.csv) so it can be
recalibrated without touching code; HARQ and TTI-level dynamics are
collapsed into this steady-state rate.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from typing import IO, Iterable, Optional

from .units import dbm_to_mw, mw_to_dbm

CqiTable = tuple[tuple[float, float], ...]

DL = "DL"
UL = "UL"


def _read_cqi_rows(rows: Iterable[list[str]]) -> CqiTable:
    table = []
    for row in rows:
        if not row or row[0].strip().lower() == "cqi":
            continue
        cqi, threshold, efficiency = row
        if int(cqi) != len(table) + 1:
            raise ValueError(f"CQI rows must be 1..15 in order, got {cqi!r}")
        table.append((float(threshold), float(efficiency)))
    return tuple(table)


def load_cqi_table(source: str | IO[str]) -> CqiTable:
    """Load a CQI table from a csv path or open file.

    Expected columns: cqi,snr_threshold_db,efficiency_bps_hz (15 rows).
    """
    if isinstance(source, str):
        with open(source, newline="") as fh:
            return _read_cqi_rows(csv.reader(fh))
    return _read_cqi_rows(csv.reader(source))


def _default_cqi_table() -> CqiTable:
    ref = resources.files("aerocell").joinpath("data/cqi_table.csv")
    with ref.open(newline="") as fh:
        return _read_cqi_rows(csv.reader(fh))


DEFAULT_CQI_TABLE: CqiTable = _default_cqi_table()


@dataclass(frozen=True)
class LinkProfile:
    """LTE numerology and rate calibration for one carrier."""

    bandwidth_mhz: float = 20.0
    usable_bandwidth_mhz: float = 18.0  # 100 PRB x 180 kHz
    dl_overhead: float = 0.25
    ul_overhead: float = 0.25
    dl_cap_mbps: float = 75.0
    ul_cap_mbps: float = 50.0
    dl_impl_factor: float = 0.80
    ul_impl_factor: float = 1.00
    cqi_table: CqiTable = DEFAULT_CQI_TABLE

    def __post_init__(self) -> None:
        if len(self.cqi_table) != 15:
            raise ValueError("cqi_table must have exactly 15 rows")
        thresholds = [row[0] for row in self.cqi_table]
        efficiencies = [row[1] for row in self.cqi_table]
        if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
            raise ValueError("CQI thresholds must be strictly increasing")
        if any(b <= a for a, b in zip(efficiencies, efficiencies[1:])):
            raise ValueError("CQI efficiencies must be strictly increasing")
        for name, factor in (("dl", self.dl_impl_factor), ("ul", self.ul_impl_factor)):
            if not 0.0 < factor <= 1.0:
                raise ValueError(f"{name}_impl_factor must be in (0, 1]")
        if self.dl_cap_mbps <= 0 or self.ul_cap_mbps <= 0:
            raise ValueError("rate caps must be positive")
        if not 0.0 <= self.dl_overhead < 1.0 or not 0.0 <= self.ul_overhead < 1.0:
            raise ValueError("overhead fractions must be in [0, 1)")
        if self.bandwidth_mhz <= 0 or self.usable_bandwidth_mhz <= 0:
            raise ValueError("bandwidths must be positive")


@dataclass(frozen=True)
class NoiseModel:
    """Receiver thermal noise: kTB density plus front-end noise figure."""

    receiver_nf_db: float
    thermal_density_dbm_hz: float = -174.0

    def __post_init__(self) -> None:
        if self.receiver_nf_db < 0:
            raise ValueError("receiver noise figure must be >= 0 dB")


def noise_floor_dbm(model: NoiseModel, bandwidth_hz: float) -> float:
    """Integrated noise power at the receiver: density + 10log10(B) + NF."""
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth must be positive")
    return model.thermal_density_dbm_hz + 10.0 * math.log10(bandwidth_hz) + model.receiver_nf_db


def snr_to_cqi(snr_db: float, profile: LinkProfile) -> int:
    """Largest CQI whose threshold <= snr; 0 below the first threshold."""
    cqi = 0
    for index, (threshold, _) in enumerate(profile.cqi_table, start=1):
        if snr_db >= threshold:
            cqi = index
        else:
            break
    return cqi


def throughput_mbps(cqi: int, direction: str, profile: LinkProfile) -> float:
    """Steady-state rate for a CQI in one direction."""
    if not 0 <= cqi <= 15:
        raise ValueError("cqi must be in 0..15")
    if cqi == 0:
        return 0.0
    if direction == DL:
        overhead, cap, impl = profile.dl_overhead, profile.dl_cap_mbps, profile.dl_impl_factor
    elif direction == UL:
        overhead, cap, impl = profile.ul_overhead, profile.ul_cap_mbps, profile.ul_impl_factor
    else:
        raise ValueError(f"direction must be {DL!r} or {UL!r}")
    efficiency = profile.cqi_table[cqi - 1][1]
    raw = efficiency * profile.usable_bandwidth_mhz * (1.0 - overhead)
    return min(cap, raw) * impl


def sinr_db(
    serving_rx_dbm: float, interference_dbm: Optional[float], noise_dbm: float
) -> float:
    """S/(N+I) with the sum done in the linear (milliwatt) domain."""
    denom_mw = dbm_to_mw(noise_dbm)
    if interference_dbm is not None:
        denom_mw += dbm_to_mw(interference_dbm)
    return serving_rx_dbm - mw_to_dbm(denom_mw)


def link_throughput(
    serving_rx_dbm: float,
    interference_dbm: Optional[float],
    noise: NoiseModel,
    direction: str,
    profile: LinkProfile,
) -> float:
    """Received power -> SINR -> CQI -> rate, straight through."""
    if not math.isfinite(serving_rx_dbm):
        raise ValueError("received power must be finite")
    floor = noise_floor_dbm(noise, profile.bandwidth_mhz * 1e6)
    sinr = sinr_db(serving_rx_dbm, interference_dbm, floor)
    return throughput_mbps(snr_to_cqi(sinr, profile), direction, profile)
