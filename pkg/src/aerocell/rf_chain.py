"""RF front-end cascade model.

A chain is an ordered list of stages (amplifiers, filters, attenuators)
driven by an SDR whose average output power is known from a calibration
table indexed by the SDR gain setting. The model covers:

* average output power with hard gain compression at each stage's P1dB,
* a distortion flag raised when the waveform peaks (average + PAPR)
  would push any stage past its P1dB, i.e. insufficient backoff,
* cascade noise figure via the Friis equation,
* third-order intermodulation level as a two-tone diagnostic,
* EIRP from calibrated SDR output, chain gain, and antenna gain.

No waveform-level effects are modeled: filters are in-band insertion
loss plus a passband predicate, compression is a clamp on average power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .units import db_to_linear, linear_to_db

DEFAULT_PAPR_DB = 8.0  # 20 MHz OFDM downlink peak-to-average ratio


class InvalidStageError(ValueError):
    """A stage carries a non-finite or physically impossible value."""


class NotApplicableError(ValueError):
    """The requested diagnostic needs a rating the stage does not have."""


class UncalibratedGainError(LookupError):
    """No calibration entry exists for the requested SDR gain setting."""


@dataclass(frozen=True)
class RfStage:
    """One element of an RF chain.

    Filters and attenuators carry negative gain (insertion loss).
    ``p1db_out_dbm`` absent means an ideal, non-compressing stage.
    ``passband_mhz`` absent means the stage passes any carrier.
    """

    name: str
    gain_db: float
    noise_figure_db: float = 0.0
    p1db_out_dbm: Optional[float] = None
    oip3_dbm: Optional[float] = None
    passband_mhz: Optional[tuple[float, float]] = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gain_db) and math.isfinite(self.noise_figure_db)):
            raise InvalidStageError(f"stage {self.name!r}: gain/NF must be finite")
        if self.noise_figure_db < 0:
            raise InvalidStageError(f"stage {self.name!r}: noise figure must be >= 0 dB")
        if self.p1db_out_dbm is not None and not math.isfinite(self.p1db_out_dbm):
            raise InvalidStageError(f"stage {self.name!r}: P1dB must be finite")
        if self.oip3_dbm is not None:
            if not math.isfinite(self.oip3_dbm):
                raise InvalidStageError(f"stage {self.name!r}: OIP3 must be finite")
            if self.p1db_out_dbm is not None and self.oip3_dbm < self.p1db_out_dbm:
                raise InvalidStageError(
                    f"stage {self.name!r}: OIP3 ({self.oip3_dbm} dBm) below P1dB "
                    f"({self.p1db_out_dbm} dBm) is unphysical"
                )
        if self.passband_mhz is not None and not self.passband_mhz[0] < self.passband_mhz[1]:
            raise InvalidStageError(f"stage {self.name!r}: passband low must be < high")

    def passes(self, freq_mhz: float) -> bool:
        """Whether a carrier at freq_mhz falls inside this stage's passband."""
        if self.passband_mhz is None:
            return True
        lo, hi = self.passband_mhz
        return lo <= freq_mhz <= hi


@dataclass(frozen=True)
class RfChain:
    """Ordered cascade of stages behind an SDR port.

    ``sdr_calibration`` maps integer SDR gain settings to the average
    power (dBm) the SDR delivers into the first stage (Tx chains) or to
    the input-referred gain (dB) of the SDR path (Rx chains, metadata).
    """

    stages: tuple[RfStage, ...] = ()
    sdr_gain_setting: int = 0
    sdr_calibration: dict[int, float] = field(default_factory=dict)
    papr_db: float = DEFAULT_PAPR_DB

    def __post_init__(self) -> None:
        object.__setattr__(self, "stages", tuple(self.stages))
        if not math.isfinite(self.papr_db) or self.papr_db < 0:
            raise InvalidStageError("papr_db must be finite and >= 0")

    def sdr_output_dbm(self) -> float:
        try:
            return self.sdr_calibration[self.sdr_gain_setting]
        except KeyError:
            raise UncalibratedGainError(
                f"no calibration entry for SDR gain setting {self.sdr_gain_setting}"
            ) from None

    def passes(self, freq_mhz: float) -> bool:
        return all(stage.passes(freq_mhz) for stage in self.stages)


def build_sdr_calibration(
    anchor_gain: int, anchor_dbm: float, gain_min: int = 0, gain_max: int = 89
) -> dict[int, float]:
    """Calibration table from one measured anchor, 1 dB per gain step."""
    return {g: anchor_dbm + (g - anchor_gain) for g in range(gain_min, gain_max + 1)}


def cascade_noise_figure(chain: RfChain) -> float:
    """Friis cascade noise figure of the chain, in dB.

    F_total = F1 + (F2-1)/G1 + (F3-1)/(G1*G2) + ...  (linear domain)

    An empty chain is the identity and contributes 0 dB.
    """
    factor_total = 1.0
    gain_cum = 1.0
    for stage in chain.stages:
        factor = db_to_linear(stage.noise_figure_db)
        factor_total += (factor - 1.0) / gain_cum
        gain_cum *= db_to_linear(stage.gain_db)
    return linear_to_db(factor_total)


class ChainOutput(NamedTuple):
    p_out_dbm: float
    distorted: bool


def chain_output_power(p_in_avg_dbm: float, chain: RfChain) -> ChainOutput:
    """Average power out of the cascade, with a clean-spectrum flag.

    Per stage the average output is min(input + gain, P1dB). The chain
    is flagged distorted when at any stage the waveform peaks exceed
    P1dB, i.e. average output + PAPR > P1dB: that stage is operating
    without enough backoff and the transmit spectrum would no longer be
    clean, even though the average-power clamp barely engages.
    """
    if not math.isfinite(p_in_avg_dbm):
        raise InvalidStageError("chain input power must be finite")
    p = p_in_avg_dbm
    distorted = False
    for stage in chain.stages:
        p = p + stage.gain_db
        if stage.p1db_out_dbm is not None:
            p = min(p, stage.p1db_out_dbm)
            if p + chain.papr_db > stage.p1db_out_dbm:
                distorted = True
    return ChainOutput(p, distorted)


def im3_level(p_per_tone_dbm: float, oip3_dbm: Optional[float]) -> float:
    """Third-order intermod product level (dBm) for a two-tone test.

    IM3 = 3*P - 2*OIP3 at the stage output.
    """
    if oip3_dbm is None:
        raise NotApplicableError("stage has no OIP3 rating")
    return 3.0 * p_per_tone_dbm - 2.0 * oip3_dbm


def effective_isotropic_radiated_power(chain: RfChain, antenna_gain_dbi: float) -> float:
    """EIRP (dBm) = calibrated chain output power + antenna gain."""
    p_out, _ = chain_output_power(chain.sdr_output_dbm(), chain)
    return p_out + antenna_gain_dbi
