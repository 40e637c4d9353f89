"""Multi-node topology: association, interference, handover, saturation.

Nodes are base stations, user terminals, or relays, each either fixed or
flown; role and mount are orthogonal, so a scenario that flies a UE can
fly a BS unchanged. Cell selection uses wideband received power as the
RSRP proxy (per-RE offsets are constant at fixed bandwidth and cancel in
comparisons). Handover follows an A3-style rule: a neighbor must beat
the serving cell by the hysteresis margin continuously for the
time-to-trigger before it takes over.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .propagation import ChannelParams, Pose, path_loss_db, rx_power_dbm
from .rf_chain import RfChain, effective_isotropic_radiated_power
from .units import dbm_to_mw, mw_to_dbm


class NoCoverageError(ValueError):
    """Association attempted with no candidate cell."""


class Role(str, enum.Enum):
    BS = "BS"
    UE = "UE"
    RELAY = "RELAY"


class Mount(str, enum.Enum):
    FIXED = "FIXED"
    AERIAL = "AERIAL"


class RxStatus(str, enum.Enum):
    OK = "OK"
    SATURATED = "SATURATED"


# Default Tx-Rx antenna isolation: physically separated antennas give the
# fixed node more room than the cramped aerial payload.
DEFAULT_ISOLATION_DB = {Mount.FIXED: 40.0, Mount.AERIAL: 30.0}


@dataclass(frozen=True)
class RadioNode:
    id: str
    role: Role
    mount: Mount
    pose: Pose
    tx_chain: RfChain
    rx_chain: RfChain
    tx_antenna_gain_dbi: float = 0.0
    rx_antenna_gain_dbi: float = 0.0
    tx_rx_isolation_db: Optional[float] = None
    max_rx_input_dbm: float = 0.0

    def __post_init__(self) -> None:
        if self.tx_rx_isolation_db is None:
            object.__setattr__(
                self, "tx_rx_isolation_db", DEFAULT_ISOLATION_DB[self.mount]
            )
        if self.tx_rx_isolation_db < 0:
            raise ValueError("tx_rx_isolation must be >= 0 dB")

    def eirp_dbm(self) -> float:
        return effective_isotropic_radiated_power(self.tx_chain, self.tx_antenna_gain_dbi)


@dataclass(frozen=True)
class HandoverConfig:
    hysteresis_db: float = 3.0
    time_to_trigger_s: float = 0.48

    def __post_init__(self) -> None:
        if self.hysteresis_db < 0 or self.time_to_trigger_s < 0:
            raise ValueError("hysteresis and time-to-trigger must be >= 0")


@dataclass(frozen=True)
class HandoverState:
    """Per-UE A3 bookkeeping: current serving cell and trigger dwell."""

    serving: str
    candidate: Optional[str] = None
    dwell_s: float = 0.0


def received_power_dbm(
    tx: RadioNode,
    rx: RadioNode,
    channel: ChannelParams,
    tx_pose: Optional[Pose] = None,
    rx_pose: Optional[Pose] = None,
    sample_index: int = 0,
) -> float:
    """Wideband power from tx at rx's port (the RSRP proxy)."""
    a = tx_pose if tx_pose is not None else tx.pose
    b = rx_pose if rx_pose is not None else rx.pose
    link_id = "|".join(sorted((tx.id, rx.id)))
    pl = path_loss_db(channel, a, b, link_id=link_id, sample_index=sample_index)
    return rx_power_dbm(tx.eirp_dbm(), rx.rx_antenna_gain_dbi, pl)


def associate(
    ue: RadioNode,
    cells: Sequence[RadioNode],
    channel: ChannelParams,
    poses: Optional[Mapping[str, Pose]] = None,
    sample_index: int = 0,
) -> str:
    """Strongest-cell selection; ties break to the lowest cell id."""
    if not cells:
        raise NoCoverageError(f"no cell available for {ue.id}")
    poses = poses or {}
    best_id, best_rsrp = None, -math.inf
    for cell in sorted(cells, key=lambda c: c.id):
        rsrp = received_power_dbm(
            cell,
            ue,
            channel,
            tx_pose=poses.get(cell.id),
            rx_pose=poses.get(ue.id),
            sample_index=sample_index,
        )
        if rsrp > best_rsrp:
            best_id, best_rsrp = cell.id, rsrp
    assert best_id is not None
    return best_id


def sinr_at(
    serving_dbm: float, interferers_dbm: Sequence[float], noise_dbm: float
) -> float:
    """Linear-domain S/(N + sum I) in dB."""
    denom_mw = dbm_to_mw(noise_dbm) + math.fsum(dbm_to_mw(i) for i in interferers_dbm)
    return serving_dbm - mw_to_dbm(denom_mw)


def handover_step(
    state: HandoverState,
    measurements: Mapping[str, float],
    config: HandoverConfig,
    dt_s: float,
) -> tuple[HandoverState, list[str]]:
    """Advance the A3 rule by one tick.

    ``measurements`` maps cell id -> RSRP dBm and must include the
    serving cell. Returns the new state and handover events ("old->new")
    emitted exactly at the transition tick.
    """
    if dt_s <= 0:
        raise ValueError("dt must be positive")
    serving_rsrp = measurements[state.serving]
    neighbors = {
        cid: rsrp for cid, rsrp in measurements.items() if cid != state.serving
    }
    best = None
    for cid in sorted(neighbors):
        if best is None or neighbors[cid] > neighbors[best]:
            best = cid
    if best is None or neighbors[best] <= serving_rsrp + config.hysteresis_db:
        return replace(state, candidate=None, dwell_s=0.0), []
    # entry condition holds for `best`; restart the clock if the candidate changed
    dwell = state.dwell_s + dt_s if state.candidate == best else dt_s
    if dwell >= config.time_to_trigger_s:
        event = f"{state.serving}->{best}"
        return HandoverState(serving=best), [event]
    return replace(state, candidate=best, dwell_s=dwell), []


def total_rx_power_dbm(
    levels_dbm: Sequence[float], own_tx_dbm: Optional[float], isolation_db: float
) -> float:
    """In-band power at a node's Rx port: desired + interference + self-leak."""
    total_mw = math.fsum(dbm_to_mw(p) for p in levels_dbm)
    if own_tx_dbm is not None:
        total_mw += dbm_to_mw(own_tx_dbm - isolation_db)
    if total_mw <= 0:
        return -math.inf
    return mw_to_dbm(total_mw)


def saturation_check(node: RadioNode, total_inband_power_dbm: float) -> RxStatus:
    """Front-end overload test against the node's maximum Rx input."""
    if total_inband_power_dbm > node.max_rx_input_dbm:
        return RxStatus.SATURATED
    return RxStatus.OK


def relay_throughput(hop1_mbps: float, hop2_mbps: float) -> float:
    """A two-hop relayed link runs at the bottleneck hop's rate."""
    if hop1_mbps < 0 or hop2_mbps < 0:
        raise ValueError("hop throughputs must be >= 0")
    return min(hop1_mbps, hop2_mbps)
