"""Simulated SDR cellular testbed for low-altitude UAV links.

Models an LTE field deployment end to end: calibrated RF front-end
cascades, air-to-ground large-scale propagation, SINR-driven link
adaptation, multi-cell association and handover, UAV flight and battery
endurance, plus a deterministic tick engine, a control/telemetry HTTP
service, and a batch CLI.
"""

from .airframe import (
    BatteryState,
    PowerDraw,
    UavState,
    drain,
    endurance_remaining_s,
    size_battery,
    step_kinematics,
)
from .cell_network import (
    HandoverConfig,
    HandoverState,
    Mount,
    NoCoverageError,
    RadioNode,
    Role,
    RxStatus,
    associate,
    handover_step,
    received_power_dbm,
    relay_throughput,
    saturation_check,
    sinr_at,
)
from .link_layer import (
    DEFAULT_CQI_TABLE,
    LinkProfile,
    NoiseModel,
    link_throughput,
    load_cqi_table,
    noise_floor_dbm,
    snr_to_cqi,
    throughput_mbps,
)
from .propagation import (
    ChannelParams,
    NearFieldError,
    Pose,
    distance_3d,
    path_loss_db,
    rx_power_dbm,
)
from .rf_chain import (
    InvalidStageError,
    NotApplicableError,
    RfChain,
    RfStage,
    UncalibratedGainError,
    build_sdr_calibration,
    cascade_noise_figure,
    chain_output_power,
    effective_isotropic_radiated_power,
    im3_level,
)
from .sim_engine import (
    Scenario,
    ScenarioError,
    Simulation,
    TelemetrySample,
    UavConfig,
    baseline,
    load_scenario,
    run_scripted,
    sweep,
    tick,
    validate,
    write_telemetry,
)

__version__ = "0.1.0"

__all__ = [
    "BatteryState", "PowerDraw", "UavState", "drain", "endurance_remaining_s",
    "size_battery", "step_kinematics",
    "HandoverConfig", "HandoverState", "Mount", "NoCoverageError", "RadioNode",
    "Role", "RxStatus", "associate", "handover_step", "received_power_dbm",
    "relay_throughput", "saturation_check", "sinr_at",
    "DEFAULT_CQI_TABLE", "LinkProfile", "NoiseModel", "link_throughput",
    "load_cqi_table", "noise_floor_dbm", "snr_to_cqi", "throughput_mbps",
    "ChannelParams", "NearFieldError", "Pose", "distance_3d", "path_loss_db",
    "rx_power_dbm",
    "InvalidStageError", "NotApplicableError", "RfChain", "RfStage",
    "UncalibratedGainError", "build_sdr_calibration", "cascade_noise_figure",
    "chain_output_power", "effective_isotropic_radiated_power", "im3_level",
    "Scenario", "ScenarioError", "Simulation", "TelemetrySample", "UavConfig",
    "baseline", "load_scenario", "run_scripted", "sweep", "tick", "validate",
    "write_telemetry",
]
