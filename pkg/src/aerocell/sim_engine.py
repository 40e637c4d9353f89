"""Scenario schema, validation, the deterministic tick loop, and sweeps.

A scenario is a single JSON document (``schema: 1``) declaring the
channel, the LTE profile, every radio node with its RF chains, and the
flyable vehicles. The engine advances the world in fixed steps; each
tick applies steering commands, integrates kinematics, drains batteries,
recomputes every link, runs the handover rule, and emits one telemetry
sample per UE-role node. Everything is deterministic: same scenario,
same command trace, same seed, byte-identical telemetry.

Telemetry rows use the fixed CSV schema in ``TELEMETRY_HEADER``; floats
are written with three decimals and events as ``;``-joined tokens.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import IO, Iterable, Mapping, Optional, Sequence

from . import airframe, cell_network, link_layer
from .airframe import BatteryState, PowerDraw, UavState, Velocity
from .cell_network import (
    HandoverConfig,
    HandoverState,
    Mount,
    RadioNode,
    Role,
    RxStatus,
    received_power_dbm,
    saturation_check,
    total_rx_power_dbm,
)
from .link_layer import DL, UL, LinkProfile, NoiseModel
from .propagation import ChannelParams, Pose
from .rf_chain import (
    RfChain,
    RfStage,
    UncalibratedGainError,
    build_sdr_calibration,
    cascade_noise_figure,
    chain_output_power,
)
from .units import power_sum_dbm

SCHEMA_VERSION = 1

TELEMETRY_HEADER = (
    "t_s,node_id,x_m,y_m,z_m,serving_cell,rsrp_dbm,snr_db,sinr_db,"
    "dl_mbps,ul_mbps,battery_pct,events"
)

SWEEP_HEADER = "distance_m,height_m,dl_mbps,ul_mbps"


class ScenarioError(ValueError):
    """A scenario failed validation; ``violations`` lists every problem."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class UavConfig:
    """Flight state plus the two independent power systems of a vehicle."""

    state: UavState
    vehicle_battery: BatteryState
    payload_battery: BatteryState
    draw: PowerDraw


@dataclass(frozen=True)
class Scenario:
    channel: ChannelParams
    profile: LinkProfile
    nodes: tuple[RadioNode, ...]
    uavs: dict[str, UavConfig] = field(default_factory=dict)
    handover: HandoverConfig = HandoverConfig()
    tick_s: float = 0.1
    duration_s: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))

    def node(self, node_id: str) -> RadioNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def cells(self) -> list[RadioNode]:
        return [n for n in self.nodes if n.role in (Role.BS, Role.RELAY)]

    def ues(self) -> list[RadioNode]:
        return [n for n in self.nodes if n.role == Role.UE]


@dataclass(frozen=True)
class TelemetrySample:
    t_s: float
    node_id: str
    x_m: float
    y_m: float
    z_m: float
    serving_cell: str
    rsrp_dbm: float
    snr_db: float
    sinr_db: float
    dl_mbps: float
    ul_mbps: float
    battery_pct: float
    events: tuple[str, ...] = ()


@dataclass(frozen=True)
class WorldState:
    """Everything the tick loop owns; replaced wholesale each tick."""

    t_s: float
    uavs: dict[str, UavConfig]
    commanded: dict[str, Velocity]
    handover: dict[str, HandoverState]
    sample_index: int = 0
    ended: bool = False


# ---------------------------------------------------------------------------
# validation


def validate(scenario: Scenario) -> list[str]:
    """Return every violation found; an empty list means the scenario is OK."""
    violations: list[str] = []
    if scenario.tick_s <= 0:
        violations.append("tick_s must be > 0")
    if scenario.duration_s is not None and scenario.duration_s <= 0:
        violations.append("duration_s must be > 0 when bounded")

    seen: set[str] = set()
    for node in scenario.nodes:
        if not node.id or any(c in node.id for c in ",;\n"):
            violations.append(f"node id {node.id!r} must be non-empty without ',', ';' or newlines")
        if node.id in seen:
            violations.append(f"duplicate node id {node.id!r}")
        seen.add(node.id)

        freq = scenario.channel.freq_mhz
        for label, chain in (("tx", node.tx_chain), ("rx", node.rx_chain)):
            for stage in chain.stages:
                if not stage.passes(freq):
                    violations.append(
                        f"node {node.id}: carrier {freq:g} MHz outside "
                        f"{label} stage {stage.name!r} passband "
                        f"{stage.passband_mhz[0]:g}-{stage.passband_mhz[1]:g} MHz"
                    )
        try:
            node.tx_chain.sdr_output_dbm()
        except UncalibratedGainError:
            violations.append(
                f"node {node.id}: no calibration entry for tx gain setting "
                f"{node.tx_chain.sdr_gain_setting}"
            )

    for uav_id in scenario.uavs:
        node = next((n for n in scenario.nodes if n.id == uav_id), None)
        if node is None:
            violations.append(f"uav entry {uav_id!r} has no matching node")
        elif node.mount is not Mount.AERIAL:
            violations.append(f"uav entry {uav_id!r} refers to a non-aerial node")
    for node in scenario.nodes:
        if node.mount is Mount.AERIAL and node.id not in scenario.uavs:
            violations.append(f"aerial node {node.id!r} has no uav flight entry")

    if scenario.ues() and not scenario.cells():
        violations.append("scenario has UE nodes but no cell (BS or RELAY) to serve them")
    return violations


# ---------------------------------------------------------------------------
# link computation


@dataclass(frozen=True)
class LinkMetrics:
    serving: str
    rsrp_dbm: float
    snr_db: float
    sinr_db: float
    dl_mbps: float
    ul_mbps: float
    saturated: tuple[str, ...]


def _live_poses(scenario: Scenario, world: Optional[WorldState]) -> dict[str, Pose]:
    poses = {n.id: n.pose for n in scenario.nodes}
    if world is not None:
        for uav_id, cfg in world.uavs.items():
            poses[uav_id] = cfg.state.pose
    return poses


def _rx_noise(scenario: Scenario, node: RadioNode) -> NoiseModel:
    return NoiseModel(receiver_nf_db=cascade_noise_figure(node.rx_chain))


def _aggregate(levels: Sequence[float]) -> Optional[float]:
    return power_sum_dbm(levels) if levels else None


def _tx_port_power_dbm(node: RadioNode) -> float:
    return chain_output_power(node.tx_chain.sdr_output_dbm(), node.tx_chain).p_out_dbm


def _one_hop(
    scenario: Scenario,
    tx: RadioNode,
    rx: RadioNode,
    interferer_ids: Iterable[str],
    poses: Mapping[str, Pose],
    direction: str,
    sample_index: int,
) -> float:
    """Throughput of a single radio hop from tx to rx."""
    serving_rx = received_power_dbm(
        tx, rx, scenario.channel,
        tx_pose=poses[tx.id], rx_pose=poses[rx.id], sample_index=sample_index,
    )
    levels = [
        received_power_dbm(
            scenario.node(i), rx, scenario.channel,
            tx_pose=poses[i], rx_pose=poses[rx.id], sample_index=sample_index,
        )
        for i in interferer_ids
    ]
    return link_layer.link_throughput(
        serving_rx, _aggregate(levels), _rx_noise(scenario, rx), direction, scenario.profile
    )


def compute_link_metrics(
    scenario: Scenario,
    ue: RadioNode,
    serving_id: str,
    poses: Mapping[str, Pose],
    sample_index: int = 0,
) -> LinkMetrics:
    """Steady-state link metrics for one UE against its serving cell.

    DL interference comes from every other cell transmitting co-channel;
    UL interference from every other UE received at the serving cell.
    When the serving cell is a relay, throughput is the bottleneck of the
    access hop and the relay's own backhaul hop to its donor BS.
    """
    serving = scenario.node(serving_id)
    cells = scenario.cells()
    profile = scenario.profile
    bw_hz = profile.bandwidth_mhz * 1e6

    def rx_at(tx: RadioNode, rx: RadioNode) -> float:
        return received_power_dbm(
            tx, rx, scenario.channel,
            tx_pose=poses[tx.id], rx_pose=poses[rx.id], sample_index=sample_index,
        )

    # access downlink at the UE
    rsrp = rx_at(serving, ue)
    dl_interferers = [c for c in cells if c.id not in (serving.id, ue.id)]
    dl_levels = [rx_at(c, ue) for c in dl_interferers]
    ue_noise = _rx_noise(scenario, ue)
    floor_ue = link_layer.noise_floor_dbm(ue_noise, bw_hz)
    snr = link_layer.sinr_db(rsrp, None, floor_ue)
    sinr = cell_network.sinr_at(rsrp, dl_levels, floor_ue)
    dl = link_layer.link_throughput(rsrp, _aggregate(dl_levels), ue_noise, DL, profile)

    # access uplink at the serving cell
    ul_interferer_ids = [u.id for u in scenario.ues() if u.id not in (ue.id, serving.id)]
    ul = _one_hop(scenario, ue, serving, ul_interferer_ids, poses, UL, sample_index)

    # relayed serving cell: compose with the backhaul hop to the donor BS
    if serving.role is Role.RELAY:
        donors = [n for n in scenario.nodes if n.role is Role.BS]
        if not donors:
            raise cell_network.NoCoverageError(f"relay {serving.id} has no donor BS")
        donor_id = cell_network.associate(
            serving, donors, scenario.channel, poses=poses, sample_index=sample_index
        )
        donor = scenario.node(donor_id)
        backhaul_dl_int = [c.id for c in cells if c.id not in (donor_id, serving.id)]
        backhaul_dl = _one_hop(
            scenario, donor, serving, backhaul_dl_int, poses, DL, sample_index
        )
        backhaul_ul = _one_hop(
            scenario, serving, donor, ul_interferer_ids, poses, UL, sample_index
        )
        dl = cell_network.relay_throughput(backhaul_dl, dl)
        ul = cell_network.relay_throughput(ul, backhaul_ul)

    # front-end overload checks on both ends of the access link
    saturated: list[str] = []
    ue_total = total_rx_power_dbm(
        [rsrp, *dl_levels], _tx_port_power_dbm(ue), ue.tx_rx_isolation_db
    )
    if saturation_check(ue, ue_total) is RxStatus.SATURATED:
        saturated.append(ue.id)
    cell_levels = [rx_at(u, serving) for u in scenario.ues()]
    cell_total = total_rx_power_dbm(
        cell_levels, _tx_port_power_dbm(serving), serving.tx_rx_isolation_db
    )
    if saturation_check(serving, cell_total) is RxStatus.SATURATED:
        saturated.append(serving.id)

    return LinkMetrics(
        serving=serving.id,
        rsrp_dbm=rsrp,
        snr_db=snr,
        sinr_db=sinr,
        dl_mbps=dl,
        ul_mbps=ul,
        saturated=tuple(saturated),
    )


# ---------------------------------------------------------------------------
# tick loop


def initial_world(scenario: Scenario) -> WorldState:
    """World at t = 0: vehicles at spawn, every UE attached to its best cell."""
    poses = {n.id: n.pose for n in scenario.nodes}
    for uav_id, cfg in scenario.uavs.items():
        poses[uav_id] = cfg.state.pose
    handover = {}
    cells = scenario.cells()
    for ue in scenario.ues():
        serving = cell_network.associate(
            ue, [c for c in cells if c.id != ue.id], scenario.channel,
            poses=poses, sample_index=0,
        )
        handover[ue.id] = HandoverState(serving=serving)
    return WorldState(
        t_s=0.0,
        uavs=dict(scenario.uavs),
        commanded={},
        handover=handover,
        sample_index=0,
    )


def tick(
    scenario: Scenario,
    world: WorldState,
    commands: Sequence[tuple[str, Velocity]] = (),
    dt: Optional[float] = None,
) -> tuple[WorldState, list[TelemetrySample]]:
    """Advance one step; returns the new world and this tick's samples.

    Order: apply commands, step kinematics, drain batteries, recompute
    links, handover, throughput, emit telemetry.
    """
    dt = scenario.tick_s if dt is None else dt
    if dt <= 0:
        raise ValueError("dt must be positive")

    commanded = dict(world.commanded)
    for node_id, velocity in commands:
        commanded[node_id] = velocity

    events_by_node: dict[str, list[str]] = {}
    ended = world.ended
    new_uavs: dict[str, UavConfig] = {}
    for uav_id, cfg in world.uavs.items():
        state = airframe.step_kinematics(
            cfg.state, commanded.get(uav_id, (0.0, 0.0, 0.0)), dt
        )
        vehicle = airframe.drain(cfg.vehicle_battery, cfg.draw.hover_power_w, dt)
        payload = airframe.drain(cfg.payload_battery, cfg.draw.payload_power_w, dt)
        was_above = (
            cfg.vehicle_battery.charge_mah > cfg.vehicle_battery.reserve_mah
            and cfg.payload_battery.charge_mah > cfg.payload_battery.reserve_mah
        )
        now_below = (
            vehicle.charge_mah <= vehicle.reserve_mah
            or payload.charge_mah <= payload.reserve_mah
        )
        if was_above and now_below:
            events_by_node.setdefault(uav_id, []).append(f"forced_landing:{uav_id}")
            ended = True
        new_uavs[uav_id] = replace(
            cfg, state=state, vehicle_battery=vehicle, payload_battery=payload
        )

    poses = {n.id: n.pose for n in scenario.nodes}
    for uav_id, cfg in new_uavs.items():
        poses[uav_id] = cfg.state.pose

    t_now = world.t_s + dt
    sample_index = world.sample_index
    cells = scenario.cells()
    new_handover: dict[str, HandoverState] = {}
    samples: list[TelemetrySample] = []

    for ue in scenario.ues():
        measurements = {
            c.id: received_power_dbm(
                c, ue, scenario.channel,
                tx_pose=poses[c.id], rx_pose=poses[ue.id], sample_index=sample_index,
            )
            for c in cells
            if c.id != ue.id
        }
        ho_state, ho_events = cell_network.handover_step(
            world.handover[ue.id], measurements, scenario.handover, dt
        )
        new_handover[ue.id] = ho_state

        metrics = compute_link_metrics(scenario, ue, ho_state.serving, poses, sample_index)

        events = [f"handover:{e}" for e in ho_events]
        events += [f"saturation:{n}" for n in metrics.saturated]
        events += events_by_node.get(ue.id, [])

        if ue.id in new_uavs:
            cfg = new_uavs[ue.id]
            pose = cfg.state.pose
            battery_pct = min(cfg.vehicle_battery.fraction, cfg.payload_battery.fraction)
        else:
            pose = ue.pose
            battery_pct = 1.0

        samples.append(
            TelemetrySample(
                t_s=t_now,
                node_id=ue.id,
                x_m=pose.x,
                y_m=pose.y,
                z_m=pose.z,
                serving_cell=metrics.serving,
                rsrp_dbm=metrics.rsrp_dbm,
                snr_db=metrics.snr_db,
                sinr_db=metrics.sinr_db,
                dl_mbps=metrics.dl_mbps,
                ul_mbps=metrics.ul_mbps,
                battery_pct=battery_pct,
                events=tuple(events),
            )
        )

    new_world = WorldState(
        t_s=t_now,
        uavs=new_uavs,
        commanded=commanded,
        handover=new_handover,
        sample_index=sample_index + 1,
        ended=ended,
    )
    return new_world, samples


class Simulation:
    """Owns the world state; the one writer in any deployment."""

    def __init__(self, scenario: Scenario):
        violations = validate(scenario)
        if violations:
            raise ScenarioError(violations)
        self.scenario = scenario
        self.world = initial_world(scenario)

    @property
    def t_s(self) -> float:
        return self.world.t_s

    @property
    def ended(self) -> bool:
        return self.world.ended

    def step(
        self, commands: Sequence[tuple[str, Velocity]] = ()
    ) -> list[TelemetrySample]:
        self.world, samples = tick(self.scenario, self.world, commands)
        return samples

    def reset(self) -> None:
        self.world = initial_world(self.scenario)


def run_scripted(
    scenario: Scenario,
    schedule: Sequence[tuple[float, str, Velocity]] = (),
    duration_s: Optional[float] = None,
) -> list[TelemetrySample]:
    """Batch run: apply scheduled velocity commands, collect all samples.

    Each schedule entry (t_s, node_id, velocity) is applied at the first
    tick whose start time is >= t_s. Runs until ``duration_s`` (or the
    scenario's duration) or until the simulation ends itself.
    """
    duration = duration_s if duration_s is not None else scenario.duration_s
    if duration is None:
        raise ValueError("batch runs need a bounded duration")
    sim = Simulation(scenario)
    pending = sorted(schedule, key=lambda entry: entry[0])
    samples: list[TelemetrySample] = []
    # half-tick guard keeps the tick count immune to float accumulation
    while sim.t_s < duration - scenario.tick_s / 2 and not sim.ended:
        commands = []
        while pending and pending[0][0] <= sim.t_s:
            _, node_id, velocity = pending.pop(0)
            commands.append((node_id, velocity))
        samples.extend(sim.step(commands))
    return samples


# ---------------------------------------------------------------------------
# coverage sweep


def sweep(
    scenario: Scenario,
    distances_m: Sequence[float],
    heights_m: Sequence[float],
) -> list[tuple[float, float, float, float]]:
    """Static (distance, height) grid of steady-state (DL, UL) throughput.

    The probe UE is placed at each horizontal distance from the single
    BS; rows come out distance-major in the given order.
    """
    violations = validate(scenario)
    if violations:
        raise ScenarioError(violations)
    bs_nodes = [n for n in scenario.nodes if n.role is Role.BS]
    if len(bs_nodes) != 1:
        raise ValueError("sweep requires a single-cell scenario")
    ues = scenario.ues()
    if not ues:
        raise ValueError("sweep requires a UE-role probe node")
    bs, probe = bs_nodes[0], ues[0]

    grid: list[tuple[float, float, float, float]] = []
    for d in distances_m:
        for h in heights_m:
            poses = {n.id: n.pose for n in scenario.nodes}
            poses[probe.id] = Pose(bs.pose.x + d, bs.pose.y, h)
            metrics = compute_link_metrics(scenario, probe, bs.id, poses, sample_index=0)
            grid.append((d, h, metrics.dl_mbps, metrics.ul_mbps))
    return grid


def write_sweep(grid: Sequence[tuple[float, float, float, float]], sink: IO[str]) -> int:
    written = sink.write(SWEEP_HEADER + "\n")
    for d, h, dl, ul in grid:
        written += sink.write(f"{d:.3f},{h:.3f},{dl:.3f},{ul:.3f}\n")
    return written


# ---------------------------------------------------------------------------
# telemetry serialization


def format_sample(sample: TelemetrySample) -> str:
    """One CSV row, floats at three decimals, events ;-joined."""
    return (
        f"{sample.t_s:.3f},{sample.node_id},{sample.x_m:.3f},{sample.y_m:.3f},"
        f"{sample.z_m:.3f},{sample.serving_cell},{sample.rsrp_dbm:.3f},"
        f"{sample.snr_db:.3f},{sample.sinr_db:.3f},{sample.dl_mbps:.3f},"
        f"{sample.ul_mbps:.3f},{sample.battery_pct:.3f},{';'.join(sample.events)}"
    )


def parse_sample(row: str) -> TelemetrySample:
    parts = row.rstrip("\n").split(",")
    if len(parts) != 13:
        raise ValueError(f"telemetry row has {len(parts)} fields, expected 13")
    return TelemetrySample(
        t_s=float(parts[0]),
        node_id=parts[1],
        x_m=float(parts[2]),
        y_m=float(parts[3]),
        z_m=float(parts[4]),
        serving_cell=parts[5],
        rsrp_dbm=float(parts[6]),
        snr_db=float(parts[7]),
        sinr_db=float(parts[8]),
        dl_mbps=float(parts[9]),
        ul_mbps=float(parts[10]),
        battery_pct=float(parts[11]),
        events=tuple(parts[12].split(";")) if parts[12] else (),
    )


def write_telemetry(samples: Iterable[TelemetrySample], sink: IO[str]) -> int:
    """Write header + rows in sample order; returns characters written."""
    written = sink.write(TELEMETRY_HEADER + "\n")
    for sample in samples:
        written += sink.write(format_sample(sample) + "\n")
    return written


def read_telemetry(source: IO[str]) -> list[TelemetrySample]:
    lines = [line for line in source.read().splitlines() if line]
    if not lines or lines[0] != TELEMETRY_HEADER:
        raise ValueError("missing or unexpected telemetry header")
    return [parse_sample(line) for line in lines[1:]]


# ---------------------------------------------------------------------------
# scenario (de)serialization


def _pose_to_dict(pose: Pose) -> dict:
    return {"x": pose.x, "y": pose.y, "z": pose.z}


def _pose_from_dict(data: Mapping) -> Pose:
    return Pose(float(data["x"]), float(data["y"]), float(data["z"]))


def _stage_to_dict(stage: RfStage) -> dict:
    return {
        "name": stage.name,
        "gain_db": stage.gain_db,
        "noise_figure_db": stage.noise_figure_db,
        "p1db_out_dbm": stage.p1db_out_dbm,
        "oip3_dbm": stage.oip3_dbm,
        "passband_mhz": list(stage.passband_mhz) if stage.passband_mhz else None,
    }


def _stage_from_dict(data: Mapping) -> RfStage:
    passband = data.get("passband_mhz")
    return RfStage(
        name=str(data["name"]),
        gain_db=float(data["gain_db"]),
        noise_figure_db=float(data.get("noise_figure_db", 0.0)),
        p1db_out_dbm=None if data.get("p1db_out_dbm") is None else float(data["p1db_out_dbm"]),
        oip3_dbm=None if data.get("oip3_dbm") is None else float(data["oip3_dbm"]),
        passband_mhz=None if passband is None else (float(passband[0]), float(passband[1])),
    )


def _chain_to_dict(chain: RfChain) -> dict:
    return {
        "sdr_gain_setting": chain.sdr_gain_setting,
        "papr_db": chain.papr_db,
        "calibration": {str(k): v for k, v in sorted(chain.sdr_calibration.items())},
        "stages": [_stage_to_dict(s) for s in chain.stages],
    }


def _chain_from_dict(data: Mapping) -> RfChain:
    cal_spec = data.get("calibration", {})
    if "anchor_gain" in cal_spec:
        calibration = build_sdr_calibration(
            anchor_gain=int(cal_spec["anchor_gain"]),
            anchor_dbm=float(cal_spec["anchor_dbm"]),
            gain_min=int(cal_spec.get("gain_min", 0)),
            gain_max=int(cal_spec.get("gain_max", 89)),
        )
    else:
        calibration = {int(k): float(v) for k, v in cal_spec.items()}
    return RfChain(
        stages=tuple(_stage_from_dict(s) for s in data.get("stages", [])),
        sdr_gain_setting=int(data.get("sdr_gain_setting", 0)),
        sdr_calibration=calibration,
        papr_db=float(data.get("papr_db", 8.0)),
    )


def _node_to_dict(node: RadioNode) -> dict:
    return {
        "id": node.id,
        "role": node.role.value,
        "mount": node.mount.value,
        "pose": _pose_to_dict(node.pose),
        "tx_antenna_gain_dbi": node.tx_antenna_gain_dbi,
        "rx_antenna_gain_dbi": node.rx_antenna_gain_dbi,
        "tx_rx_isolation_db": node.tx_rx_isolation_db,
        "max_rx_input_dbm": node.max_rx_input_dbm,
        "tx_chain": _chain_to_dict(node.tx_chain),
        "rx_chain": _chain_to_dict(node.rx_chain),
    }


def _node_from_dict(data: Mapping) -> RadioNode:
    return RadioNode(
        id=str(data["id"]),
        role=Role(data["role"]),
        mount=Mount(data["mount"]),
        pose=_pose_from_dict(data["pose"]),
        tx_chain=_chain_from_dict(data.get("tx_chain", {})),
        rx_chain=_chain_from_dict(data.get("rx_chain", {})),
        tx_antenna_gain_dbi=float(data.get("tx_antenna_gain_dbi", 0.0)),
        rx_antenna_gain_dbi=float(data.get("rx_antenna_gain_dbi", 0.0)),
        tx_rx_isolation_db=(
            None if data.get("tx_rx_isolation_db") is None
            else float(data["tx_rx_isolation_db"])
        ),
        max_rx_input_dbm=float(data.get("max_rx_input_dbm", 0.0)),
    )


def _uav_to_dict(cfg: UavConfig) -> dict:
    st = cfg.state
    return {
        "state": {
            "pose": _pose_to_dict(st.pose),
            "velocity": list(st.velocity),
            "max_speed_ms": st.max_speed_ms,
            "max_climb_ms": st.max_climb_ms,
        },
        "vehicle_battery": _battery_to_dict(cfg.vehicle_battery),
        "payload_battery": _battery_to_dict(cfg.payload_battery),
        "draw": {
            "hover_power_w": cfg.draw.hover_power_w,
            "payload_power_w": cfg.draw.payload_power_w,
        },
    }


def _battery_to_dict(batt: BatteryState) -> dict:
    return {
        "capacity_mah": batt.capacity_mah,
        "voltage_v": batt.voltage_v,
        "charge_mah": batt.charge_mah,
        "reserve_fraction": batt.reserve_fraction,
    }


def _battery_from_dict(data: Mapping) -> BatteryState:
    return BatteryState(
        capacity_mah=float(data["capacity_mah"]),
        voltage_v=float(data["voltage_v"]),
        charge_mah=float(data.get("charge_mah", data["capacity_mah"])),
        reserve_fraction=float(data.get("reserve_fraction", 0.1)),
    )


def _uav_from_dict(data: Mapping) -> UavConfig:
    st = data["state"]
    velocity = tuple(float(v) for v in st.get("velocity", (0.0, 0.0, 0.0)))
    return UavConfig(
        state=UavState(
            pose=_pose_from_dict(st["pose"]),
            velocity=velocity,  # type: ignore[arg-type]
            max_speed_ms=float(st.get("max_speed_ms", 10.0)),
            max_climb_ms=float(st.get("max_climb_ms", 3.0)),
        ),
        vehicle_battery=_battery_from_dict(data["vehicle_battery"]),
        payload_battery=_battery_from_dict(data["payload_battery"]),
        draw=PowerDraw(
            hover_power_w=float(data["draw"]["hover_power_w"]),
            payload_power_w=float(data["draw"]["payload_power_w"]),
        ),
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    profile = scenario.profile
    return {
        "schema": SCHEMA_VERSION,
        "channel": {
            "freq_mhz": scenario.channel.freq_mhz,
            "pathloss_exponent": scenario.channel.pathloss_exponent,
            "shadowing_sigma_db": scenario.channel.shadowing_sigma_db,
            "rng_seed": scenario.channel.rng_seed,
        },
        "profile": {
            "bandwidth_mhz": profile.bandwidth_mhz,
            "usable_bandwidth_mhz": profile.usable_bandwidth_mhz,
            "dl_overhead": profile.dl_overhead,
            "ul_overhead": profile.ul_overhead,
            "dl_cap_mbps": profile.dl_cap_mbps,
            "ul_cap_mbps": profile.ul_cap_mbps,
            "dl_impl_factor": profile.dl_impl_factor,
            "ul_impl_factor": profile.ul_impl_factor,
            "cqi_table": [list(row) for row in profile.cqi_table],
        },
        "handover": {
            "hysteresis_db": scenario.handover.hysteresis_db,
            "time_to_trigger_s": scenario.handover.time_to_trigger_s,
        },
        "tick_s": scenario.tick_s,
        "duration_s": scenario.duration_s,
        "nodes": [_node_to_dict(n) for n in scenario.nodes],
        "uavs": {uid: _uav_to_dict(cfg) for uid, cfg in scenario.uavs.items()},
    }


def scenario_from_dict(data: Mapping) -> Scenario:
    if data.get("schema") != SCHEMA_VERSION:
        raise ScenarioError([f"unsupported scenario schema {data.get('schema')!r}"])
    ch = data["channel"]
    channel = ChannelParams(
        freq_mhz=float(ch["freq_mhz"]),
        pathloss_exponent=float(ch.get("pathloss_exponent", 2.2)),
        shadowing_sigma_db=float(ch.get("shadowing_sigma_db", 0.0)),
        rng_seed=int(ch.get("rng_seed", 0)),
    )
    pr = data.get("profile", {})
    table = pr.get("cqi_table")
    profile = LinkProfile(
        bandwidth_mhz=float(pr.get("bandwidth_mhz", 20.0)),
        usable_bandwidth_mhz=float(pr.get("usable_bandwidth_mhz", 18.0)),
        dl_overhead=float(pr.get("dl_overhead", 0.25)),
        ul_overhead=float(pr.get("ul_overhead", 0.25)),
        dl_cap_mbps=float(pr.get("dl_cap_mbps", 75.0)),
        ul_cap_mbps=float(pr.get("ul_cap_mbps", 50.0)),
        dl_impl_factor=float(pr.get("dl_impl_factor", 0.80)),
        ul_impl_factor=float(pr.get("ul_impl_factor", 1.00)),
        cqi_table=(
            link_layer.DEFAULT_CQI_TABLE
            if table is None
            else tuple((float(t), float(e)) for t, e in table)
        ),
    )
    ho = data.get("handover", {})
    handover = HandoverConfig(
        hysteresis_db=float(ho.get("hysteresis_db", 3.0)),
        time_to_trigger_s=float(ho.get("time_to_trigger_s", 0.48)),
    )
    return Scenario(
        channel=channel,
        profile=profile,
        nodes=tuple(_node_from_dict(n) for n in data.get("nodes", [])),
        uavs={str(k): _uav_from_dict(v) for k, v in data.get("uavs", {}).items()},
        handover=handover,
        tick_s=float(data.get("tick_s", 0.1)),
        duration_s=(
            None if data.get("duration_s") is None else float(data["duration_s"])
        ),
    )


def loads_scenario(text: str) -> Scenario:
    return scenario_from_dict(json.loads(text))


def load_scenario(path: str) -> Scenario:
    with open(path) as fh:
        return scenario_from_dict(json.load(fh))


def baseline() -> Scenario:
    """The shipped single-cell C-band scenario used throughout the tests."""
    ref = resources.files("aerocell").joinpath("data/scenarios/baseline.json")
    return loads_scenario(ref.read_text())
