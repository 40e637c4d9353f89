"""UAV kinematics, battery bookkeeping, and the payload sizing rule.

Flight is operator-driven: the vehicle tracks a commanded velocity
setpoint instantly, subject to a total-speed clamp and a separate climb
rate clamp, and integrates position per tick. Vehicle and payload
batteries are independent packs; endurance accounting keeps a reserve
fraction that a conservative operator would not fly below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .propagation import Pose

Velocity = tuple[float, float, float]


@dataclass(frozen=True)
class UavState:
    pose: Pose
    velocity: Velocity = (0.0, 0.0, 0.0)
    max_speed_ms: float = 10.0
    max_climb_ms: float = 3.0

    def __post_init__(self) -> None:
        if self.max_speed_ms <= 0 or self.max_climb_ms <= 0:
            raise ValueError("speed limits must be positive")
        if math.hypot(*self.velocity) > self.max_speed_ms + 1e-9:
            raise ValueError("|velocity| must not exceed max_speed")


@dataclass(frozen=True)
class BatteryState:
    capacity_mah: float
    voltage_v: float
    charge_mah: float
    reserve_fraction: float = 0.1

    def __post_init__(self) -> None:
        if self.capacity_mah <= 0 or self.voltage_v <= 0:
            raise ValueError("capacity and voltage must be positive")
        if not 0.0 <= self.charge_mah <= self.capacity_mah:
            raise ValueError("charge must lie in [0, capacity]")
        if not 0.0 <= self.reserve_fraction < 1.0:
            raise ValueError("reserve fraction must lie in [0, 1)")

    @property
    def reserve_mah(self) -> float:
        return self.reserve_fraction * self.capacity_mah

    @property
    def fraction(self) -> float:
        return self.charge_mah / self.capacity_mah


@dataclass(frozen=True)
class PowerDraw:
    hover_power_w: float
    payload_power_w: float

    def __post_init__(self) -> None:
        if self.hover_power_w < 0 or self.payload_power_w < 0:
            raise ValueError("power draws must be >= 0")


def clamp_velocity(commanded: Velocity, state: UavState) -> Velocity:
    """Apply the airframe limits to a commanded velocity.

    Vertical rate is clamped first; the horizontal component is then
    scaled so the total speed stays within max_speed.
    """
    vx, vy, vz = commanded
    vz_lim = min(state.max_climb_ms, state.max_speed_ms)
    vz = max(-vz_lim, min(vz_lim, vz))
    h = math.hypot(vx, vy)
    h_max = math.sqrt(max(state.max_speed_ms**2 - vz**2, 0.0))
    if h > h_max:
        scale = h_max / h if h > 0 else 0.0
        vx, vy = vx * scale, vy * scale
    return (vx, vy, vz)


def step_kinematics(state: UavState, commanded_velocity: Velocity, dt_s: float) -> UavState:
    """One integration step; altitude never goes below ground."""
    if dt_s <= 0:
        raise ValueError("dt must be positive")
    vx, vy, vz = clamp_velocity(commanded_velocity, state)
    pose = state.pose
    new_pose = replace(
        pose,
        x=pose.x + vx * dt_s,
        y=pose.y + vy * dt_s,
        z=max(pose.z + vz * dt_s, 0.0),
    )
    return replace(state, pose=new_pose, velocity=(vx, vy, vz))


def drain(battery: BatteryState, total_power_w: float, dt_s: float) -> BatteryState:
    """Discharge at constant power for dt seconds; charge floors at 0."""
    if dt_s <= 0:
        raise ValueError("dt must be positive")
    if total_power_w < 0:
        raise ValueError("power draw must be >= 0")
    used_mah = (total_power_w / battery.voltage_v) * (dt_s / 3600.0) * 1000.0
    return replace(battery, charge_mah=max(battery.charge_mah - used_mah, 0.0))


def size_battery(max_power_w: float, voltage_v: float, duration_h: float) -> float:
    """Capacity (mAh) to sustain max_power for the duration, ceiled to 100 mAh.

    The worst-case draw already is the margin; no extra safety factor.
    """
    if max_power_w <= 0 or voltage_v <= 0 or duration_h <= 0:
        raise ValueError("power, voltage, and duration must be positive")
    raw_mah = (max_power_w / voltage_v) * duration_h * 1000.0
    # round() guards against ceil() tipping on float dust (e.g. x.000000001)
    return math.ceil(round(raw_mah / 100.0, 9)) * 100.0


def endurance_remaining_s(battery: BatteryState, total_power_w: float) -> float:
    """Seconds of draw left before the charge hits the reserve level."""
    if total_power_w < 0:
        raise ValueError("power draw must be >= 0")
    if total_power_w == 0:
        return math.inf
    usable_ah = max(battery.charge_mah - battery.reserve_mah, 0.0) / 1000.0
    current_a = total_power_w / battery.voltage_v
    return usable_ah / current_a * 3600.0
