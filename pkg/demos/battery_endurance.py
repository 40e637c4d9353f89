#!/usr/bin/env python3
"""Size the radio payload battery and account for airborne endurance.

The sizing rule is worst-case draw times desired flight time, ceiled to
the next 100 mAh pack; the vehicle and payload packs then drain
independently during a hover until one of them hits its reserve.
"""

from aerocell.airframe import BatteryState, drain, endurance_remaining_s, size_battery
from aerocell.sim_engine import baseline, run_scripted

print("== payload pack sizing (worst-case draw, 0.5 h flight) ==")
for power in (37.0, 55.5, 111.0, 150.0):
    pack_mah = size_battery(power, 18.5, 0.5)
    print(f"{power:6.1f} W at 18.5 V for 0.5 h -> {pack_mah:6.0f} mAh")

print("\n== endurance at the chosen operating point ==")
payload = BatteryState(capacity_mah=3000.0, voltage_v=18.5, charge_mah=3000.0)
vehicle = BatteryState(capacity_mah=34200.0, voltage_v=22.8, charge_mah=34200.0)
for name, pack, power in (("payload", payload, 111.0), ("vehicle", vehicle, 1400.0)):
    left = endurance_remaining_s(pack, power)
    print(f"{name}: {pack.capacity_mah:.0f} mAh at {power:.0f} W -> "
          f"{left:.0f} s ({left / 60:.1f} min) above the 10% reserve")

print("\n== hover until the first pack hits reserve ==")
scenario = baseline()
samples = run_scripted(scenario, duration_s=3600.0)
landing = next(s for s in samples if "forced_landing:uav1" in s.events)
print(f"forced landing at t = {landing.t_s:.0f} s "
      f"({landing.t_s / 60:.1f} min), battery at {landing.battery_pct:.1%}")

half_hour = drain(payload, 111.0, 1800.0)
print(f"\nsanity: the sized 3000 mAh pack ends a full 0.5 h at 111 W with "
      f"{half_hour.charge_mah:.0f} mAh left (designed to the wire, no margin)")
