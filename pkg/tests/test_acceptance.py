"""Acceptance gate: every shipped-behavior criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion.
"""

import dataclasses
import io
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from aerocell.airframe import BatteryState, drain, size_battery
from aerocell.cell_network import HandoverConfig, HandoverState, handover_step, sinr_at
from aerocell.propagation import ChannelParams, Pose, path_loss_db
from aerocell.rf_chain import RfChain, RfStage, cascade_noise_figure, chain_output_power
from aerocell.sim_engine import baseline, run_scripted, sweep, write_telemetry

DISTANCES = [50.0, 100.0, 200.0, 400.0, 600.0, 800.0, 1000.0, 1200.0]
HEIGHTS = [10.0, 30.0, 50.0, 100.0]

FLYBY_SCHEDULE = [(0.0, "uav1", (10.0, 0.0, 0.0)), (115.0, "uav1", (0.0, 0.0, 0.0))]


@contextmanager
def criterion(name):
    try:
        yield
    except Exception:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def with_exponent(scenario, exponent):
    channel = dataclasses.replace(scenario.channel, pathloss_exponent=exponent)
    return dataclasses.replace(scenario, channel=channel)


def two_cell_scenario(hysteresis_db=3.0):
    base = baseline()
    enb1 = base.node("enb1")
    enb2 = dataclasses.replace(enb1, id="enb2", pose=Pose(2000.0, 0.0, 2.5))
    return dataclasses.replace(
        base,
        nodes=(enb1, enb2, base.node("uav1")),
        handover=HandoverConfig(hysteresis_db=hysteresis_db),
    )


def test_near_station_rates():
    with criterion("near-station rates: (50 m, 20 m) gives DL 60 / UL 50 within 15%"):
        started = time.perf_counter()
        ((_, _, dl, ul),) = sweep(baseline(), [50.0], [20.0])
        elapsed = time.perf_counter() - started
        assert abs(dl - 60.0) <= 0.15 * 60.0
        assert abs(ul - 50.0) <= 0.15 * 50.0
        assert elapsed < 1.0


def test_long_range_floor():
    with criterion(
        "long-range floor: DL and UL above 10 Mbps at 1.0-1.2 km for exponents 2.0-2.3"
    ):
        started = time.perf_counter()
        for exponent in (2.0, 2.1, 2.2, 2.25, 2.3):
            grid = sweep(
                with_exponent(baseline(), exponent), [1000.0, 1100.0, 1200.0], HEIGHTS
            )
            for d, h, dl, ul in grid:
                assert dl > 10.0, f"DL {dl} at d={d} h={h} n={exponent}"
                assert ul > 10.0, f"UL {ul} at d={d} h={h} n={exponent}"
        assert time.perf_counter() - started < 5.0


def test_mid_range_rates():
    with criterion("mid-range: DL at least 45 Mbps out to 400 m"):
        started = time.perf_counter()
        near = [d for d in DISTANCES if d <= 400.0]
        for d, h, dl, _ in sweep(baseline(), near, HEIGHTS):
            assert dl >= 45.0, f"DL {dl} at d={d} h={h}"
        assert time.perf_counter() - started < 5.0


def test_transmit_chain_calibration():
    with criterion(
        "calibration: station chain at gain 72 gives 21 dBm, mobile at 75 gives 15 dBm (±0.5)"
    ):
        scenario = baseline()
        station = scenario.node("enb1").tx_chain
        mobile = scenario.node("uav1").tx_chain
        station_out = chain_output_power(station.sdr_output_dbm(), station)
        mobile_out = chain_output_power(mobile.sdr_output_dbm(), mobile)
        assert abs(station_out.p_out_dbm - 21.0) <= 0.5
        assert abs(mobile_out.p_out_dbm - 15.0) <= 0.5
        assert not station_out.distorted
        assert not mobile_out.distorted


def test_oracle_suites():
    with criterion(
        "oracles: cascade NF vs linear-domain oracle (1000 chains), 1 km loss, SINR sums"
    ):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            stages = tuple(
                RfStage(
                    f"s{i}",
                    gain_db=float(rng.uniform(-12, 46)),
                    noise_figure_db=float(rng.uniform(0, 12)),
                )
                for i in range(rng.integers(1, 8))
            )
            # independent oracle: equivalent-noise-temperature cascade
            t0, temp_sum, gain_cum = 290.0, 0.0, 1.0
            for stage in stages:
                factor = 10 ** (stage.noise_figure_db / 10)
                temp_sum += (factor - 1.0) * t0 / gain_cum
                gain_cum *= 10 ** (stage.gain_db / 10)
            want_factor = 1.0 + temp_sum / t0
            got_factor = 10 ** (cascade_noise_figure(RfChain(stages=stages)) / 10)
            assert abs(got_factor - want_factor) / want_factor <= 1e-9

        fspl = ChannelParams(freq_mhz=3500.0, pathloss_exponent=2.0)
        loss = path_loss_db(fspl, Pose(0, 0, 0), Pose(1000.0, 0, 0))
        assert abs(loss - 103.32) <= 0.01

        for _ in range(500):
            s = float(rng.uniform(-110, -40))
            ints = [float(v) for v in rng.uniform(-120, -60, size=rng.integers(0, 6))]
            n = float(rng.uniform(-110, -90))
            total = math.fsum([10 ** (n / 10)] + [10 ** (i / 10) for i in ints])
            want = 10 * math.log10(10 ** (s / 10) / total)
            assert sinr_at(s, ints, n) == pytest.approx(want, abs=1e-9)


def test_battery_rules():
    with criterion(
        "battery: sizing rule exact at 3000 mAh, drain round-trip, energy bookkeeping"
    ):
        assert size_battery(111.0, 18.5, 0.5) == 3000.0

        rng = np.random.default_rng(77)
        for _ in range(100):
            power = float(rng.uniform(10, 2000))
            voltage = float(rng.uniform(7, 51))
            duration_h = float(rng.uniform(0.05, 3.0))
            capacity = size_battery(power, voltage, duration_h)
            pack = BatteryState(
                capacity_mah=capacity, voltage_v=voltage, charge_mah=capacity,
                reserve_fraction=0.0,
            )
            final = drain(pack, power, duration_h * 3600.0)
            assert 0.0 <= final.charge_mah <= 100.0 + 1e-6

        pack = BatteryState(
            capacity_mah=2_000_000.0, voltage_v=22.8, charge_mah=2_000_000.0
        )
        powers = rng.uniform(50, 1800, size=10_000)
        current = pack
        for p in powers:
            current = drain(current, float(p), 0.1)
        spent_expected = math.fsum(
            float(p) / 22.8 * 0.1 / 3600.0 * 1000.0 for p in powers
        )
        spent_actual = pack.charge_mah - current.charge_mah
        assert abs(spent_actual - spent_expected) / spent_expected <= 1e-9


def test_handover_behavior():
    with criterion(
        "handover: flyby gives exactly one event, none at 20 dB hysteresis or ping-pong; "
        "telemetry byte-identical across reruns"
    ):
        samples = run_scripted(two_cell_scenario(), FLYBY_SCHEDULE, duration_s=130.0)
        handovers = [e for s in samples for e in s.events if e.startswith("handover:")]
        assert handovers == ["handover:enb1->enb2"]

        wide = run_scripted(
            two_cell_scenario(hysteresis_db=20.0), FLYBY_SCHEDULE, duration_s=130.0
        )
        assert all(not s.events for s in wide)

        state = HandoverState(serving="a")
        config = HandoverConfig()
        ping_pong_events = []
        for i in range(400):
            strong, weak = (-70.0, -80.0) if i % 2 == 0 else (-80.0, -70.0)
            state, events = handover_step(
                state, {"a": strong, "b": weak}, config, 0.1
            )
            ping_pong_events.extend(events)
        assert ping_pong_events == []

        logs = []
        for _ in range(2):
            sink = io.StringIO()
            write_telemetry(
                run_scripted(two_cell_scenario(), FLYBY_SCHEDULE, duration_s=130.0), sink
            )
            logs.append(sink.getvalue())
        assert logs[0] == logs[1]


def test_sweep_monotonicity():
    with criterion("monotonicity: sweep rates never increase with distance at any height"):
        grid = sweep(baseline(), DISTANCES, HEIGHTS)
        for height in HEIGHTS:
            rates = [(dl, ul) for _, h, dl, ul in grid if h == height]
            assert all(b[0] <= a[0] for a, b in zip(rates, rates[1:]))
            assert all(b[1] <= a[1] for a, b in zip(rates, rates[1:]))
