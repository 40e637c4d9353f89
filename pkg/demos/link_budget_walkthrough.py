#!/usr/bin/env python3
"""Walk one link budget end to end, the way you would on a whiteboard.

Start from the SDR calibration point, push power through the transmit
cascade, cross the air-to-ground channel, and land on an LTE rate.
"""

from aerocell import (
    NoiseModel,
    Pose,
    cascade_noise_figure,
    chain_output_power,
    distance_3d,
    link_throughput,
    noise_floor_dbm,
    path_loss_db,
    rx_power_dbm,
    snr_to_cqi,
)
from aerocell.link_layer import DL, UL, LinkProfile, sinr_db
from aerocell.sim_engine import baseline

scenario = baseline()
station = scenario.node("enb1")
mobile = scenario.node("uav1")
profile = LinkProfile()

print("== transmit chains ==")
for node in (station, mobile):
    chain = node.tx_chain
    sdr_out = chain.sdr_output_dbm()
    out = chain_output_power(sdr_out, chain)
    print(
        f"{node.id}: SDR gain {chain.sdr_gain_setting} -> {sdr_out:+.1f} dBm into "
        f"[{' -> '.join(s.name for s in chain.stages)}] -> {out.p_out_dbm:+.1f} dBm "
        f"({'DISTORTED' if out.distorted else 'clean'}), EIRP {node.eirp_dbm():+.1f} dBm"
    )

print("\n== receive front end ==")
nf = cascade_noise_figure(mobile.rx_chain)
floor = noise_floor_dbm(NoiseModel(receiver_nf_db=nf), profile.bandwidth_mhz * 1e6)
print(f"cascade noise figure {nf:.2f} dB -> 20 MHz noise floor {floor:.2f} dBm")

print("\n== downlink vs range (line of sight over the field) ==")
print(f"{'dist':>6} {'3D path':>8} {'loss dB':>8} {'rx dBm':>8} {'SINR':>6} "
      f"{'CQI':>4} {'DL Mbps':>8} {'UL Mbps':>8}")
channel = scenario.channel
for d in (50, 100, 200, 400, 800, 1000, 1200, 1500):
    uav = Pose(float(d), 0.0, 50.0)
    dist = distance_3d(station.pose, uav)
    loss = path_loss_db(channel, station.pose, uav)
    rx = rx_power_dbm(station.eirp_dbm(), mobile.rx_antenna_gain_dbi, loss)
    sinr = sinr_db(rx, None, floor)
    cqi = snr_to_cqi(sinr, profile)
    noise = NoiseModel(receiver_nf_db=nf)
    dl = link_throughput(rx, None, noise, DL, profile)
    ul_rx = rx_power_dbm(mobile.eirp_dbm(), station.rx_antenna_gain_dbi, loss)
    ul = link_throughput(ul_rx, None, noise, UL, profile)
    print(f"{d:>6} {dist:>8.1f} {loss:>8.2f} {rx:>8.2f} {sinr:>6.2f} "
          f"{cqi:>4} {dl:>8.2f} {ul:>8.2f}")

print("\nThe rate holds its ceiling until path loss finally pushes the "
      "SINR down the CQI ladder, and it is still double digits past 1 km.")
