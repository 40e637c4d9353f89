#!/usr/bin/env python3
"""Reproduce the static coverage surface: rate vs distance at several heights.

Prints the grid and, when matplotlib is importable, saves coverage_sweep.png.
"""

from aerocell.sim_engine import baseline, sweep

DISTANCES = [50, 100, 200, 400, 600, 800, 1000, 1200]
HEIGHTS = [10, 30, 50, 100]

grid = sweep(baseline(), [float(d) for d in DISTANCES], [float(h) for h in HEIGHTS])
by_height = {h: [(d, dl, ul) for d, hh, dl, ul in grid if hh == h] for h in HEIGHTS}

for direction, col in (("downlink", 1), ("uplink", 2)):
    print(f"== {direction} Mbps ==")
    print(f"{'d [m]':>7} " + " ".join(f"h={h:<4}" for h in HEIGHTS))
    for i, d in enumerate(DISTANCES):
        row = " ".join(f"{by_height[h][i][col]:6.2f}" for h in HEIGHTS)
        print(f"{d:>7} {row}")
    print()

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping the plot")
else:
    fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
    for ax, (direction, col) in zip(axes, (("DL", 1), ("UL", 2))):
        for h in HEIGHTS:
            ax.plot(
                DISTANCES,
                [row[col] for row in by_height[h]],
                marker="o",
                label=f"h = {h} m",
            )
        ax.set_title(f"{direction} throughput, 20 MHz FDD at 3.5 GHz")
        ax.set_xlabel("horizontal distance from the station [m]")
        ax.grid(True, alpha=0.4)
    axes[0].set_ylabel("Mbps")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig("coverage_sweep.png", dpi=120)
    print("saved coverage_sweep.png")
