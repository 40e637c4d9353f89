import dataclasses

import pytest

from aerocell import Pose, baseline
from aerocell.cell_network import HandoverConfig


@pytest.fixture
def scenario():
    return baseline()


@pytest.fixture
def two_cell():
    """Builder for a two-station flyby layout on the baseline hardware."""

    def build(hysteresis_db=3.0, time_to_trigger_s=0.48, spacing_m=2000.0):
        base = baseline()
        enb1 = base.node("enb1")
        enb2 = dataclasses.replace(enb1, id="enb2", pose=Pose(spacing_m, 0.0, 2.5))
        return dataclasses.replace(
            base,
            nodes=(enb1, enb2, base.node("uav1")),
            handover=HandoverConfig(
                hysteresis_db=hysteresis_db, time_to_trigger_s=time_to_trigger_s
            ),
        )

    return build
