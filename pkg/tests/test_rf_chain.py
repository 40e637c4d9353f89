import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aerocell.rf_chain import (
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

LNA = RfStage("lna", gain_db=22.0, noise_figure_db=1.4, p1db_out_dbm=13.0, oip3_dbm=30.0)
SDR_RX = RfStage("sdr_rx", gain_db=0.0, noise_figure_db=8.0)
PA_15W = RfStage("pa_15w", gain_db=46.0, noise_figure_db=10.0, p1db_out_dbm=38.0, oip3_dbm=49.0)
PA_1W = RfStage("pa_1w", gain_db=35.0, noise_figure_db=4.5, p1db_out_dbm=32.0, oip3_dbm=40.0)
TX_FILTER = RfStage("tx_lowpass", gain_db=-1.0, noise_figure_db=1.0)


def friis_oracle_db(stages):
    """Independent cascade oracle via equivalent noise temperatures."""
    t0 = 290.0
    temp_sum, gain_cum = 0.0, 1.0
    for stage in stages:
        factor = 10 ** (stage.noise_figure_db / 10)
        temp_sum += (factor - 1.0) * t0 / gain_cum
        gain_cum *= 10 ** (stage.gain_db / 10)
    return 10 * math.log10(1.0 + temp_sum / t0)


class TestCascadeNoiseFigure:
    def test_single_stage_is_identity(self):
        chain = RfChain(stages=(RfStage("pa", gain_db=46.0, noise_figure_db=10.0),))
        assert cascade_noise_figure(chain) == pytest.approx(10.0, abs=1e-12)

    def test_lna_then_sdr(self):
        # frozen from the temperature-cascade oracle, computed ahead of the build
        chain = RfChain(stages=(LNA, SDR_RX))
        assert cascade_noise_figure(chain) == pytest.approx(1.5041421243, abs=1e-6)

    def test_lossless_transparent_stage_changes_nothing(self):
        ideal = RfStage("thru", gain_db=0.0, noise_figure_db=0.0)
        chain = RfChain(stages=(LNA, SDR_RX))
        prepended = RfChain(stages=(ideal, LNA, SDR_RX))
        assert cascade_noise_figure(prepended) == pytest.approx(
            cascade_noise_figure(chain), abs=1e-12
        )

    def test_empty_chain_is_zero(self):
        assert cascade_noise_figure(RfChain()) == 0.0

    def test_never_below_first_stage_nf(self):
        chain = RfChain(stages=(LNA, RfStage("x", gain_db=5.0, noise_figure_db=6.0)))
        assert cascade_noise_figure(chain) >= LNA.noise_figure_db

    def test_high_gain_front_stage_dominates(self):
        # 22 dB of front gain pins the cascade within 0.2 dB of the LNA alone
        chain = RfChain(stages=(LNA, SDR_RX))
        assert abs(cascade_noise_figure(chain) - LNA.noise_figure_db) <= 0.2

    def test_matches_oracle_on_random_chains(self):
        import numpy as np

        rng = np.random.default_rng(7)
        for _ in range(200):
            stages = tuple(
                RfStage(
                    f"s{i}",
                    gain_db=float(rng.uniform(-10, 40)),
                    noise_figure_db=float(rng.uniform(0, 12)),
                )
                for i in range(rng.integers(1, 7))
            )
            got = 10 ** (cascade_noise_figure(RfChain(stages=stages)) / 10)
            want = 10 ** (friis_oracle_db(stages) / 10)
            assert abs(got - want) / want <= 1e-9


class TestChainOutputPower:
    def test_station_transmit_chain(self):
        chain = RfChain(stages=(PA_15W, TX_FILTER))
        out = chain_output_power(-24.0, chain)
        assert out.p_out_dbm == pytest.approx(21.0, abs=1e-12)
        assert not out.distorted  # 22 dBm + 8 dB peaks stay under the 38 dBm P1dB

    def test_empty_chain_is_identity(self):
        out = chain_output_power(-3.7, RfChain())
        assert out == (-3.7, False)

    def test_clamps_and_flags_overdrive(self):
        chain = RfChain(stages=(PA_1W,))
        out = chain_output_power(5.0, chain)
        assert out.p_out_dbm == pytest.approx(32.0, abs=1e-12)
        assert out.distorted

    def test_papr_margin_flags_before_clamp(self):
        # average stays below P1dB but the 8 dB peaks already cross it
        chain = RfChain(stages=(PA_1W,))
        out = chain_output_power(-6.0, chain)
        assert out.p_out_dbm == pytest.approx(29.0)
        assert out.distorted

    @given(st.floats(min_value=-60, max_value=30))
    def test_monotone_in_input(self, p_in):
        chain = RfChain(stages=(PA_15W, TX_FILTER))
        lo = chain_output_power(p_in, chain).p_out_dbm
        hi = chain_output_power(p_in + 1.0, chain).p_out_dbm
        assert hi >= lo

    def test_never_exceeds_stage_budget(self):
        chain = RfChain(stages=(PA_15W, TX_FILTER, PA_1W))
        # min over compressing stages of P1dB plus all downstream gain
        budget = min(38.0 + (-1.0 + 35.0), 32.0)
        for p_in in range(-50, 40, 3):
            assert chain_output_power(float(p_in), chain).p_out_dbm <= budget + 1e-9

    def test_clamp_is_idempotent(self):
        chain = RfChain(stages=(PA_1W,))
        saturated = chain_output_power(10.0, chain).p_out_dbm
        assert chain_output_power(25.0, chain).p_out_dbm == saturated

    def test_rejects_non_finite_input(self):
        with pytest.raises(InvalidStageError):
            chain_output_power(math.nan, RfChain())


class TestIm3Level:
    def test_intercept_point_definition(self):
        assert im3_level(40.0, 40.0) == pytest.approx(40.0)

    def test_direct_substitution(self):
        assert im3_level(0.0, 40.0) == pytest.approx(-80.0)
        assert im3_level(10.0, 49.0) == pytest.approx(-68.0)

    def test_three_to_one_slope(self):
        for p in range(-20, 21, 5):
            assert im3_level(p + 1.0, 49.0) - im3_level(float(p), 49.0) == pytest.approx(3.0)

    def test_requires_a_rating(self):
        with pytest.raises(NotApplicableError):
            im3_level(10.0, None)


class TestEirp:
    def test_station_chain(self):
        chain = RfChain(
            stages=(PA_15W, TX_FILTER),
            sdr_gain_setting=72,
            sdr_calibration=build_sdr_calibration(72, -24.0),
        )
        assert effective_isotropic_radiated_power(chain, 3.0) == pytest.approx(24.0)

    def test_mobile_chain(self):
        chain = RfChain(
            stages=(PA_1W, TX_FILTER),
            sdr_gain_setting=75,
            sdr_calibration=build_sdr_calibration(75, -19.0),
        )
        assert effective_isotropic_radiated_power(chain, 2.0) == pytest.approx(17.0)

    def test_zero_gain_antenna_passes_chain_output(self):
        chain = RfChain(
            stages=(PA_15W, TX_FILTER),
            sdr_gain_setting=72,
            sdr_calibration={72: -24.0},
        )
        assert effective_isotropic_radiated_power(chain, 0.0) == pytest.approx(21.0)

    def test_missing_calibration_entry(self):
        chain = RfChain(stages=(PA_15W,), sdr_gain_setting=60, sdr_calibration={72: -24.0})
        with pytest.raises(UncalibratedGainError):
            effective_isotropic_radiated_power(chain, 3.0)

    def test_calibration_builder_steps_one_db_per_index(self):
        cal = build_sdr_calibration(72, -24.0, gain_min=70, gain_max=74)
        assert cal == {70: -26.0, 71: -25.0, 72: -24.0, 73: -23.0, 74: -22.0}


class TestStageValidation:
    def test_negative_noise_figure(self):
        with pytest.raises(InvalidStageError):
            RfStage("bad", gain_db=10.0, noise_figure_db=-1.0)

    def test_non_finite_gain(self):
        with pytest.raises(InvalidStageError):
            RfStage("bad", gain_db=math.inf)

    def test_oip3_below_p1db(self):
        with pytest.raises(InvalidStageError):
            RfStage("bad", gain_db=30.0, p1db_out_dbm=38.0, oip3_dbm=30.0)

    def test_inverted_passband(self):
        with pytest.raises(InvalidStageError):
            RfStage("bad", gain_db=0.0, passband_mhz=(4400.0, 3000.0))

    def test_negative_papr(self):
        with pytest.raises(InvalidStageError):
            RfChain(papr_db=-1.0)

    def test_passband_predicate(self):
        filt = RfStage("bp", gain_db=-1.0, passband_mhz=(3000.0, 4300.0))
        assert filt.passes(3500.0)
        assert not filt.passes(5000.0)
        assert RfStage("wire", gain_db=0.0).passes(123456.0)
