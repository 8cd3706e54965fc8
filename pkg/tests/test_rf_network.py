"""Ladder networks, filter synthesis, and the diplexer junction model."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fluxline.rf_network as rf

DB = lambda x: 20.0 * np.log10(np.abs(x))


def tee_attenuator(db: float, z0: float = 50.0) -> rf.LadderNetwork:
    """Matched resistive T-pad, used as a lossy reference network."""
    k = 10.0 ** (db / 20.0)
    r_series = z0 * (k - 1.0) / (k + 1.0)
    r_shunt = 2.0 * z0 * k / (k * k - 1.0)
    return rf.LadderNetwork(
        elements=(
            rf.Element("series", "R", r_series),
            rf.Element("shunt", "R", r_shunt),
            rf.Element("series", "R", r_series),
        ),
        z0=z0,
    )


class TestElements:
    def test_series_stamp(self):
        el = rf.Element("series", "L", 1e-9)
        f = 1000.0  # MHz
        m = rf.element_abcd(el, f)
        assert m[0, 0] == 1.0 and m[1, 1] == 1.0 and m[1, 0] == 0.0
        assert m[0, 1] == pytest.approx(1j * 2.0 * math.pi * f * 1e6 * 1e-9)

    def test_shunt_stamp(self):
        el = rf.Element("shunt", "C", 1e-12)
        m = rf.element_abcd(el, 500.0)
        assert m[0, 1] == 0.0
        assert m[1, 0] == pytest.approx(1j * 2.0 * math.pi * 500e6 * 1e-12)

    def test_vanishing_impedance_is_identity(self):
        # series Z -> 0 and shunt Y -> 0 collapse to the identity two-port
        tiny_l = rf.element_abcd(rf.Element("series", "L", 1e-18), 10.0)
        assert np.allclose(tiny_l, np.eye(2), atol=1e-9)
        tiny_c = rf.element_abcd(rf.Element("shunt", "C", 1e-21), 10.0)
        assert np.allclose(tiny_c, np.eye(2), atol=1e-9)

    def test_validation(self):
        with pytest.raises(ValueError):
            rf.Element("diagonal", "L", 1e-9)
        with pytest.raises(ValueError):
            rf.Element("series", "X", 1e-9)
        with pytest.raises(ValueError):
            rf.Element("series", "L", 0.0)
        with pytest.raises(ValueError):
            rf.element_abcd(rf.Element("series", "L", 1e-9), 0.0)


class TestCascadeAndSParams:
    def test_identity_cascade(self):
        eye = np.eye(2, dtype=complex)
        assert np.allclose(rf.cascade(eye, eye), eye)
        s11, s21 = rf.to_s_params(eye, 50.0)
        assert s11 == 0.0
        assert s21 == pytest.approx(1.0)

    def test_series_resistor_at_z0(self):
        m = rf.element_abcd(rf.Element("series", "R", 50.0), 100.0)
        _, s21 = rf.to_s_params(m, 50.0)
        assert s21 == pytest.approx(2.0 / 3.0, rel=1e-12)
        assert 20.0 * math.log10(abs(s21)) == pytest.approx(-3.52, abs=0.01)

    def test_matched_attenuators_cascade_in_db(self):
        pad = tee_attenuator(10.0)
        f = 750.0
        one = rf.network_abcd(pad, f)
        _, s21_two = rf.to_s_params(rf.cascade(one, one), 50.0)
        assert DB(s21_two) == pytest.approx(-20.0, abs=1e-9)

    def test_singular_conversion_raises(self):
        m = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)  # A+D = 0, B=C=0
        with pytest.raises(ValueError, match="non-physical"):
            rf.to_s_params(m, 50.0)


class TestPrototype:
    @pytest.mark.parametrize("n", range(1, 10))
    def test_g_values_closed_form(self, n):
        gs = rf.butterworth_g(n)
        for k, g in enumerate(gs, start=1):
            assert g == 2.0 * math.sin((2 * k - 1) * math.pi / (2 * n))

    def test_first_order_prototype(self):
        assert rf.butterworth_g(1) == [pytest.approx(2.0)]
        net = rf.synth_lowpass(1, 1500.0)
        assert len(net.elements) == 1
        wc = 2.0 * math.pi * 1500e6
        assert net.elements[0].value == pytest.approx(2.0 * 50.0 / wc)


class TestLowpass:
    @pytest.mark.parametrize("n", range(1, 10))
    def test_half_power_at_cutoff(self, n):
        net = rf.synth_lowpass(n, 1500.0)
        _, s21 = rf.to_s_params(rf.network_abcd(net, 1500.0), 50.0)
        assert DB(s21) == pytest.approx(-3.01, abs=0.05)

    def test_rolloff_slope_order_five(self):
        net = rf.synth_lowpass(5, 1500.0)
        f1, f2 = 3.0 * 1500.0, 10.0 * 1500.0
        d1 = DB(rf.to_s_params(rf.network_abcd(net, f1), 50.0)[1])
        d2 = DB(rf.to_s_params(rf.network_abcd(net, f2), 50.0)[1])
        slope = (d2 - d1) / math.log10(f2 / f1)
        assert slope == pytest.approx(-100.0, abs=5.0)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            rf.synth_lowpass(12, 1500.0)
        with pytest.raises(ValueError):
            rf.synth_lowpass(0, 1500.0)


class TestBandpass:
    def test_center_transmission(self):
        net = rf.synth_bandpass(5, 3000.0, 7000.0)
        f0 = math.sqrt(3000.0 * 7000.0)
        _, s21 = rf.to_s_params(rf.network_abcd(net, f0), 50.0)
        assert DB(s21) == pytest.approx(0.0, abs=0.1)

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_band_edges_and_rejection(self, n):
        net = rf.synth_bandpass(n, 3000.0, 7000.0)
        grid = np.logspace(math.log10(500.0), math.log10(15000.0), 3000)
        s21_db = np.array(
            [DB(rf.to_s_params(rf.network_abcd(net, f), 50.0)[1]) for f in grid]
        )
        i0 = int(np.argmin(np.abs(grid - math.sqrt(21.0) * 1000.0)))
        lo = rf._crossing(grid[: i0 + 1], s21_db[: i0 + 1], rf.HALF_POWER_DB, rising=True)
        hi = rf._crossing(grid[i0:], s21_db[i0:], rf.HALF_POWER_DB, rising=False)
        assert abs(lo / 3000.0 - 1.0) < 0.10
        assert abs(hi / 7000.0 - 1.0) < 0.10
        _, s21 = rf.to_s_params(rf.network_abcd(net, 14000.0), 50.0)
        assert DB(s21) < -20.0

    def test_frequency_ordering_validation(self):
        with pytest.raises(ValueError):
            rf.synth_bandpass(5, 7000.0, 3000.0)


@st.composite
def lc_ladders(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    els = []
    for _ in range(n):
        kind = draw(st.sampled_from(["series", "shunt"]))
        comp = draw(st.sampled_from(["L", "C"]))
        exponent = draw(st.floats(min_value=-12.0, max_value=-7.0))
        value = 10.0**exponent if comp == "L" else 10.0 ** (exponent - 3.0)
        els.append(rf.Element(kind, comp, value))
    return rf.LadderNetwork(elements=tuple(els), z0=50.0)


class TestNetworkInvariants:
    @given(lc_ladders(), st.floats(min_value=1.0, max_value=15000.0))
    @settings(max_examples=80)
    def test_lossless_unitarity_and_reciprocity(self, net, f):
        resp = rf.network_response(net, f)
        assert abs(resp.s11) ** 2 + abs(resp.s21) ** 2 == pytest.approx(1.0, abs=1e-9)
        assert resp.det == pytest.approx(1.0, abs=1e-9)

    def test_lossy_network_not_unitary(self):
        resp = rf.network_response(tee_attenuator(10.0), 100.0)
        assert abs(resp.s11) ** 2 + abs(resp.s21) ** 2 < 0.5

    def test_synthesized_networks_on_default_grid(self):
        lp = rf.synth_lowpass(5, 1500.0)
        bp = rf.synth_bandpass(5, 3000.0, 7000.0)
        for f in rf.default_frequency_grid(200):
            for net in (lp, bp):
                resp = rf.network_response(net, float(f))
                assert abs(resp.s11) ** 2 + abs(resp.s21) ** 2 == pytest.approx(
                    1.0, abs=1e-9
                )
                assert resp.det == pytest.approx(1.0, abs=1e-9)


@pytest.fixture(scope="module")
def response():
    lp = rf.synth_lowpass(5, 1500.0)
    bp = rf.synth_bandpass(5, 3000.0, 7000.0)
    return rf.diplexer_eval(lp, bp, 50.0, rf.default_frequency_grid(1200))


class TestDiplexer:
    def test_low_frequency_routing(self, response):
        i = int(np.argmin(np.abs(response.frequencies_mhz - 100.0)))
        assert DB(response.s32[i]) > -1.0
        assert DB(response.s31[i]) < -20.0

    def test_band_center_routing(self, response):
        i = int(np.argmin(np.abs(response.frequencies_mhz - 5000.0)))
        assert DB(response.s31[i]) > -3.0

    def test_port_isolation(self, response):
        assert DB(response.s12).max() < -20.0

    def test_junction_passivity(self, response):
        power = np.abs(response.s31) ** 2 + np.abs(response.s32) ** 2
        assert power.max() <= 1.0 + 1e-9

    def test_mismatched_z0_rejected(self):
        lp = rf.synth_lowpass(5, 1500.0, z0=50.0)
        bp = rf.synth_bandpass(5, 3000.0, 7000.0, z0=75.0)
        with pytest.raises(ValueError, match="z0"):
            rf.diplexer_eval(lp, bp, 50.0, np.array([100.0]))

    def test_empty_grid_rejected(self):
        lp = rf.synth_lowpass(5, 1500.0)
        bp = rf.synth_bandpass(5, 3000.0, 7000.0)
        with pytest.raises(ValueError, match="empty"):
            rf.diplexer_eval(lp, bp, 50.0, np.array([]))

    def test_eccosorb_knob_adds_loss(self):
        lp = rf.synth_lowpass(5, 1500.0)
        bp = rf.synth_bandpass(5, 3000.0, 7000.0)
        grid = np.array([5000.0])
        clean = rf.diplexer_eval(lp, bp, 50.0, grid)
        lossy = rf.diplexer_eval(lp, bp, 50.0, grid, eccosorb_ohm_per_ghz=2.0)
        assert abs(lossy.s31[0]) < abs(clean.s31[0])


class TestCheckSpec:
    def test_default_design_passes(self, response):
        report = rf.check_spec(response)
        assert report.passed
        assert {i.name for i in report.items} == {
            "lp_cutoff",
            "bp_low_edge",
            "bp_high_edge",
            "isolation",
        }

    def test_tight_isolation_fails_with_worst_freq(self, response):
        tight = rf.DiplexerSpec(isolation_db=-60.0)
        report = rf.check_spec(response, tight)
        assert not report.passed
        item = next(i for i in report.items if i.name == "isolation")
        assert not item.passed
        assert item.margin < 0
        # worst leakage lives in the crossover region between the two bands
        assert 1000.0 < item.worst_freq_mhz < 4000.0

    def test_first_order_lowpass_fails_isolation(self):
        lp = rf.synth_lowpass(1, 1500.0)
        bp = rf.synth_bandpass(5, 3000.0, 7000.0)
        resp = rf.diplexer_eval(lp, bp, 50.0, rf.default_frequency_grid(1200))
        report = rf.check_spec(resp)
        assert not report.passed

    def test_insufficient_grid_rejected(self, response):
        with pytest.raises(ValueError):
            rf.check_spec(
                rf.DiplexerResponse(
                    frequencies_mhz=np.array([100.0, 200.0]),
                    s31=np.zeros(2, dtype=complex),
                    s32=np.zeros(2, dtype=complex),
                    s12=np.zeros(2, dtype=complex),
                )
            )


class TestSerialization:
    def test_json_roundtrip(self):
        net = rf.synth_bandpass(3, 3000.0, 7000.0)
        clone = rf.network_from_json(rf.network_to_json(net))
        assert clone == net

    def test_two_port_sweep_csv(self):
        net = rf.synth_lowpass(3, 1500.0)
        text = rf.two_port_sweep_csv(net, np.array([100.0, 1500.0]))
        lines = text.splitlines()
        assert lines[0] == "frequency_mhz,s21_db,s11_db"
        assert len(lines) == 3
        cutoff_row = lines[2].split(",")
        assert float(cutoff_row[1]) == pytest.approx(-3.01, abs=0.05)
