"""Acceptance criteria. Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""

import json
import math

import numpy as np
import pytest

from oracles import fresnel_quad
from uav_nlos.cli import main
from uav_nlos.fresnel import fresnel_cs, itu_loss_approx_db, itu_loss_db
from uav_nlos.geometry import (
    Frequency,
    ScenarioGeometry,
    breaking_point_height,
    diffraction_angle_deg,
    diffraction_parameter,
)
from uav_nlos.linkbudget import dynamic_range_db, noise_power_dbm, pathloss_los_db
from uav_nlos.measurements import EXCESS, MeasurementTrace, fit_alpha_least_squares, flight_log_to_csv, power_log_to_csv
from uav_nlos.models import (
    ExcessLossParams,
    LinearModelParams,
    excess_path_loss_db,
    fit_alpha_from_ground_epl,
    linear_model_loss_db,
    log_model_loss_db,
)
from uav_nlos.presets import (
    ALPHA,
    FREQUENCIES_HZ,
    LINEAR_24GHZ,
    LINKS,
    LOG_24GHZ,
    REPORTED_DYNAMIC_RANGE_DB,
    REPORTED_GROUND_EPL_DB,
    REPORTED_PATHLOSS_LOS_DB,
)
from uav_nlos.synth import vertical_flight

GHZ = {hz: f"{hz / 1e9:g}ghz" for hz in FREQUENCIES_HZ}
c1 = pytest.mark.criterion(1, "link budget: DR and LoS path loss within 0.15 dB")
c2 = pytest.mark.criterion(2, "noise power -130 dBm for 10 kHz and 4 dB NF")
c3 = pytest.mark.criterion(3, "geometry: h_BP, ground-level angle, v at h_BP")
c4 = pytest.mark.criterion(4, "diffraction core: 6.02 dB grazing, Fresnel oracle, approximation")
c5 = pytest.mark.criterion(5, "ground-level excess loss at 12 and 24 GHz within 0.2 dB")
c6 = pytest.mark.criterion(6, "alpha inversion and least-squares recovery")
c7 = pytest.mark.criterion(7, "excess model limits and monotonicity")
c8 = pytest.mark.criterion(8, "linear and log comparison models")
c9 = pytest.mark.criterion(9, "ingest, normalize, fit round trip and determinism")


# ---- 1 ------------------------------------------------------------------------
@c1
@pytest.mark.parametrize("hz", FREQUENCIES_HZ, ids=GHZ.get)
def test_criterion_1_dynamic_range(hz):
    assert dynamic_range_db(LINKS[hz]) == pytest.approx(REPORTED_DYNAMIC_RANGE_DB[hz], abs=0.15)


@c1
@pytest.mark.parametrize("hz", FREQUENCIES_HZ, ids=GHZ.get)
def test_criterion_1_pathloss_los(hz):
    assert pathloss_los_db(LINKS[hz]) == pytest.approx(REPORTED_PATHLOSS_LOS_DB[hz], abs=0.15)


# ---- 2 ------------------------------------------------------------------------
@c2
def test_criterion_2_noise_power():
    assert noise_power_dbm(10e3, 4.0) == -130.0
    for cfg in LINKS.values():
        assert noise_power_dbm(cfg.bandwidth_hz, cfg.noise_figure_db) == -130.0


# ---- 3 ------------------------------------------------------------------------
@c3
def test_criterion_3_breaking_point(scene):
    assert breaking_point_height(scene) == 11.0


@c3
def test_criterion_3_ground_angle(scene):
    assert diffraction_angle_deg(scene, 0.0) == pytest.approx(6.24, abs=0.01)


@c3
@pytest.mark.parametrize("hz", FREQUENCIES_HZ, ids=GHZ.get)
def test_criterion_3_v_zero_at_breaking_point(scene, hz):
    assert diffraction_parameter(scene, breaking_point_height(scene), hz) == 0.0


# ---- 4 ------------------------------------------------------------------------
@c4
def test_criterion_4_grazing_loss():
    assert itu_loss_db(0.0) == pytest.approx(6.02, abs=0.01)


@c4
def test_criterion_4_fresnel_vs_quadrature():
    v = np.concatenate([np.linspace(-10, 20, 601), np.random.default_rng(4).uniform(-10, 20, 200)])
    c, s = fresnel_cs(v)
    ref = np.array([fresnel_quad(x) for x in v])
    assert np.max(np.abs(c - ref[:, 0])) < 1e-7
    assert np.max(np.abs(s - ref[:, 1])) < 1e-7


@c4
def test_criterion_4_exact_vs_approximation():
    v = np.linspace(0, 20, 20001)
    assert np.max(np.abs(itu_loss_db(v) - itu_loss_approx_db(v))) < 0.5


# ---- 5 ------------------------------------------------------------------------
@c5
@pytest.mark.parametrize("hz", (12e9, 24e9), ids=GHZ.get)
def test_criterion_5_ground_excess_loss(scene, hz):
    got = excess_path_loss_db(scene, 0.0, hz, ExcessLossParams(ALPHA[hz]))
    assert got == pytest.approx(REPORTED_GROUND_EPL_DB[hz], abs=0.2)


# ---- 6 ------------------------------------------------------------------------
@c6
def test_criterion_6_ground_inversion_identity(scene):
    rng = np.random.default_rng(6)
    alphas = 10 ** rng.uniform(-1, 4, 1000)
    hzs = rng.choice(FREQUENCIES_HZ, 1000)
    worst = 0.0
    for alpha, hz in zip(alphas, hzs):
        e0 = excess_path_loss_db(scene, 0.0, hz, alpha)
        worst = max(worst, abs(fit_alpha_from_ground_epl(scene, hz, e0) / alpha - 1))
    assert worst < 1e-6


def _nlos_trace(scene, hz, alpha, sigma, seed):
    h = np.linspace(0, 11, 300, endpoint=False)
    vals = excess_path_loss_db(scene, h, hz, alpha)
    vals = vals + np.random.default_rng(seed).normal(0, sigma, h.size) if sigma else vals
    return MeasurementTrace(Frequency(hz), h, vals, EXCESS)


@c6
@pytest.mark.parametrize("hz", FREQUENCIES_HZ, ids=GHZ.get)
def test_criterion_6_least_squares_noiseless(scene, hz):
    fit = fit_alpha_least_squares(_nlos_trace(scene, hz, ALPHA[hz], 0, None), scene)
    assert fit.alpha == pytest.approx(ALPHA[hz], abs=1e-4)


@c6
@pytest.mark.parametrize("hz", FREQUENCIES_HZ, ids=GHZ.get)
def test_criterion_6_least_squares_noisy(scene, hz):
    fit = fit_alpha_least_squares(_nlos_trace(scene, hz, ALPHA[hz], 2.0, 2020), scene)
    assert abs(fit.alpha / ALPHA[hz] - 1) < 0.15


# ---- 7 ------------------------------------------------------------------------
H_GRID = np.linspace(0, 30, 3001)


@c7
@pytest.mark.parametrize("hz", FREQUENCIES_HZ, ids=GHZ.get)
def test_criterion_7_large_alpha_is_itu(scene, hz):
    itu = itu_loss_db(diffraction_parameter(scene, H_GRID, hz))
    assert np.max(np.abs(excess_path_loss_db(scene, H_GRID, hz, 1e9) - itu)) < 0.01


@c7
@pytest.mark.parametrize("alpha", [0.1, 1.0, 6.9, 60.0, 1e4])
@pytest.mark.parametrize("hz", FREQUENCIES_HZ, ids=GHZ.get)
def test_criterion_7_bounded_and_decreasing(scene, hz, alpha):
    e = excess_path_loss_db(scene, H_GRID, hz, alpha)
    assert np.all(e <= 20 * math.log10(1 + alpha))
    nlos = e[H_GRID <= breaking_point_height(scene)]
    assert np.all(np.diff(nlos) < 0)


# ---- 8 ------------------------------------------------------------------------
@c8
def test_criterion_8_linear_model(scene):
    by_hand = (0.011 * math.sqrt(15 ** 2 + 100 ** 2) + 0.785) * 6.24
    assert linear_model_loss_db(scene, 0.0, LINEAR_24GHZ) == pytest.approx(by_hand, abs=0.05)
    assert linear_model_loss_db(scene, 11.0, LINEAR_24GHZ) == pytest.approx(0.0, abs=0.05)
    flat = ScenarioGeometry(100, 250, 20, 20)
    h3 = 20 - 100 * math.tan(math.radians(3))
    assert linear_model_loss_db(flat, h3, LinearModelParams(0.0, 1.0)) == pytest.approx(3.0, abs=0.05)


@c8
def test_criterion_8_log_model():
    assert log_model_loss_db(1.0, LOG_24GHZ) == pytest.approx(11.5, abs=0.05)
    assert log_model_loss_db(5.0, LOG_24GHZ) == pytest.approx(5 * math.log(5) + 11.5, abs=0.05)
    assert log_model_loss_db(5.0, LOG_24GHZ) == pytest.approx(19.55, abs=0.05)


@c8
def test_criterion_8_log_floor():
    theta = np.array([0.0, 1e-6, 0.05, 0.0999999])
    assert np.all(log_model_loss_db(theta, LOG_24GHZ) == 0.0)
    assert log_model_loss_db(0.05, LOG_24GHZ) == 0.0


# ---- 9 ------------------------------------------------------------------------
def _pipeline(tmp_path, scene_file, hz, alpha, tag):
    power, flight = vertical_flight(scene_file.scene, hz, alpha, ideal_los=True)
    p, fl = tmp_path / f"power_{tag}.csv", tmp_path / f"flight_{tag}.csv"
    p.write_text(power_log_to_csv(power))
    fl.write_text(flight_log_to_csv(flight))
    trace, fit = tmp_path / f"trace_{tag}.csv", tmp_path / f"fit_{tag}.json"
    assert main(["ingest", "--power", str(p), "--flight", str(fl), "--freq", str(hz),
                 "--window", "1", "--normalize", "--scenario", str(scene_file.path),
                 "-o", str(trace), "-q"]) == 0
    assert main(["fit", str(trace), "--scenario", str(scene_file.path), "-o", str(fit), "-q"]) == 0
    return trace, fit


class _Scene:
    def __init__(self, path, scene):
        self.path, self.scene = path, scene


@c9
@pytest.mark.parametrize("hz", FREQUENCIES_HZ, ids=GHZ.get)
def test_criterion_9_roundtrip(tmp_path, scene_file, scene, hz):
    _, fit = _pipeline(tmp_path, _Scene(scene_file, scene), hz, ALPHA[hz], "a")
    got = json.loads(fit.read_text())["fits"][0]["alpha"]
    assert abs(got / ALPHA[hz] - 1) < 1e-3


@c9
def test_criterion_9_byte_identical(tmp_path, scene_file, scene):
    s = _Scene(scene_file, scene)
    first = [x.read_bytes() for x in _pipeline(tmp_path, s, 12e9, 7.9, "a")]
    second = [x.read_bytes() for x in _pipeline(tmp_path, s, 12e9, 7.9, "a")]
    assert first == second
    for name in ("trace_a.csv", "fit_a.json"):
        assert (tmp_path / f"{name}.manifest.json").exists()
