"""Synthetic vertical-flight logs generated from the excess-loss model."""

from __future__ import annotations

import numpy as np

from .geometry import Frequency, ScenarioGeometry, breaking_point_height
from .measurements import FlightSample, PowerSample
from .models import ExcessLossParams, excess_path_loss_db


def vertical_flight(geom: ScenarioGeometry, f: Frequency | float, alpha: float, *,
                    ref_dbm: float = -50.0, h_max: float = 30.0, climb_m_s: float = 0.1,
                    power_rate_hz: float = 10.0, flight_rate_hz: float = 5.0,
                    noise_db: float = 0.0, seed: int | None = 0, ideal_los: bool = False):
    """Constant-rate climb from 0 to ``h_max``: returns (power log, flight log).

    Received power is ``ref_dbm`` minus the model excess loss plus optional
    Gaussian noise; the flight log is sampled at its own rate, offset by half
    a power period so altitudes must be interpolated. With ``ideal_los`` the
    excess loss is exactly zero from the breaking point up, so the LoS
    reference carries none of the model's diffraction ripple.
    """
    duration = h_max / climb_m_s
    tf = np.arange(0.0, duration + 1e-9, 1.0 / flight_rate_hz)
    tp = np.arange(0.5 / power_rate_hz, duration, 1.0 / power_rate_hz)
    alt_p = climb_m_s * tp
    loss = excess_path_loss_db(geom, alt_p, f, ExcessLossParams(alpha))
    if ideal_los:
        loss = np.where(alt_p < breaking_point_height(geom), loss, 0.0)
    p = ref_dbm - loss
    if noise_db:
        p = p + np.random.default_rng(seed).normal(0.0, noise_db, p.size)
    power = [PowerSample(float(t), float(v)) for t, v in zip(tp, p)]
    flight = [FlightSample(float(t), float(climb_m_s * t)) for t in tf]
    return power, flight
