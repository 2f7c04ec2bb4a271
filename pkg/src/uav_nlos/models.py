"""Excess path loss in NLoS: knife-edge diffraction plus a diffuse multipath floor.

The diffuse coefficient alpha caps the loss: the received field is modelled as
the diffracted amplitude J(v) plus a constant diffuse amplitude 1/alpha,
normalised so that an unobstructed link (J = 1) has zero excess loss.

Two angle-based reference models are included for comparison: a linear law
in the diffraction angle with a distance-dependent slope, and a logarithmic
law with a 0 dB floor below ``theta_floor_deg``. Angles are in degrees.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ._kv import InputError
from .fresnel import diffraction_gain_j, itu_loss_db
from .geometry import (
    Frequency,
    ScenarioGeometry,
    as_frequency,
    breaking_point_height,
    diffraction_angle_deg,
    diffraction_parameter,
)

MODEL_KINDS = ("itu", "excess", "linear", "log")
LOG_MODEL_RANGE_DEG = 5.0


@dataclass(frozen=True)
class ExcessLossParams:
    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")


@dataclass(frozen=True)
class LinearModelParams:
    a: float  # dB / (m deg)
    b: float  # dB / deg

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("linear model coefficients must be finite")


@dataclass(frozen=True)
class LogModelParams:
    c: float
    theta_floor_deg: float = 0.1

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise ValueError("c must be finite")
        if not self.theta_floor_deg > 0:
            raise ValueError("theta_floor_deg must be positive")


def _alpha(p: ExcessLossParams | float) -> float:
    return p.alpha if isinstance(p, ExcessLossParams) else ExcessLossParams(float(p)).alpha


def excess_loss_from_gain_db(j, alpha: float):
    """Excess loss for a given diffraction gain J and diffuse coefficient alpha."""
    inv = 1.0 / alpha
    return 20.0 * np.log10(1.0 + inv) - 20.0 * np.log10(np.asarray(j) + inv)


def excess_path_loss_db(geom: ScenarioGeometry, h_uav, f: Frequency | float,
                        p: ExcessLossParams | float):
    v = diffraction_parameter(geom, h_uav, f)
    return excess_loss_from_gain_db(diffraction_gain_j(v), _alpha(p))


def ground_diffraction_parameter(geom: ScenarioGeometry, f: Frequency | float) -> float:
    """v at ground level, where the obstruction height equals the breaking point."""
    return float(diffraction_parameter(geom, 0.0, f))


def fit_alpha_from_ground_epl(geom: ScenarioGeometry, f: Frequency | float, epl0_db: float) -> float:
    """Invert the model at h_uav = 0 for the alpha that yields ``epl0_db``.

    A positive solution exists only for 0 < epl0_db < ITU loss at ground level.
    """
    v0 = ground_diffraction_parameter(geom, f)
    j0 = float(diffraction_gain_j(v0))
    itu0 = float(itu_loss_db(v0))
    if not (0.0 < epl0_db < itu0):
        raise ValueError(
            f"ground excess loss {epl0_db:.3f} dB outside (0, {itu0:.3f}) dB: no positive alpha")
    k = 10.0 ** (epl0_db / 20.0)
    return (k - 1.0) / (1.0 - k * j0)


def linear_model_loss_db(geom: ScenarioGeometry, h_uav, p: LinearModelParams):
    theta = diffraction_angle_deg(geom, h_uav)
    slant = np.hypot(geom.h_obstacle_m - np.asarray(h_uav, dtype=float), geom.d1_m)
    return (p.a * slant + p.b) * theta


def log_model_loss_db(theta_deg, p: LogModelParams):
    theta = np.asarray(theta_deg, dtype=float)
    if np.any(theta < 0) or np.any(np.isnan(theta)):
        raise ValueError("diffraction angle must be non-negative")
    above = theta >= p.theta_floor_deg
    with np.errstate(divide="ignore"):
        loss = np.where(above, 5.0 * np.log(np.where(above, theta, 1.0)) + p.c, 0.0)
    return loss if loss.ndim else float(loss)


@dataclass
class PredictionCurve:
    model: str
    params: dict
    h_uav_m: np.ndarray
    loss_db: np.ndarray
    freq_hz: float | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.h_uav_m = np.asarray(self.h_uav_m, dtype=float)
        self.loss_db = np.asarray(self.loss_db, dtype=float)
        if self.h_uav_m.ndim != 1 or self.h_uav_m.size == 0:
            raise ValueError("curve needs at least one point")
        if self.h_uav_m.shape != self.loss_db.shape:
            raise ValueError("altitude and loss arrays differ in length")
        if np.any(np.diff(self.h_uav_m) <= 0):
            raise ValueError("curve altitudes must be strictly increasing")

    def header(self) -> dict:
        return {"model": self.model, "freq_hz": self.freq_hz, "params": self.params, **self.meta}

    def at(self, h_uav):
        """Linear interpolation; raises ValueError outside the curve span."""
        h = np.asarray(h_uav, dtype=float)
        lo, hi = self.h_uav_m[0], self.h_uav_m[-1]
        if np.any(h < lo - 1e-9) or np.any(h > hi + 1e-9):
            raise ValueError(f"altitude outside curve span [{lo}, {hi}] m")
        if self.h_uav_m.size == 1:
            return np.full(h.shape, self.loss_db[0])
        return np.interp(h, self.h_uav_m, self.loss_db)


def altitude_grid(h_min: float, h_max: float, step: float) -> np.ndarray:
    """Inclusive grid h_min, h_min + step, ... <= h_max."""
    if not h_min < h_max:
        raise ValueError("h_min must be below h_max")
    if not step > 0:
        raise ValueError("step must be positive")
    n = int(math.floor((h_max - h_min) / step + 1e-9)) + 1
    # rounding keeps grid points such as 11.0 exact despite accumulated step error
    return np.round(h_min + step * np.arange(n), 12)


def model_curve(geom: ScenarioGeometry, f: Frequency | float | None, params, model_kind: str,
                h_min: float = 0.0, h_max: float = 30.0, step: float = 0.1) -> PredictionCurve:
    """Evaluate one model over an altitude grid.

    ``params`` is ``None`` for "itu", ExcessLossParams for "excess",
    LinearModelParams for "linear" and LogModelParams for "log". The angle
    models give 0 dB above the breaking point.
    """
    h = altitude_grid(h_min, h_max, step)
    meta = {}
    freq_hz = None if f is None else as_frequency(f).hz
    if model_kind in ("itu", "excess") and freq_hz is None:
        raise ValueError(f"{model_kind} model needs a frequency")

    if model_kind == "itu":
        loss = itu_loss_db(diffraction_parameter(geom, h, freq_hz))
        pdict = {}
    elif model_kind == "excess":
        if not isinstance(params, ExcessLossParams):
            raise TypeError("excess model needs ExcessLossParams")
        loss = excess_path_loss_db(geom, h, freq_hz, params)
        pdict = asdict(params)
    elif model_kind in ("linear", "log"):
        expected = LinearModelParams if model_kind == "linear" else LogModelParams
        if not isinstance(params, expected):
            raise TypeError(f"{model_kind} model needs {expected.__name__}")
        nlos = h <= breaking_point_height(geom)
        loss = np.zeros_like(h)
        if model_kind == "linear":
            loss[nlos] = linear_model_loss_db(geom, h[nlos], params)
        else:
            theta = diffraction_angle_deg(geom, h[nlos])
            loss[nlos] = log_model_loss_db(theta, params)
            meta["extrapolated"] = bool(np.any(theta > LOG_MODEL_RANGE_DEG))
        pdict = asdict(params)
    else:
        raise ValueError(f"unknown model kind {model_kind!r}; choose from {', '.join(MODEL_KINDS)}")

    if not np.all(np.isfinite(loss)):
        raise ArithmeticError(f"{model_kind} model produced non-finite losses")
    return PredictionCurve(model_kind, pdict, h, loss, freq_hz, meta)


def _num(x: float) -> str:
    return repr(float(x))


def curve_to_csv(curve: PredictionCurve) -> str:
    lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in curve.header().items()]
    lines.append("h_uav_m,loss_db")
    lines += [f"{_num(h)},{_num(l)}" for h, l in zip(curve.h_uav_m, curve.loss_db)]
    return "\n".join(lines) + "\n"


def curve_to_json(curve: PredictionCurve) -> str:
    doc = {**curve.header(), "h_uav_m": curve.h_uav_m.tolist(), "loss_db": curve.loss_db.tolist()}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _curve_from_doc(doc: dict, h, loss) -> PredictionCurve:
    meta = {k: v for k, v in doc.items() if k not in ("model", "freq_hz", "params", "h_uav_m", "loss_db")}
    return PredictionCurve(doc["model"], doc.get("params", {}), h, loss, doc.get("freq_hz"), meta)


def curve_from_csv(text: str) -> PredictionCurve:
    header, rows = {}, []
    lines = iter(text.splitlines())
    for line in lines:
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            header[key.strip()] = json.loads(val)
            continue
        if line.strip() != "h_uav_m,loss_db":
            raise InputError(f"expected header 'h_uav_m,loss_db', got {line!r}")
        break
    for line in lines:
        if line.strip():
            h, l = line.split(",")
            rows.append((float(h), float(l)))
    if "model" not in header:
        raise InputError("curve file has no model metadata")
    arr = np.array(rows, dtype=float).reshape(-1, 2)
    return _curve_from_doc(header, arr[:, 0], arr[:, 1])


def curve_from_json(text: str) -> PredictionCurve:
    doc = json.loads(text)
    return _curve_from_doc(doc, doc["h_uav_m"], doc["loss_db"])


def read_curve(path: str | Path) -> PredictionCurve:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return curve_from_json(text) if path.suffix == ".json" else curve_from_csv(text)
