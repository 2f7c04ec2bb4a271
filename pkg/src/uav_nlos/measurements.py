"""Processing chain for vertical-flight measurements.

Received-power logs from the ground station and the UAV flight log are
merged on a shared time base, smoothed with a sample-count moving window,
referenced to the LoS segment to give excess loss, and fitted against the
excess-loss model (diffuse coefficient) or the linear angle model.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from ._kv import InputError
from .fresnel import diffraction_gain_j
from .geometry import (
    Frequency,
    ScenarioGeometry,
    as_frequency,
    breaking_point_height,
    diffraction_angle_deg,
    diffraction_parameter,
    first_fresnel_radius,
)
from .models import PredictionCurve, excess_loss_from_gain_db

POWER = "power_dbm"
EXCESS = "excess_db"

DEFAULT_WINDOW = 100
LOS_CLEARANCE_FRACTION = 0.6
MIN_LOS_SAMPLES = 10

ALPHA_RANGE = (1e-3, 1e6)
GRID_PER_DECADE = 60
ALPHA_RTOL = 1e-8


class PowerSample(NamedTuple):
    t_s: float
    p_dbm: float


class FlightSample(NamedTuple):
    t_s: float
    alt_m: float


class AlphaFit(NamedTuple):
    alpha: float
    rms_db: float


class LinearFit(NamedTuple):
    a: float
    b: float
    rms_db: float


class FitError(ValueError):
    """Fit preconditions not met by the data."""


@dataclass(frozen=True)
class MeasurementTrace:
    f: Frequency
    alt_m: np.ndarray
    value_db: np.ndarray
    kind: str = POWER
    chain: tuple = field(default=())

    def __post_init__(self):
        alt = np.asarray(self.alt_m, dtype=float)
        val = np.asarray(self.value_db, dtype=float)
        if alt.ndim != 1 or alt.size == 0:
            raise ValueError("trace must hold at least one sample")
        if alt.shape != val.shape:
            raise ValueError("altitude and value arrays differ in length")
        if not np.all(np.isfinite(alt)):
            raise ValueError("trace altitudes must be finite")
        if self.kind not in (POWER, EXCESS):
            raise ValueError(f"unknown value kind {self.kind!r}")
        alt.flags.writeable = False
        val.flags.writeable = False
        object.__setattr__(self, "alt_m", alt)
        object.__setattr__(self, "value_db", val)
        object.__setattr__(self, "chain", tuple(self.chain))

    def __len__(self):
        return self.alt_m.size

    def derive(self, value_db, step: str, *, alt_m=None, kind=None) -> MeasurementTrace:
        return MeasurementTrace(self.f, self.alt_m if alt_m is None else alt_m, value_db,
                                kind or self.kind, self.chain + (step,))


def _check_sorted(t, name):
    if t.size == 0:
        raise ValueError(f"{name} log is empty")
    if not np.all(np.isfinite(t)):
        raise ValueError(f"{name} log has non-finite timestamps")
    if np.any(np.diff(t) < 0):
        raise ValueError(f"{name} log timestamps are not sorted")


def merge_logs(power, flight, f: Frequency | float, max_gap_s: float = 0.5) -> MeasurementTrace:
    """Attach an interpolated altitude to every power sample.

    Power samples more than ``max_gap_s`` from the nearest flight sample are
    dropped, so nothing is extrapolated across holes in the flight log.
    """
    p = np.asarray(power, dtype=float).reshape(-1, 2)
    fl = np.asarray(flight, dtype=float).reshape(-1, 2)
    _check_sorted(p[:, 0], "power")
    _check_sorted(fl[:, 0], "flight")
    tp, tf = p[:, 0], fl[:, 0]

    idx = np.searchsorted(tf, tp)
    before = np.abs(tp - tf[np.clip(idx - 1, 0, tf.size - 1)])
    after = np.abs(tf[np.clip(idx, 0, tf.size - 1)] - tp)
    keep = np.minimum(before, after) <= max_gap_s
    alt = np.interp(tp[keep], tf, fl[:, 1])
    return MeasurementTrace(as_frequency(f), alt, p[keep, 1], POWER,
                            (f"merge(max_gap_s={max_gap_s!r})",))


def moving_average(trace: MeasurementTrace, window: int = DEFAULT_WINDOW) -> MeasurementTrace:
    """Centred moving average over ``window`` samples, shrunk symmetrically near the ends."""
    if window < 1:
        raise ValueError("window must be at least 1")
    n = len(trace)
    i = np.arange(n)
    edge = np.minimum(i, n - 1 - i)
    lo = i - np.minimum(window // 2, edge)
    hi = i + np.minimum(window - 1 - window // 2, edge)
    csum = np.concatenate(([0.0], np.cumsum(trace.value_db)))
    if window == 1:
        out = trace.value_db.copy()
    else:
        out = (csum[hi + 1] - csum[lo]) / (hi - lo + 1)
    return trace.derive(out, f"moving_average(window={window})")


def normalize_to_excess_loss(trace: MeasurementTrace, geom: ScenarioGeometry,
                             los_margin_m: float | None = None) -> MeasurementTrace:
    """Excess loss relative to the median power of the clear-LoS segment.

    The LoS segment is everything above the breaking point plus
    ``los_margin_m``; by default the margin is 0.6 of the first Fresnel radius.
    """
    if trace.kind != POWER:
        raise ValueError("normalisation needs a received-power trace")
    if los_margin_m is None:
        los_margin_m = LOS_CLEARANCE_FRACTION * first_fresnel_radius(geom, trace.f)
    los = trace.alt_m > breaking_point_height(geom) + los_margin_m
    if np.count_nonzero(los) < MIN_LOS_SAMPLES:
        raise FitError(f"need at least {MIN_LOS_SAMPLES} LoS samples above "
                       f"{breaking_point_height(geom) + los_margin_m:.2f} m, "
                       f"got {np.count_nonzero(los)}")
    ref = float(np.median(trace.value_db[los]))
    return trace.derive(ref - trace.value_db, f"normalize(los_margin_m={los_margin_m!r})",
                        kind=EXCESS)


def _nlos(trace: MeasurementTrace, geom: ScenarioGeometry):
    if trace.kind != EXCESS:
        raise ValueError("fits need an excess-loss trace")
    mask = trace.alt_m < breaking_point_height(geom)
    return trace.alt_m[mask], trace.value_db[mask]


def golden_section_min(fun, lo: float, hi: float, tol: float):
    """Minimise a unimodal ``fun`` on [lo, hi] until the bracket is narrower than ``tol``."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = fun(c), fun(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = fun(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = fun(d)
    return (c, fc) if fc < fd else (d, fd)


def fit_alpha_least_squares(trace: MeasurementTrace, geom: ScenarioGeometry,
                            f: Frequency | float | None = None) -> AlphaFit:
    """Least-squares diffuse coefficient over the NLoS part of an excess-loss trace.

    Log-spaced grid over ``ALPHA_RANGE`` then golden-section refinement in
    log(alpha) between the neighbours of the best grid point.
    """
    f = trace.f if f is None else as_frequency(f)
    h, meas = _nlos(trace, geom)
    if h.size < 2:
        raise FitError(f"no NLoS samples to fit (need 2 below the breaking point, got {h.size})")
    j = diffraction_gain_j(diffraction_parameter(geom, h, f))

    def sse(log_alpha):
        r = meas - excess_loss_from_gain_db(j, math.exp(log_alpha))
        return float(r @ r)

    lo, hi = (math.log(a) for a in ALPHA_RANGE)
    grid = np.linspace(lo, hi, int(round(GRID_PER_DECADE * (hi - lo) / math.log(10))) + 1)
    alphas = np.exp(grid)
    # vectorised grid scan
    model = (20.0 * np.log10(1.0 + 1.0 / alphas)[:, None]
             - 20.0 * np.log10(j[None, :] + 1.0 / alphas[:, None]))
    costs = ((meas[None, :] - model) ** 2).sum(axis=1)
    k = int(np.argmin(costs))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    log_alpha, cost = golden_section_min(sse, a, b, ALPHA_RTOL)
    if costs[k] < cost:
        log_alpha, cost = grid[k], costs[k]
    return AlphaFit(math.exp(log_alpha), math.sqrt(cost / h.size))


def fit_linear_ab(trace: MeasurementTrace, geom: ScenarioGeometry) -> LinearFit:
    """Ordinary least squares for (a, b) in L = (a * slant + b) * theta."""
    h, meas = _nlos(trace, geom)
    if h.size < 2:
        raise FitError(f"no NLoS samples to fit (need 2 below the breaking point, got {h.size})")
    theta = diffraction_angle_deg(geom, h)
    slant = np.hypot(geom.h_obstacle_m - h, geom.d1_m)
    x = np.column_stack([slant * theta, theta])
    if np.linalg.matrix_rank(x) < 2:
        raise FitError("rank-deficient regressors: need NLoS samples at distinct angles")
    (a, b), *_ = np.linalg.lstsq(x, meas, rcond=None)
    resid = meas - x @ np.array([a, b])
    return LinearFit(float(a), float(b), float(math.sqrt(resid @ resid / h.size)))


def rms_error_db(trace: MeasurementTrace, curve: PredictionCurve) -> float:
    diff = trace.value_db - curve.at(trace.alt_m)
    return float(math.sqrt(np.mean(diff ** 2)))


# --- file formats -----------------------------------------------------------

def _read_csv(path, header: tuple[str, str]):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    if not rows or tuple(c.strip() for c in rows[0]) != header:
        raise InputError(f"{path}: expected header {','.join(header)}")
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            a, b = (float(c) for c in row)
        except ValueError:
            raise InputError(f"{path}: bad row {lineno}: {','.join(row)!r}") from None
        out.append((a, b))
    if not out:
        raise InputError(f"{path}: no data rows")
    return out


def read_power_log(path) -> list[PowerSample]:
    return [PowerSample(*r) for r in _read_csv(path, ("t_s", "p_dbm"))]


def read_flight_log(path) -> list[FlightSample]:
    return [FlightSample(*r) for r in _read_csv(path, ("t_s", "alt_m"))]


def _write_two_col(header, rows) -> str:
    lines = [",".join(header)] + [f"{float(a)!r},{float(b)!r}" for a, b in rows]
    return "\n".join(lines) + "\n"


def power_log_to_csv(samples) -> str:
    return _write_two_col(("t_s", "p_dbm"), samples)


def flight_log_to_csv(samples) -> str:
    return _write_two_col(("t_s", "alt_m"), samples)


def trace_to_csv(trace: MeasurementTrace) -> str:
    meta = {"freq_hz": trace.f.hz, "value_kind": trace.kind, "chain": list(trace.chain)}
    pre = "".join(f"# {k}: {json.dumps(v)}\n" for k, v in meta.items())
    return pre + _write_two_col(("alt_m", "value_db"), zip(trace.alt_m, trace.value_db))


def trace_from_csv(text: str, source: str = "<string>") -> MeasurementTrace:
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            try:
                meta[key.strip()] = json.loads(val)
            except json.JSONDecodeError:
                raise InputError(f"{source}: bad metadata line {line!r}") from None
        elif line.strip():
            body.append(line)
    if not body or body[0].strip() != "alt_m,value_db":
        raise InputError(f"{source}: expected header alt_m,value_db")
    if "freq_hz" not in meta:
        raise InputError(f"{source}: missing '# freq_hz:' metadata")
    try:
        arr = np.array([[float(c) for c in row.split(",")] for row in body[1:]], dtype=float)
        return MeasurementTrace(Frequency(float(meta["freq_hz"])), arr[:, 0], arr[:, 1],
                                meta.get("value_kind", EXCESS), tuple(meta.get("chain", ())))
    except (ValueError, IndexError) as exc:
        raise InputError(f"{source}: {exc}") from None


def read_trace(path) -> MeasurementTrace:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return trace_from_csv(text, str(path))
