"""Single knife-edge scene between a low-flying UAV and a ground station.

The scene is a vertical cross-section: the UAV climbs along a vertical line
at horizontal distance ``d1_m`` from the obstacle, the ground-station antenna
sits ``d2_m`` on the other side at height ``gs_height``. All heights are
above local ground, all distances in meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._kv import InputError, format_kv, read_kv

SPEED_OF_LIGHT = 299_792_458.0  # m/s

SCENARIO_KEYS = ("d1_m", "d2_m", "obstacle_height_m", "gs_height_m")


@dataclass(frozen=True)
class Frequency:
    hz: float

    def __post_init__(self):
        if not (math.isfinite(self.hz) and self.hz > 0):
            raise ValueError(f"frequency must be positive and finite, got {self.hz!r}")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.hz

    @property
    def ghz(self) -> float:
        return self.hz / 1e9


def as_frequency(f: Frequency | float) -> Frequency:
    return f if isinstance(f, Frequency) else Frequency(float(f))


@dataclass(frozen=True)
class ScenarioGeometry:
    d1_m: float
    d2_m: float
    h_obstacle_m: float
    h_gs_m: float

    def __post_init__(self):
        for name in ("d1_m", "d2_m", "h_obstacle_m", "h_gs_m"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.d1_m <= 0 or self.d2_m <= 0:
            raise ValueError("d1_m and d2_m must be positive")
        if self.h_obstacle_m < 0 or self.h_gs_m < 0:
            raise ValueError("heights must be non-negative")

    @property
    def distance_m(self) -> float:
        """Horizontal link distance D = d1 + d2."""
        return self.d1_m + self.d2_m

    def swapped(self) -> ScenarioGeometry:
        return ScenarioGeometry(self.d2_m, self.d1_m, self.h_obstacle_m, self.h_gs_m)


def load_scenario(path: str | Path) -> ScenarioGeometry:
    """Read a scenario file with keys ``d1_m``, ``d2_m``, ``obstacle_height_m``, ``gs_height_m``."""
    kv = read_kv(path, SCENARIO_KEYS)
    try:
        return ScenarioGeometry(kv["d1_m"], kv["d2_m"], kv["obstacle_height_m"], kv["gs_height_m"])
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def dump_scenario(geom: ScenarioGeometry) -> str:
    return format_kv({
        "d1_m": geom.d1_m,
        "d2_m": geom.d2_m,
        "obstacle_height_m": geom.h_obstacle_m,
        "gs_height_m": geom.h_gs_m,
    })


def breaking_point_height(geom: ScenarioGeometry) -> float:
    """UAV altitude where the ray from the GS antenna grazes the obstacle top."""
    return geom.h_obstacle_m - geom.d1_m * (geom.h_gs_m - geom.h_obstacle_m) / geom.d2_m


def clearance_height(geom: ScenarioGeometry, h_uav):
    """Obstruction height h; positive below the breaking point, negative in LoS."""
    return breaking_point_height(geom) - np.asarray(h_uav, dtype=float)


def diffraction_parameter(geom: ScenarioGeometry, h_uav, f: Frequency | float):
    f = as_frequency(f)
    scale = math.sqrt(2.0 / f.wavelength_m * (1.0 / geom.d1_m + 1.0 / geom.d2_m))
    return clearance_height(geom, h_uav) * scale


def diffraction_angle_deg(geom: ScenarioGeometry, h_uav):
    """Angle at the edge between the GS->edge ray extension and the edge->UAV ray.

    Only defined up to the breaking point; raises ValueError above it.
    """
    h_uav = np.asarray(h_uav, dtype=float)
    if np.any(h_uav > breaking_point_height(geom) + 1e-9):
        raise ValueError("diffraction angle is only defined at or below the breaking point")
    down = np.arctan((geom.h_obstacle_m - h_uav) / geom.d1_m)
    incoming = math.atan((geom.h_gs_m - geom.h_obstacle_m) / geom.d2_m)
    return np.degrees(down - incoming)


def first_fresnel_radius(geom: ScenarioGeometry, f: Frequency | float) -> float:
    f = as_frequency(f)
    return math.sqrt(f.wavelength_m * geom.d1_m * geom.d2_m / geom.distance_m)


def first_fresnel_clearance_fraction(geom: ScenarioGeometry, h_uav, f: Frequency | float):
    """Clearance of the direct ray above the edge, in units of the first Fresnel radius."""
    return -clearance_height(geom, h_uav) / first_fresnel_radius(geom, f)
