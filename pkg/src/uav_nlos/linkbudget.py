"""LoS link budget for the measurement setup: received power ceiling, noise floor, dynamic range.

``pathloss_los_db`` follows the flight-test table convention where both
antenna gains are folded into the reported LoS path loss, and the listed EIRP
is paired with it unchanged.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from pathlib import Path

from ._kv import InputError, read_kv
from .geometry import SPEED_OF_LIGHT, Frequency, as_frequency

THERMAL_NOISE_DBM_HZ = -174.0

CONFIG_KEYS = ("freq_hz", "eirp_dbm", "g_tx_dbi", "g_rx_dbi", "distance_m", "bandwidth_hz",
               "noise_figure_db")


@dataclass(frozen=True)
class LinkBudgetConfig:
    f: Frequency
    eirp_dbm: float
    g_tx_dbi: float
    g_rx_dbi: float
    distance_m: float
    bandwidth_hz: float = 10e3
    noise_figure_db: float = 4.0

    def __post_init__(self):
        if not self.distance_m > 0:
            raise ValueError("distance_m must be positive")
        if not self.bandwidth_hz > 0:
            raise ValueError("bandwidth_hz must be positive")
        if not self.noise_figure_db >= 0:
            raise ValueError("noise_figure_db must be non-negative")


def load_link_config(path: str | Path) -> LinkBudgetConfig:
    kv = read_kv(path, CONFIG_KEYS)
    try:
        return LinkBudgetConfig(
            Frequency(kv.pop("freq_hz")), **kv)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def fspl_db(distance_m: float, f: Frequency | float) -> float:
    """Free-space (Friis) path loss between isotropic antennas."""
    if not distance_m > 0:
        raise ValueError("distance must be positive")
    f = as_frequency(f)
    return 20.0 * math.log10(4.0 * math.pi * distance_m * f.hz / SPEED_OF_LIGHT)


def pathloss_los_db(cfg: LinkBudgetConfig) -> float:
    return fspl_db(cfg.distance_m, cfg.f) - cfg.g_tx_dbi - cfg.g_rx_dbi


def noise_power_dbm(bandwidth_hz: float, noise_figure_db: float) -> float:
    if not bandwidth_hz > 0:
        raise ValueError("bandwidth must be positive")
    return THERMAL_NOISE_DBM_HZ + 10.0 * math.log10(bandwidth_hz) + noise_figure_db


def pr_max_dbm(cfg: LinkBudgetConfig) -> float:
    return cfg.eirp_dbm - pathloss_los_db(cfg)


def dynamic_range_db(cfg: LinkBudgetConfig) -> float:
    return pr_max_dbm(cfg) - noise_power_dbm(cfg.bandwidth_hz, cfg.noise_figure_db)


def budget_report(cfg: LinkBudgetConfig) -> dict:
    inputs = asdict(cfg)
    inputs["freq_hz"] = inputs.pop("f")["hz"]
    return {
        **inputs,
        "fspl_db": fspl_db(cfg.distance_m, cfg.f),
        "pathloss_los_db": pathloss_los_db(cfg),
        "pr_max_dbm": pr_max_dbm(cfg),
        "noise_power_dbm": noise_power_dbm(cfg.bandwidth_hz, cfg.noise_figure_db),
        "dynamic_range_db": dynamic_range_db(cfg),
    }
