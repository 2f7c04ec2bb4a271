"""Flight-test scene and per-frequency values from the suburban UAV campaign."""

from .geometry import Frequency, ScenarioGeometry
from .linkbudget import LinkBudgetConfig
from .models import LinearModelParams, LogModelParams

SUBURBAN_SCENE = ScenarioGeometry(d1_m=100.0, d2_m=250.0, h_obstacle_m=15.0, h_gs_m=25.0)

FREQUENCIES_HZ = (1e9, 4e9, 12e9, 24e9)

# (EIRP dBm, tx gain dBi, rx gain dBi), measured over 350 m, 10 kHz RBW, 4 dB NF
_TX_RX = {
    1e9: (32.2, 2.15, 2.15),
    4e9: (31.3, 2.15, 2.15),
    12e9: (22.2, 2.15, 8.5),
    24e9: (13.5, 2.15, 8.5),
}

LINKS = {
    hz: LinkBudgetConfig(Frequency(hz), eirp, gt, gr, SUBURBAN_SCENE.distance_m, 10e3, 4.0)
    for hz, (eirp, gt, gr) in _TX_RX.items()
}

# Reported LoS path loss and dynamic range, dB
REPORTED_PATHLOSS_LOS_DB = {1e9: 79.0, 4e9: 91.0, 12e9: 94.1, 24e9: 100.1}
REPORTED_DYNAMIC_RANGE_DB = {1e9: 83.2, 4e9: 70.3, 12e9: 58.1, 24e9: 43.4}

# Ground-level excess loss, ITU loss and fitted diffuse coefficient
REPORTED_GROUND_EPL_DB = {1e9: 17.9, 4e9: 24.2, 12e9: 17.2, 24e9: 16.9}
REPORTED_GROUND_ITU_DB = {1e9: 19.5, 4e9: 26.5, 12e9: 30.7, 24e9: 33.7}
ALPHA = {1e9: 60.0, 4e9: 35.0, 12e9: 7.9, 24e9: 6.9}

# Comparison-model coefficients fitted at 24 GHz
LINEAR_24GHZ = LinearModelParams(a=0.011, b=0.785)
LOG_24GHZ = LogModelParams(c=11.5)
