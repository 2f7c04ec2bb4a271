"""Ground-level (h_uav = 0) ITU and excess loss per carrier.

Columns: geometric v, ITU loss, excess loss with the preset alpha, the
reported excess loss, and the alpha that reproduces the reported value.
"""

from uav_nlos.fresnel import itu_loss_db
from uav_nlos.geometry import diffraction_parameter
from uav_nlos.models import excess_path_loss_db, fit_alpha_from_ground_epl
from uav_nlos.presets import ALPHA, REPORTED_GROUND_EPL_DB, SUBURBAN_SCENE as SCENE


def main():
    print(f"{'f GHz':>6} {'v':>7} {'ITU':>7} {'alpha':>6} {'E_PL':>7} {'(rep)':>6} {'alpha*':>8}")
    for hz, alpha in ALPHA.items():
        v = float(diffraction_parameter(SCENE, 0.0, hz))
        e = excess_path_loss_db(SCENE, 0.0, hz, alpha)
        a_star = fit_alpha_from_ground_epl(SCENE, hz, REPORTED_GROUND_EPL_DB[hz])
        print(f"{hz / 1e9:6g} {v:7.3f} {float(itu_loss_db(v)):7.2f} {alpha:6.1f} "
              f"{e:7.2f} {REPORTED_GROUND_EPL_DB[hz]:6.1f} {a_star:8.3f}")


if __name__ == "__main__":
    main()
