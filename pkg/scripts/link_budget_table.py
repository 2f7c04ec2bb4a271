"""Print the LoS link budget for the four measurement carriers next to the reported values."""

from uav_nlos.linkbudget import budget_report
from uav_nlos.presets import LINKS, REPORTED_DYNAMIC_RANGE_DB, REPORTED_PATHLOSS_LOS_DB


def main():
    print(f"{'f GHz':>6} {'FSPL':>8} {'PL_LoS':>8} {'(rep)':>7} {'Pr_max':>8} {'DR':>7} {'(rep)':>7}")
    for hz, cfg in LINKS.items():
        r = budget_report(cfg)
        print(f"{hz / 1e9:6g} {r['fspl_db']:8.2f} {r['pathloss_los_db']:8.2f} "
              f"{REPORTED_PATHLOSS_LOS_DB[hz]:7.1f} {r['pr_max_dbm']:8.2f} "
              f"{r['dynamic_range_db']:7.2f} {REPORTED_DYNAMIC_RANGE_DB[hz]:7.1f}")
    print(f"noise power {r['noise_power_dbm']:.1f} dBm")


if __name__ == "__main__":
    main()
