"""Loss-vs-altitude for the four models at one carrier, optionally against a trace.

    python scripts/model_comparison.py --freq 24e9 [--trace excess.csv] [--plot out.png]

matplotlib is only needed for --plot.
"""

import argparse

import numpy as np

from uav_nlos.measurements import read_trace, rms_error_db
from uav_nlos.models import ExcessLossParams, model_curve
from uav_nlos.presets import ALPHA, LINEAR_24GHZ, LOG_24GHZ, SUBURBAN_SCENE as SCENE


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--freq", type=float, default=24e9)
    ap.add_argument("--trace")
    ap.add_argument("--plot")
    args = ap.parse_args()

    hz = args.freq
    curves = {
        "itu": model_curve(SCENE, hz, None, "itu"),
        "excess": model_curve(SCENE, hz, ExcessLossParams(ALPHA.get(hz, 7.0)), "excess"),
        "linear": model_curve(SCENE, hz, LINEAR_24GHZ, "linear"),
        "log": model_curve(SCENE, hz, LOG_24GHZ, "log"),
    }
    h = curves["itu"].h_uav_m
    for k in range(0, h.size, 20):
        print(f"{h[k]:5.1f} " + " ".join(f"{c.loss_db[k]:7.2f}" for c in curves.values()))

    trace = read_trace(args.trace) if args.trace else None
    if trace is not None:
        for name, c in curves.items():
            print(f"rms {name:6s} {rms_error_db(trace, c):.3f} dB")

    if args.plot:
        import matplotlib.pyplot as plt
        fig, ax = plt.subplots(figsize=(5, 4))
        if trace is not None:
            ax.plot(trace.value_db, trace.alt_m, ".", ms=2, color="0.6", label="trace")
        for name, c in curves.items():
            ax.plot(c.loss_db, c.h_uav_m, label=name)
        ax.axhline(11.0, ls=":", color="k", lw=0.8)
        ax.set_xlabel("excess path loss (dB)")
        ax.set_ylabel("UAV altitude (m)")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    main()
