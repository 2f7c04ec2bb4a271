"""Write synthetic power and flight logs for a vertical climb behind the obstacle.

    python scripts/synth_flight.py OUTDIR --freq 12e9 --alpha 7.9 --noise 2

Feed the result to `uav-nlos ingest --power OUTDIR/power.csv --flight OUTDIR/flight.csv ...`.
"""

import argparse
from pathlib import Path

from uav_nlos.geometry import dump_scenario
from uav_nlos.measurements import flight_log_to_csv, power_log_to_csv
from uav_nlos.presets import SUBURBAN_SCENE
from uav_nlos.synth import vertical_flight


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--freq", type=float, default=12e9)
    ap.add_argument("--alpha", type=float, default=7.9)
    ap.add_argument("--noise", type=float, default=0.0, help="Gaussian noise, dB")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ideal-los", action="store_true")
    args = ap.parse_args()

    power, flight = vertical_flight(SUBURBAN_SCENE, args.freq, args.alpha, noise_db=args.noise,
                                    seed=args.seed, ideal_los=args.ideal_los)
    args.outdir.mkdir(parents=True, exist_ok=True)
    (args.outdir / "power.csv").write_text(power_log_to_csv(power))
    (args.outdir / "flight.csv").write_text(flight_log_to_csv(flight))
    (args.outdir / "scene.txt").write_text(dump_scenario(SUBURBAN_SCENE))
    print(f"{len(power)} power / {len(flight)} flight samples -> {args.outdir}")


if __name__ == "__main__":
    main()
