"""Steady limit cycles of the two uncoupled-chain scenarios.

Runs the lam = 0 presets (equal sizes N1 = N2 = 5, then unequal N1 = 10,
N2 = 5), writes the trajectory datasets, and prints the steady-orbit
numbers: in the co-rotating frame both scenarios settle onto fixed points,
i.e. circular limit cycles at the common lab frequency.

    python demos/limit_cycles.py [outdir]
"""

import dataclasses
import math
import sys
import warnings

import numpy as np

from spinsync import HPBreakdownWarning
from spinsync.scenario import preset_config, run_scenario

warnings.simplefilter("ignore", HPBreakdownWarning)  # transient overshoot


def describe(result):
    traj = result.traj
    m = traj.t >= 0.9 * traj.t[-1]
    b1 = traj.beta1[m]
    b2 = traj.beta2[m]
    a1 = math.sqrt(2.0 * float((np.abs(b1) ** 2).mean()))
    a2 = math.sqrt(2.0 * float((np.abs(b2) ** 2).mean()))
    ph1 = np.unwrap(np.arctan2(b1.imag, b1.real))
    ph2 = np.unwrap(np.arctan2(b2.imag, b2.real))
    d = ph2 - ph1
    print(f"  orbit radii (quadrature units): {a1:.4f} / {a2:.4f}"
          f"  ratio {a1 / a2:.4f}")
    print(f"  phase difference: mean {np.angle(np.exp(1j * d).mean()):+.4f},"
          f" drift over final 10%: {d.max() - d.min():.2e} rad")
    print(f"  steady S_q_bar = {result.summary['Sq_bar']:.4f}")


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "demo_out"
    for name in ("fig2a", "fig2d"):
        cfg = preset_config(name)
        if name == "fig2d":
            # the unequal-size transient crosses the X = 0 coupling shell,
            # where the covariance drift spikes; dt = 0.005 keeps the
            # covariance positive through the crossing for this preset
            cfg = dataclasses.replace(cfg, dt=0.005)
        print(f"== {name}: lam = {cfg.lam}, N1 = {cfg.N1}, N2 = {cfg.N2} ==")
        result = run_scenario(cfg, f"{outdir}/{name}")
        describe(result)
        print(f"  dataset: {result.trajectory_path}")
    print()
    print("Equal chain sizes synchronize onto the same orbit; unequal sizes")
    print("phase-lock but keep distinct amplitudes.")


if __name__ == "__main__":
    main()
