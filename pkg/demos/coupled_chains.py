"""The intra-chain coupled regime (lam != 0) and its secular instability.

With lam != 0 the drift carries multiplicative secular terms through
R_j(t) = i w_j (lam^2 / 2N_j) t, which grow linearly in time.  This demo
runs the coupled preset and shows what actually happens: the mean field
is driven out of the bosonic-truncation regime, crosses the X = 0
coupling singularity, and the integration ends in a non-finite state.
The partial dataset and the failure manifest are still written, which is
exactly what the failure path is for.

    python demos/coupled_chains.py [outdir]
"""

import dataclasses
import sys
import warnings

import numpy as np

from spinsync import HPBreakdownWarning, NonFinite, SingularCoupling
from spinsync.scenario import preset_config, run_scenario


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "demo_out"
    cfg = preset_config("fig2g")
    print(f"== fig2g: lam = {cfg.lam}, N1 = N2 = {cfg.N1} ==")
    print(f"attempting horizon {cfg.horizon:g} tau at dt = {cfg.dt} ...")

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HPBreakdownWarning)
        try:
            run_scenario(cfg, f"{outdir}/fig2g")
            print("completed (unexpected for these constants)")
        except (NonFinite, SingularCoupling) as exc:
            print(f"integration failed as expected: {exc}")
    for w in caught:
        print(f"truncation warning: {w.message}")

    print()
    print("A short horizon still integrates (the transient already")
    print("overshoots the truncation bound, but stays finite):")
    short = dataclasses.replace(cfg, horizon=50.0, scenario="fig2g_short")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HPBreakdownWarning)
        result = run_scenario(short, f"{outdir}/fig2g_short")
    traj = result.traj
    n1 = np.abs(traj.beta1) ** 2
    print(f"  occupation |beta1|^2 range over 50 tau: "
          f"{n1.min():.3f} .. {n1.max():.3f} (validity bound 2N = {2 * cfg.N1})")
    print(f"  dataset: {result.trajectory_path}")


if __name__ == "__main__":
    main()
