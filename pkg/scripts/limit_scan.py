"""Gap between Dirac and nonrelativistic spin averages as r shrinks.

Over one nonrelativistic period the j- waves pick up an extra phase of about
pi r (2l+1)^2 relative to the linearized frequency, so the spin gap falls
linearly in r. The script prints the measured gap next to that estimate.
"""
import argparse

import numpy as np

from dirac_osc import SimConfig, evolve, initial_state, spin_from_state


def spin_gap(N, r, samples):
    dirac = initial_state(SimConfig(N=N, r=r))
    nonrel = initial_state(SimConfig(N=N, r=r, representation="nonrel"))
    gap = np.zeros(3)
    for t in np.linspace(0, 2 * np.pi / r, samples):
        gap = np.maximum(gap, np.abs(np.subtract(spin_from_state(evolve(dirac, t)),
                                                 spin_from_state(evolve(nonrel, t)))))
    weights = np.abs(dirac.C) ** 2
    estimate = np.pi * r * np.sum(weights * (2 * dirac.l + 1) ** 2) / weights.sum()
    return gap, estimate


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--N", type=float, default=20.0)
    parser.add_argument("--samples", type=int, default=2001)
    args = parser.parse_args()
    print(f"{'r':>8} {'sigma_x':>10} {'sigma_y':>10} {'sigma_z':>10} {'estimate':>10}")
    for r in (1e-5, 1e-6, 3e-7, 1e-7, 1e-8):
        gap, est = spin_gap(args.N, r, args.samples)
        print(f"{r:8.0e} " + " ".join(f"{g:10.2e}" for g in gap) + f" {est:10.2e}")


if __name__ == "__main__":
    main()
