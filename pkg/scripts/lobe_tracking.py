"""Track the equatorial lobes of the packet in the Dirac and FW representations.

Prints the start angle and angular velocity of each lobe over t in [5, 15],
plus the counter-rotating velocity of the negative-energy part.
"""
import argparse

import numpy as np

from dirac_osc import SimConfig, evolve, initial_state, phi_profile
from dirac_osc.density import circular_centroid, track_lobes


def lobes(config, times, kind="total"):
    s0 = initial_state(config)
    phi = phi_profile(s0, config.radius)[0]
    profiles = [phi_profile(evolve(s0, t), config.radius, kind=kind)[1] for t in times]
    return phi, profiles, track_lobes(profiles, phi, times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--N", type=float, default=20.0)
    parser.add_argument("--r", type=float, default=0.5)
    args = parser.parse_args()
    times = np.linspace(5, 15, 41)
    for rep in ("dirac", "fw"):
        _, _, tracks = lobes(SimConfig(N=args.N, r=args.r, representation=rep), times)
        print(f"{rep:>5}: " + ", ".join(f"start {a:+.3f} rad, velocity {v:+.4f}" for a, v in tracks))
    phi, profiles, _ = lobes(SimConfig(N=args.N, r=args.r), times, kind="negative")
    centroids = np.unwrap([circular_centroid(phi, p) for p in profiles])
    print(f"negative-energy centroid velocity {np.polyfit(times, centroids, 1)[0]:+.4f}")


if __name__ == "__main__":
    main()
