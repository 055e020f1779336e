"""Regenerate the CSV data behind the spin, density and decomposition figures.

Usage: python3 scripts/figure_data.py [output_dir] [--workers N]
"""
import argparse
from pathlib import Path

from dirac_osc import SimConfig
from dirac_osc.cli import run_compare, run_decompose, run_density, run_spins


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("outdir", nargs="?", default="figure_data")
    parser.add_argument("--workers", type=int, default=4)
    args = parser.parse_args()
    out = Path(args.outdir)

    # spin averages over one nonrelativistic period, with the nonrelativistic overlay
    for r in (0.001, 0.025, 0.5):
        cfg = SimConfig(N=20, r=r, t_steps=2000)
        run_compare(cfg, out / f"spins_compare_r{r:g}.csv", workers=args.workers)
    run_spins(SimConfig(N=20, r=0.5, t_end=50.0, t_steps=2000), out / "spins_dirac_r0.5.csv", workers=args.workers)
    run_spins(SimConfig(N=20, r=0.5, t_end=50.0, t_steps=2000, representation="fw"),
              out / "spins_fw_r0.5.csv", workers=args.workers)

    # density on the sphere through the centroid, Dirac and FW
    kinds = ["total", "c1", "c2", "c3", "positive", "negative"]
    run_density(SimConfig(N=20, r=0.5), [0.0, 10.0], kinds, out / "density_dirac", workers=args.workers)
    run_density(SimConfig(N=20, r=0.5, representation="fw"), [0.0, 10.0], ["total", "c1", "c2"],
                out / "density_fw", workers=args.workers)

    # equatorial profiles split by component and energy sector
    run_decompose(SimConfig(N=20, r=0.5), 10.0, out / "decompose_dirac_t10.csv")
    run_decompose(SimConfig(N=20, r=0.5, representation="fw"), 10.0, out / "decompose_fw_t10.csv")
    print(f"wrote {sum(1 for _ in out.rglob('*.csv'))} files to {out}")


if __name__ == "__main__":
    main()
