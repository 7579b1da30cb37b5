"""Write the eigenvalue-region SVG for several strip half-widths.

    python scripts/render_regions.py --k 2 --p 0.5 1 2 --outdir figures
"""

import argparse
from pathlib import Path

from hyperradial.cli import main as cli_main


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--rho", type=float, default=1.0)
    ap.add_argument("--p", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--outdir", default="figures")
    args = ap.parse_args(argv)

    outdir = Path(args.outdir)
    for p in args.p:
        target = outdir / f"region_k{args.k}_p{p:g}.svg"
        code = cli_main(["region", "--k", str(args.k), "--rho", str(args.rho), "--p", str(p),
                         "--format", "svg", "--out", str(target)])
        if code:
            raise SystemExit(code)


if __name__ == "__main__":
    main()
