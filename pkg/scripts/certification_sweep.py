"""Certify random eigenvalue pairs inside a parabolic region and tabulate the scans.

    python scripts/certification_sweep.py --k 2 --p 1 --pairs 50 --seed 0 --out sweep.csv
"""

import argparse
import csv
import sys

import numpy as np

from hyperradial.geometry import Space
from hyperradial.one_radius import certify_one_radius
from hyperradial.spectral import in_parabola


def sample_inside(rng, space, p, box):
    while True:
        mu = complex(rng.uniform(*box[0]), rng.uniform(*box[1]))
        if in_parabola(space, mu, p):
            return mu


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--rho", type=float, default=1.0)
    ap.add_argument("--p", type=float, default=1.0)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n-grid", type=int, default=200)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    space = Space(args.k, args.rho)
    vertex = args.p**2 + args.k**2 / 4
    box = ((-4 * vertex, vertex), (-3 * vertex, 3 * vertex))
    rng = np.random.default_rng(args.seed)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(["re_mu", "im_mu", "re_nu", "im_nu", "T", "min_separation", "argmin_r", "floor", "verdict"])
    counts = {"PASS": 0, "INCONCLUSIVE": 0}
    for _ in range(args.pairs):
        mu = sample_inside(rng, space, args.p, box)
        nu = sample_inside(rng, space, args.p, box)
        rep = certify_one_radius(space, mu, nu, n_grid=args.n_grid)
        counts[rep.verdict] += 1
        w.writerow([f"{x:.17g}" for x in (mu.real, mu.imag, nu.real, nu.imag, rep.T,
                                           rep.scan.min_separation, rep.scan.argmin_r, rep.floor)]
                   + [rep.verdict])
    if args.out:
        fh.close()
    print(f"{counts['PASS']} PASS, {counts['INCONCLUSIVE']} INCONCLUSIVE", file=sys.stderr)


if __name__ == "__main__":
    main()
