"""Collisions for a fixed exponent across sample radii.

For each r0 the smallest nontrivial |Im beta| is compared with the
strip bound pi rho / (2 r0); every collision should sit above it.

    python scripts/collision_survey.py --k 2 --alpha 1 --r0 0.5 1 2 3
"""

import argparse
import json

from hyperradial.geometry import Space
from hyperradial.one_radius import NoCollisionFound, find_collision, strip_bound


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--rho", type=float, default=1.0)
    ap.add_argument("--alpha", type=complex, default=1 + 0j)
    ap.add_argument("--r0", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    args = ap.parse_args(argv)

    space = Space(args.k, args.rho)
    rows = []
    for r0 in args.r0:
        bound = strip_bound(space, r0)
        try:
            found = find_collision(space, args.alpha, r0)
        except NoCollisionFound as exc:
            rows.append({"r0": r0, "bound": bound, "count": 0, "note": str(exc)})
            continue
        lowest = min(found, key=lambda c: abs(c.beta.imag))
        rows.append({"r0": r0, "bound": bound, "count": len(found),
                     "min_abs_im_beta": abs(lowest.beta.imag),
                     "beta": [lowest.beta.real, lowest.beta.imag],
                     "max_residual": max(c.residual for c in found),
                     "all_outside": all(c.outside_strip for c in found)})
        print(f"r0={r0:g}: {len(found)} collisions, min |Im beta| {abs(lowest.beta.imag):.4f} "
              f"vs bound {bound:.4f}")
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
