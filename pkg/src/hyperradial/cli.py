"""Command-line interface.

    hyperradial eval    --k 2 --rho 1 --mu 1 --r 0:5:11
    hyperradial region  --k 2 --rho 1 --p 1 --format svg --out region.svg
    hyperradial certify --k 2 --rho 1 --mu 2 --nu 1
    hyperradial collide --k 2 --rho 1 --alpha 1 --r0 1

Exit status: 0 on success, 1 for domain or numerical errors, 2 for usage
errors. Relative ``--out`` paths are resolved against ``$HYPERRADIAL_OUT_DIR``
when it is set. Files are written atomically.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .eigenfunction import evaluate_grid
from .exceptions import DomainError, HyperradialError
from .geometry import Space
from .one_radius import (
    NoCollisionFound,
    certify_one_radius,
    default_seed_grid,
    find_collision,
    strip_bound,
)
from .spectral import parabola_anchors, parabola_boundary, phi

OUT_DIR_ENV = "HYPERRADIAL_OUT_DIR"
EVAL_HEADER = "r,re_phi,im_phi,err"
REGION_HEADER = "a1,re_mu,im_mu"


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.17g}"


def human(x: float) -> str:
    return f"{x:.6g}"


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as a complex number") from None


def parse_r_spec(text: str) -> np.ndarray:
    """``r`` or ``start:stop:count`` (inclusive, evenly spaced)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            r = float(parts[0])
            if not r >= 0:
                raise DomainError(f"r must be nonnegative, got {r}")
            return np.array([r])
        if len(parts) != 3:
            raise UsageError(f"malformed r range {text!r}; expected start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"malformed r specification {text!r}") from None
    if not 0 <= start < stop or count < 2:
        raise DomainError(f"r range {text!r} must satisfy 0 <= start < stop and count >= 2")
    return np.linspace(start, stop, count)


def _meta(command: str, space: Space) -> dict:
    return {"schema": f"hyperradial.{command}/1", "version": __version__,
            "k": space.k, "rho": space.rho}


def _cplx(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def write_output(text: str, out: str | None) -> Path | None:
    if out is None:
        sys.stdout.write(text)
        return None
    path = Path(out)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------


def cmd_eval(args) -> str:
    space = Space(args.k, args.rho)
    mu = parse_complex(args.mu)
    rs = parse_r_spec(args.r)
    reports = evaluate_grid(space, mu, rs)
    if args.format == "json":
        doc = _meta("eval", space)
        doc["mu"] = _cplx(mu)
        doc["rows"] = [
            {"r": rep.r, "phi": _cplx(rep.value), "err": rep.error_estimate} for rep in reports
        ]
        return json.dumps(doc, indent=2) + "\n"
    if args.format != "csv":
        raise UsageError("eval supports --format csv or json")
    buf = io.StringIO()
    buf.write(EVAL_HEADER + "\n")
    for rep in reports:
        buf.write(",".join([fmt(rep.r), fmt(rep.value.real), fmt(rep.value.imag),
                            fmt(rep.error_estimate)]) + "\n")
    return buf.getvalue()


def region_svg(space: Space, p: float, boundary: np.ndarray, anchors: dict) -> str:
    """Schematic of the parabolic region: shaded interior, axes, labelled crossings."""
    vertex = anchors["vertex"].real
    top = anchors["upper"].imag
    re_lo = min(float(boundary.real.min()), -0.5 * vertex)
    re_hi = 1.25 * vertex if vertex > 0 else 1.0
    im_hi = max(float(np.abs(boundary.imag).max()), 1.2 * top)
    width, height, pad = 640.0, 480.0, 40.0

    def sx(x):
        return pad + (x - re_lo) / (re_hi - re_lo) * (width - 2 * pad)

    def sy(y):
        return height / 2 - y / im_hi * (height / 2 - pad)

    # boundary runs from the lower-left branch through the vertex to the upper-left
    order = np.argsort(boundary.imag)
    pts = " ".join(f"{sx(z.real):.3f},{sy(z.imag):.3f}" for z in boundary[order])
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        f'<!-- schema hyperradial.region/1 k={space.k} rho={fmt(space.rho)} p={fmt(p)} -->',
        f'<title>Eigenvalue region for |Im alpha| &lt;= {human(p)} (k={space.k}, rho={human(space.rho)})</title>',
        f'<polygon points="{pts}" fill="#9ecae1" fill-opacity="0.6" stroke="none"/>',
        f'<polyline points="{pts}" fill="none" stroke="#08519c" stroke-width="2"/>',
        f'<line x1="{pad:g}" y1="{sy(0):.3f}" x2="{width - pad:g}" y2="{sy(0):.3f}" stroke="black"/>',
        f'<line x1="{sx(0):.3f}" y1="{pad / 2:g}" x2="{sx(0):.3f}" y2="{height - pad / 2:g}" stroke="black"/>',
        f'<text x="{width - pad:g}" y="{sy(0) - 6:.3f}" text-anchor="end">Re mu</text>',
        f'<text x="{sx(0) + 6:.3f}" y="{pad / 2 + 12:g}">Im mu</text>',
    ]
    for name, z in anchors.items():
        lines.append(
            f'<circle class="anchor" data-name="{name}" data-re="{fmt(z.real)}" data-im="{fmt(z.imag)}" '
            f'cx="{sx(z.real):.3f}" cy="{sy(z.imag):.3f}" r="4" fill="#cb181d"/>'
        )
        lines.append(
            f'<text x="{sx(z.real) + 8:.3f}" y="{sy(z.imag) - 8:.3f}" font-size="13">'
            f'({human(z.real)}, {human(z.imag)})</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_region(args) -> str:
    space = Space(args.k, args.rho)
    if not args.p > 0:
        raise DomainError(f"p must be positive, got {args.p}")
    boundary = parabola_boundary(space, args.p, args.n)
    anchors = parabola_anchors(space, args.p)
    if args.format == "svg":
        return region_svg(space, args.p, boundary, anchors)
    if args.format == "json":
        doc = _meta("region", space)
        doc["p"] = args.p
        doc["anchors"] = {name: _cplx(z) for name, z in anchors.items()}
        doc["boundary"] = [_cplx(z) for z in boundary]
        return json.dumps(doc, indent=2) + "\n"
    half_span = 2.0 * math.sqrt(args.p**2 + space.k**2 / 4.0)
    a1 = np.linspace(-half_span, half_span, args.n)
    buf = io.StringIO()
    buf.write(REGION_HEADER + "\n")
    for a, z in zip(a1, boundary):
        buf.write(f"{fmt(a)},{fmt(z.real)},{fmt(z.imag)}\n")
    return buf.getvalue()


def cmd_certify(args) -> tuple[str, str]:
    space = Space(args.k, args.rho)
    mu, nu = parse_complex(args.mu), parse_complex(args.nu)
    if mu == nu:
        raise DomainError("mu and nu must differ")
    report = certify_one_radius(space, mu, nu, n_grid=args.n_grid)
    doc = _meta("certify", space)
    doc["mu"] = _cplx(mu)
    doc["nu"] = _cplx(nu)
    doc["n_grid"] = args.n_grid
    doc.update(report.to_dict())
    summary = (f"{report.verdict}: T={human(report.T)}, min separation "
               f"{human(report.scan.min_separation)} at r={human(report.scan.argmin_r)}")
    return json.dumps(doc, indent=2) + "\n", summary


def cmd_collide(args) -> tuple[str, str]:
    space = Space(args.k, args.rho)
    alpha = parse_complex(args.alpha)
    if not args.r0 > 0:
        raise DomainError(f"r0 must be positive, got {args.r0}")
    grid = default_seed_grid(space, args.r0)
    overrides = {name: getattr(args, name) for name in ("re_min", "re_max", "im_min", "im_max", "n_re", "n_im")
                 if getattr(args, name) is not None}
    if overrides:
        grid = dataclasses.replace(grid, **overrides)
    doc = _meta("collide", space)
    doc.update({"alpha": _cplx(alpha), "mu": _cplx(phi(space, alpha)), "r0": args.r0,
                "tol": args.tol, "bound": strip_bound(space, args.r0),
                "seed_grid": dataclasses.asdict(grid)})
    try:
        collisions = find_collision(space, alpha, args.r0, grid, tol=args.tol)
        doc["collisions"] = [c.to_dict() for c in collisions]
        doc["note"] = None
    except NoCollisionFound as exc:
        doc["collisions"] = []
        doc["note"] = f"search failure: {exc}"
    summary = f"{len(doc['collisions'])} collision(s), strip bound {human(doc['bound'])}"
    return json.dumps(doc, indent=2) + "\n", summary


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperradial", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, default):
        p.add_argument("--k", type=int, required=True, help="sphere dimension (ambient dimension k+1)")
        p.add_argument("--rho", type=float, default=1.0, help="curvature radius")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default=default)

    p = sub.add_parser("eval", help="evaluate the radial eigenfunction")
    common(p, ["csv", "json"], "csv")
    p.add_argument("--mu", required=True)
    p.add_argument("--r", required=True, help="radius or start:stop:count")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("region", help="boundary of the eigenvalue region for a strip")
    common(p, ["svg", "csv", "json"], "svg")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=int, default=201)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("certify", help="one-radius separation certificate")
    common(p, ["json"], "json")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--n-grid", type=int, default=200)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("collide", help="search for colliding exponents")
    common(p, ["json"], "json")
    p.add_argument("--alpha", required=True)
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    for name in ("re-min", "re-max", "im-min", "im-max"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--n-re", type=int, default=None)
    p.add_argument("--n-im", type=int, default=None)
    p.set_defaults(func=cmd_collide)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
        summary = None
        if isinstance(text, tuple):
            text, summary = text
    except UsageError as exc:
        print(f"hyperradial {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (HyperradialError, DomainError) as exc:
        print(f"hyperradial {args.command}: error: {exc}", file=sys.stderr)
        return 1
    path = write_output(text, args.out)
    if path is not None:
        print(f"wrote {path}", file=sys.stderr)
    if summary:
        print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
