"""Numerical one-radius certification and collision search.

Two origin-normalised eigenfunctions with distinct eigenvalues cannot agree
anywhere on ``(0, pi rho / (2p)]``, where ``p`` is the larger strip
half-width of their exponents. :func:`certify_one_radius` scans that interval;
:func:`find_collision` looks for the opposite phenomenon, exponents ``beta``
whose sphere average matches that of ``alpha`` at a given radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigenfunction import evaluate_grid
from .exceptions import ConvergenceError, DomainError, NewtonFailure
from .geometry import Space, r_to_eta, r_to_gap
from .numerics import newton_complex
from .radialization import RadializationRequest, radialize
from .spectral import phi, strip_halfwidth, threshold

__all__ = [
    "SeparationScan",
    "CertificationReport",
    "Collision",
    "SeedGrid",
    "NoCollisionFound",
    "CLIP_RADII",
    "SEPARATION_FLOOR",
    "scan_separation",
    "certify_one_radius",
    "strip_bound",
    "default_seed_grid",
    "find_collision",
]

CLIP_RADII = 20.0  # unbounded thresholds are scanned on (0, CLIP_RADII * rho]
SEPARATION_FLOOR = 1e-9
GRID_START = 1e-4  # first grid point as a fraction of the scanned length
DEDUP_TOL = 1e-6
TRIVIAL_TOL = 1e-6
MAX_STEP = 1.0  # keeps each Newton run near its seed


@dataclass(frozen=True)
class SeparationScan:
    mu: complex
    nu: complex
    space: Space
    grid: np.ndarray
    separations: np.ndarray
    errors: np.ndarray

    @property
    def argmin(self) -> int:
        return int(np.argmin(self.separations))

    @property
    def min_separation(self) -> float:
        return float(self.separations[self.argmin])

    @property
    def argmin_r(self) -> float:
        return float(self.grid[self.argmin])

    @property
    def error_at_argmin(self) -> float:
        return float(self.errors[self.argmin])


def scan_separation(space: Space, mu: complex, nu: complex, n_grid: int = 200,
                    T_clip: float | None = None) -> SeparationScan:
    """``|phi_mu - phi_nu|`` on a geometric grid spanning ``[1e-4 T_clip, T_clip]``.

    ``T_clip`` defaults to the threshold, clipped to ``CLIP_RADII * rho``; it
    may not exceed the threshold.
    """
    mu, nu = complex(mu), complex(nu)
    T = threshold(space, mu, nu)
    if T_clip is None:
        T_clip = min(T, CLIP_RADII * space.rho)
    if not 0 < T_clip <= T:
        raise DomainError(f"T_clip={T_clip!r} must lie in (0, T={T!r}]")
    if n_grid < 2:
        raise DomainError("n_grid must be at least 2")
    grid = np.geomspace(GRID_START * T_clip, T_clip, n_grid)
    rep_mu = evaluate_grid(space, mu, grid)
    rep_nu = evaluate_grid(space, nu, grid)
    sep = np.array([abs(a.value - b.value) for a, b in zip(rep_mu, rep_nu)])
    err = np.array([a.error_estimate + b.error_estimate for a, b in zip(rep_mu, rep_nu)])
    return SeparationScan(mu, nu, space, grid, sep, err)


@dataclass(frozen=True)
class CertificationReport:
    T: float
    clipped: bool
    T_clip: float
    scan: SeparationScan
    floor: float
    verdict: str

    def to_dict(self) -> dict:
        return {
            "T": "inf" if math.isinf(self.T) else self.T,
            "clipped": self.clipped,
            "T_clip": self.T_clip,
            "min_separation": self.scan.min_separation,
            "argmin_r": self.scan.argmin_r,
            "floor": self.floor,
            "verdict": self.verdict,
        }


def certify_one_radius(space: Space, mu: complex, nu: complex, n_grid: int = 200) -> CertificationReport:
    """Scan ``(0, min(T, 20 rho)]`` and grade the minimum separation.

    PASS when the minimum exceeds ``max(1e-9, 10 * error estimate)`` at the
    minimiser, INCONCLUSIVE otherwise. INCONCLUSIVE means the separation is
    below what the evaluators can resolve, not that a counterexample exists.
    """
    T = threshold(space, mu, nu)
    clip = CLIP_RADII * space.rho
    T_clip = min(T, clip)
    scan = scan_separation(space, mu, nu, n_grid, T_clip)
    floor = max(SEPARATION_FLOOR, 10.0 * scan.error_at_argmin)
    verdict = "PASS" if scan.min_separation > floor else "INCONCLUSIVE"
    return CertificationReport(T=T, clipped=T > clip, T_clip=T_clip, scan=scan,
                               floor=floor, verdict=verdict)


# ----------------------------------------------------------------------------
# collisions
# ----------------------------------------------------------------------------


def strip_bound(space: Space, r0: float) -> float:
    """Largest ``|Im|`` of exponents for which one sample at ``r0`` is decisive.

    Equal to ``(pi/2) / log((rho + eta0) / (rho - eta0)) = pi rho / (2 r0)``.
    """
    if not r0 > 0:
        raise DomainError(f"r0 must be positive, got {r0!r}")
    return math.pi * space.rho / (2.0 * r0)


@dataclass(frozen=True)
class SeedGrid:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    n_re: int = 11
    n_im: int = 11
    conjugate: bool = True

    def seeds(self) -> list[complex]:
        res = np.linspace(self.re_min, self.re_max, self.n_re)
        ims = np.linspace(self.im_min, self.im_max, self.n_im)
        out = [complex(a, b) for b in ims for a in res]
        if self.conjugate:
            out += [z.conjugate() for z in out]
        return out


def default_seed_grid(space: Space, r0: float) -> SeedGrid:
    p_min = strip_bound(space, r0)
    k = space.k
    return SeedGrid(-2.0 * k, 3.0 * k, p_min, p_min + 5.0)


@dataclass(frozen=True)
class Collision:
    beta: complex
    alpha: complex
    r0: float
    residual: float
    nu: complex
    halfwidth: float  # strip half-width of nu, i.e. |Im beta|
    bound: float
    outside_strip: bool = field(default=False)

    @property
    def im_beta(self) -> float:
        return self.beta.imag

    def to_dict(self) -> dict:
        return {
            "beta": [self.beta.real, self.beta.imag],
            "nu": [self.nu.real, self.nu.imag],
            "residual": self.residual,
            "halfwidth": self.halfwidth,
            "bound": self.bound,
            "outside_strip": self.outside_strip,
        }


class NoCollisionFound(ConvergenceError):
    def __init__(self, message, best, best_residual):
        super().__init__(message)
        self.best = best
        self.best_residual = best_residual


def find_collision(space: Space, alpha: complex, r0: float, seed_grid: SeedGrid | None = None,
                   tol: float = 1e-10, quadrature_order: int = 32,
                   max_iter: int = 60) -> list[Collision]:
    """Exponents ``beta`` with ``V(beta) = V(alpha)`` on the sphere at distance ``r0``.

    Damped Newton from every seed on the residual with the trivial roots
    ``alpha`` and ``k - alpha`` divided out, then a few undeflated Newton
    steps to polish. Roots are deduplicated, any that still land on a trivial
    solution are dropped, and survivors are
    re-verified at twice the quadrature order. Sorted by real, then imaginary
    part. Raises :class:`NoCollisionFound` when nothing survives.
    """
    if not r0 > 0:
        raise DomainError(f"r0 must be positive, got {r0!r}")
    if not tol >= 1e-11:
        raise DomainError(f"tol must be >= 1e-11, got {tol!r}")
    alpha = complex(alpha)
    eta0, gap0 = r_to_eta(space, r0), r_to_gap(space, r0)
    if seed_grid is None:
        seed_grid = default_seed_grid(space, r0)

    def V(beta, order=quadrature_order):
        return radialize(RadializationRequest(space, beta, eta0, order), gap=gap0)

    target = V(alpha)

    def g(beta):
        return V(beta) - target

    trivial = (alpha, space.k - alpha)

    def deflated(beta):
        # divides out the trivial roots (a double root when alpha = k/2)
        return g(beta) / ((beta - trivial[0]) * (beta - trivial[1]))

    roots: list[complex] = []
    best, best_res = None, math.inf
    for z0 in seed_grid.seeds():
        try:
            z = newton_complex(deflated, z0, tol=tol, max_iter=max_iter, max_step=MAX_STEP)
            z = newton_complex(g, z, tol=tol, max_iter=10)
        except NewtonFailure as exc:
            if exc.best_residual < best_res:
                best, best_res = exc.best, exc.best_residual
            continue
        except ConvergenceError:
            continue
        if any(abs(z - t) <= TRIVIAL_TOL for t in trivial):
            continue
        if any(abs(z - w) <= DEDUP_TOL for w in roots):
            continue
        roots.append(z)

    target_check = V(alpha, 2 * quadrature_order)
    bound = strip_bound(space, r0)
    found = []
    for z in roots:
        res = abs(V(z, 2 * quadrature_order) - target_check)
        if res >= 10 * tol:
            best, best_res = (z, res) if res < best_res else (best, best_res)
            continue
        nu = phi(space, z)
        found.append(Collision(
            beta=z, alpha=alpha, r0=float(r0), residual=float(res), nu=nu,
            halfwidth=strip_halfwidth(space, nu), bound=bound,
            outside_strip=max(abs(alpha.imag), abs(z.imag)) > bound,
        ))
    if not found:
        raise NoCollisionFound(
            f"no nontrivial collision found (best residual {best_res:.3e})", best, best_res
        )
    found.sort(key=lambda c: (c.beta.real, c.beta.imag))
    return found
