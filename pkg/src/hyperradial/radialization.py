"""Spherical averages of complex powers of the kernel omega.

For a sphere of Euclidean radius ``eta`` about the origin and the boundary
point ``u0``, rotational symmetry about the axis through ``u0`` reduces the
sphere average of ``omega(u0, .)**alpha`` to a single polar-angle integral

    V(alpha, eta) = int_0^pi w(t)^alpha sin(t)^(k-1) dt / int_0^pi sin(t)^(k-1) dt,
    w(t) = (rho^2 - eta^2) / ((rho - eta)^2 + 4 rho eta sin(t/2)^2).

``w`` is strictly positive, so ``w**alpha = exp(alpha * log w)`` with the real
logarithm and no branch choice. :func:`mc_radialize` samples the full sphere
and is kept independent of the reduction so it can serve as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, QuadratureNotConverged
from .geometry import BOUNDARY_MARGIN, Space, r_to_eta, r_to_gap
from .numerics import gauss_legendre, integrate_panels
from .spectral import phi

__all__ = [
    "RadializationRequest",
    "radialize",
    "radialize_at_r",
    "mc_radialize",
    "ode_residual",
    "REL_TOL",
]

REL_TOL = 1e-11
MAX_REFINEMENTS = 14
# relative to the integral of |integrand|; below this the comparison is noise
_ROUNDOFF_FLOOR = 1e-15
_GRADING_ETA = 0.9


@dataclass(frozen=True)
class RadializationRequest:
    space: Space
    alpha: complex
    eta: float
    quadrature_order: int = 32

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "eta", float(self.eta))
        self.space.check_interior(self.eta)
        if self.quadrature_order < 2:
            raise DomainError("quadrature_order must be >= 2")


def _sphere_normaliser(k):
    # int_0^pi sin^(k-1)
    return math.sqrt(math.pi) * math.exp(math.lgamma(k / 2.0) - math.lgamma((k + 1) / 2.0))


def _initial_breakpoints(rho, eta, gap):
    if eta <= _GRADING_ETA * rho:
        return np.linspace(0.0, math.pi, 3)
    # the kernel peaks at t = 0 with angular width ~ gap / sqrt(rho * eta)
    width = gap / math.sqrt(rho * eta)
    pts = [0.0]
    t = 0.25 * width
    while t < math.pi / 2:
        pts.append(t)
        t *= 2.0
    pts.append(math.pi)
    return np.array(pts)


def _reduced_average(space, alpha, eta, gap, order):
    rho, k = space.rho, space.k
    log_num = math.log(gap) + math.log(2.0 * rho - gap)
    four_rho_eta = 4.0 * rho * eta
    gap2 = gap * gap

    def integrand(t):
        s = np.sin(0.5 * t)
        log_w = log_num - np.log(gap2 + four_rho_eta * s * s)
        val = np.exp(alpha * log_w)
        if k > 1:
            val = val * np.sin(t) ** (k - 1)
        return val

    rule = gauss_legendre(order)
    norm = _sphere_normaliser(k)
    breaks = _initial_breakpoints(rho, eta, gap)
    prev, _ = integrate_panels(integrand, breaks, rule)
    for _ in range(MAX_REFINEMENTS):
        mids = 0.5 * (breaks[:-1] + breaks[1:])
        breaks = np.sort(np.concatenate([breaks, mids]))
        cur, l1 = integrate_panels(integrand, breaks, rule)
        scale = max(abs(cur), _ROUNDOFF_FLOOR / REL_TOL * l1)
        if abs(cur - prev) <= REL_TOL * scale:
            return complex(cur) / norm
        prev = cur
    raise QuadratureNotConverged(
        f"radialization did not converge (alpha={alpha}, eta={eta}); "
        f"last estimates {prev / norm} and {cur / norm}",
        estimates=(prev / norm, cur / norm),
    )


def radialize(req: RadializationRequest, gap: float | None = None) -> complex:
    """Normalised average of ``omega(u0, m)**alpha`` over ``|m| = eta``.

    ``gap`` may supply ``rho - eta`` more accurately than the subtraction
    can; callers working in hyperbolic distance should pass it.
    """
    space, eta = req.space, req.eta
    if eta == 0.0 or req.alpha == 0:
        return 1.0 + 0.0j
    if gap is None:
        gap = space.rho - eta
    return _reduced_average(space, req.alpha, eta, gap, req.quadrature_order)


def radialize_at_r(space: Space, alpha: complex, r: float, quadrature_order: int = 32) -> complex:
    """:func:`radialize` on the geodesic sphere of hyperbolic radius ``r``."""
    req = RadializationRequest(space, alpha, r_to_eta(space, r), quadrature_order)
    return radialize(req, gap=r_to_gap(space, r))


def mc_radialize(
    req: RadializationRequest, samples: int, seed: int, u=None, chunk: int = 1 << 18
) -> tuple[complex, float]:
    """Monte-Carlo sphere average of ``omega(u, m)**alpha`` over ``|m| = eta``.

    Points are normalised Gaussian vectors scaled to radius ``eta``. Returns
    the estimate and the standard error of the mean (combined over the real
    and imaginary parts). ``u`` defaults to ``u0``.
    """
    if samples < 1000:
        raise DomainError(f"need at least 1000 samples, got {samples}")
    space, eta, alpha = req.space, req.eta, req.alpha
    rho, dim = space.rho, space.dim
    u = space.u0 if u is None else np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - rho) > 1e-12 * rho:
        raise DomainError("u must lie on the boundary sphere")
    if alpha == 0:
        return 1.0 + 0.0j, 0.0
    rng = np.random.default_rng(seed)
    num = (rho - eta) * (rho + eta)
    n_tot, mean, m2 = 0, 0.0 + 0.0j, 0.0
    remaining = samples
    while remaining > 0:
        n = min(chunk, remaining)
        g = rng.standard_normal((n, dim))
        m = eta * g / np.linalg.norm(g, axis=1, keepdims=True)
        d2 = np.sum((m - u) ** 2, axis=1)
        vals = np.exp(alpha * np.log(num / d2))
        c_mean = vals.mean()
        c_m2 = float(np.sum(np.abs(vals - c_mean) ** 2))
        # Chan et al. pairwise combination
        delta = c_mean - mean
        tot = n_tot + n
        mean = mean + delta * n / tot
        m2 = m2 + c_m2 + abs(delta) ** 2 * n_tot * n / tot
        n_tot = tot
        remaining -= n
    var = m2 / (n_tot - 1)
    return complex(mean), math.sqrt(var / n_tot)


def ode_residual(space: Space, alpha: complex, r: float, h: float, quadrature_order: int = 32) -> complex:
    """Central-difference residual of the radial eigen-equation for ``V(alpha, eta(r))``.

    Returns ``f'' + (k/rho) coth(r/rho) f' + phi(alpha) f`` at ``r``.
    """
    if not 0 < h < r:
        raise DomainError(f"need 0 < h < r, got h={h!r}, r={r!r}")
    scale = max(1.0, r)
    if not 1e-5 * scale <= h <= 0.1 * scale:
        raise DomainError(f"step h={h!r} outside [1e-5, 0.1] * max(1, r)")
    if r_to_eta(space, r + h) > space.rho * (1.0 - BOUNDARY_MARGIN):
        raise DomainError("r + h is too close to the boundary")

    def f(x):
        return radialize_at_r(space, alpha, x, quadrature_order)

    f0, fp, fm = f(r), f(r + h), f(r - h)
    d1 = (fp - fm) / (2 * h)
    d2 = (fp - 2 * f0 + fm) / (h * h)
    rho = space.rho
    return d2 + space.k / (rho * math.tanh(r / rho)) * d1 + phi(space, alpha) * f0
