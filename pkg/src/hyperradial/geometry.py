"""Ball and half-space models of H^{k+1} with curvature -1/rho^2.

The ball model lives in the Euclidean ball of radius ``rho`` in R^{k+1}; the
half-space model is {(x, t) : x in R^k, t > 0}. The Cayley transform sends the
boundary point ``u0 = (0, ..., 0, rho)`` to infinity, and its height
coordinate coincides with the kernel ``omega(u0, m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

__all__ = [
    "Space",
    "BallPoint",
    "HalfSpacePoint",
    "BOUNDARY_MARGIN",
    "omega",
    "cayley",
    "r_to_eta",
    "eta_to_r",
    "r_to_gap",
    "gap_to_r",
]

# interior points must satisfy eta <= rho * (1 - BOUNDARY_MARGIN)
BOUNDARY_MARGIN = 1e-9


@dataclass(frozen=True)
class Space:
    """Hyperbolic space H^{k+1} of curvature radius ``rho``.

    ``k`` is the dimension of the geodesic spheres, so the ambient
    dimension is ``k + 1``.
    """

    k: int
    rho: float = 1.0

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)) or self.k < 1:
            raise DomainError(f"k must be an integer >= 1, got {self.k!r}")
        if not (math.isfinite(self.rho) and self.rho > 0):
            raise DomainError(f"rho must be positive and finite, got {self.rho!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "rho", float(self.rho))

    @property
    def kappa(self) -> float:
        return -1.0 / self.rho**2

    @property
    def dim(self) -> int:
        return self.k + 1

    @property
    def u0(self) -> np.ndarray:
        """Distinguished boundary point (0, ..., 0, rho)."""
        u = np.zeros(self.dim)
        u[-1] = self.rho
        return u

    def check_interior(self, eta: float) -> None:
        if not eta >= 0:
            raise DomainError(f"eta must be nonnegative, got {eta!r}")
        if eta > self.rho * (1.0 - BOUNDARY_MARGIN):
            raise DomainError(
                f"eta={eta!r} is on or too close to the boundary sphere of radius {self.rho}"
            )


@dataclass(frozen=True)
class BallPoint:
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        if c.ndim != 1:
            raise DomainError("ball point coordinates must be a flat vector")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def eta(self) -> float:
        return float(np.linalg.norm(self.coords))


@dataclass(frozen=True)
class HalfSpacePoint:
    x: np.ndarray
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise DomainError(f"half-space height must be positive, got {self.t!r}")


def _as_ball_point(space, m):
    if not isinstance(m, BallPoint):
        m = BallPoint(m)
    if m.coords.shape != (space.dim,):
        raise DomainError(f"expected a point in R^{space.dim}, got shape {m.coords.shape}")
    space.check_interior(m.eta)
    return m


def omega(space: Space, u, m) -> float:
    """Kernel (rho^2 - |m|^2) / |u - m|^2 for boundary ``u`` and interior ``m``."""
    m = _as_ball_point(space, m)
    u = np.asarray(u, dtype=float)
    if u.shape != (space.dim,):
        raise DomainError(f"expected a point in R^{space.dim}, got shape {u.shape}")
    if abs(np.linalg.norm(u) - space.rho) > 1e-12 * space.rho:
        raise DomainError(f"u must lie on the sphere of radius {space.rho}")
    eta = m.eta
    num = (space.rho - eta) * (space.rho + eta)
    den = float(np.sum((u - m.coords) ** 2))
    return num / den


def cayley(space: Space, m) -> HalfSpacePoint:
    """Cayley transform of the ball model onto the half-space model."""
    m = _as_ball_point(space, m)
    rho = space.rho
    X, T = m.coords[:-1], m.coords[-1]
    den = float(np.dot(X, X)) + (T - rho) ** 2
    eta = m.eta
    x = 2.0 * rho * X / den
    t = (rho - eta) * (rho + eta) / den
    return HalfSpacePoint(x=x, t=t)


def r_to_eta(space: Space, r: float) -> float:
    """Euclidean radius in the ball of the sphere at hyperbolic distance ``r``."""
    if not r >= 0:
        raise DomainError(f"r must be nonnegative, got {r!r}")
    return space.rho * math.tanh(r / (2.0 * space.rho))


def r_to_gap(space: Space, r: float) -> float:
    """``rho - r_to_eta(r)`` computed without cancellation."""
    if not r >= 0:
        raise DomainError(f"r must be nonnegative, got {r!r}")
    e = math.exp(-r / space.rho)
    return 2.0 * space.rho * e / (1.0 + e)


def eta_to_r(space: Space, eta: float) -> float:
    """Hyperbolic distance from the origin to the sphere of Euclidean radius ``eta``."""
    if not eta >= 0:
        raise DomainError(f"eta must be nonnegative, got {eta!r}")
    if not eta < space.rho:
        raise DomainError(f"eta={eta!r} must be smaller than rho={space.rho}")
    return 2.0 * space.rho * math.atanh(eta / space.rho)


def gap_to_r(space: Space, gap: float) -> float:
    """Inverse of :func:`r_to_gap`; well conditioned all the way to the boundary."""
    if not 0 < gap <= space.rho:
        raise DomainError(f"gap must lie in (0, rho], got {gap!r}")
    return space.rho * math.log((2.0 * space.rho - gap) / gap)
