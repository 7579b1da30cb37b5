"""The quadratic map between kernel exponents and eigenvalues.

``phi(alpha) = -kappa * (alpha * k - alpha**2)`` with ``kappa = -1/rho^2``.
Writing ``alpha = k/2 + t`` gives ``phi = (k^2/4 - t^2) / rho^2``, so the map is
even in ``t`` and sends every horizontal strip ``|Im alpha| <= p`` onto the
closed region bounded by a left-opening parabola with vertex
``(k^2/4 + p^2) / rho^2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .geometry import Space

__all__ = [
    "SpectralPoint",
    "StripRegion",
    "BOUNDARY_SLACK",
    "phi",
    "phi_inverse",
    "strip_halfwidth",
    "in_parabola",
    "in_real_ray",
    "parabola_boundary",
    "parabola_anchors",
    "threshold",
]

BOUNDARY_SLACK = 1e-12


def phi(space: Space, alpha: complex) -> complex:
    """Eigenvalue belonging to the kernel exponent ``alpha``."""
    alpha = complex(alpha)
    return -space.kappa * (alpha * space.k - alpha * alpha)


def _half_offset(space, mu):
    # s with alpha = k/2 -+ s; principal root, Re s >= 0
    d = space.k**2 / 4.0 - complex(mu) * space.rho**2
    s = cmath.sqrt(complex(d.real, d.imag + 0.0))
    if s.real == 0.0:
        s = complex(0.0, abs(s.imag))
    return s


def phi_inverse(space: Space, mu: complex) -> tuple[complex, complex]:
    """Both exponents mapping to ``mu``.

    The first root has ``Re <= k/2`` (ties broken by ``Im >= 0``); the pair
    always sums to ``k``.
    """
    s = _half_offset(space, mu)
    h = space.k / 2.0
    if s.real == 0.0:
        return complex(h, s.imag), complex(h, -s.imag)
    first = h - s
    return first, space.k - first


def strip_halfwidth(space: Space, mu: complex) -> float:
    """``|Im alpha|`` shared by both preimages of ``mu``."""
    return abs(_half_offset(space, mu).imag)


def in_real_ray(space: Space, mu: complex) -> bool:
    """The degenerate p = 0 region: real ``mu`` with ``mu <= -kappa k^2 / 4``."""
    mu = complex(mu)
    return mu.imag == 0.0 and mu.real <= -space.kappa * space.k**2 / 4.0


def in_parabola(space: Space, mu: complex, p: float) -> bool:
    """Whether ``mu`` lies in the closed parabolic image of ``|Im alpha| <= p``."""
    if not p > 0:
        raise DomainError(f"p must be positive (use in_real_ray for p = 0), got {p!r}")
    mu = complex(mu)
    kap = space.kappa
    bound = -kap * (p * p + space.k**2 / 4.0) + mu.imag**2 / (4.0 * kap * p * p)
    return mu.real <= bound + BOUNDARY_SLACK


def parabola_boundary(space: Space, p: float, n: int, half_span=None, lower=False) -> np.ndarray:
    """Images of ``n`` points on the line ``alpha = k/2 + i p + a1``.

    ``a1`` runs uniformly over ``[-half_span, half_span]``; the default span is
    twice the abscissa where the parabola crosses the imaginary axis. With
    ``lower=True`` the line ``Im alpha = -p`` is used instead; it has the same
    image traversed in the opposite direction.
    """
    if not p > 0:
        raise DomainError(f"p must be positive, got {p!r}")
    if n < 3:
        raise DomainError(f"need at least 3 boundary samples, got {n}")
    if half_span is None:
        half_span = 2.0 * math.sqrt(p * p + space.k**2 / 4.0)
    a1 = np.linspace(-half_span, half_span, n)
    alpha = space.k / 2.0 + (-1j if lower else 1j) * p + a1
    return -space.kappa * (alpha * space.k - alpha * alpha)


def parabola_anchors(space: Space, p: float) -> dict[str, complex]:
    """Vertex on the real axis and the two crossings of the imaginary axis."""
    if not p > 0:
        raise DomainError(f"p must be positive, got {p!r}")
    kap = space.kappa
    c = math.sqrt(p * p + space.k**2 / 4.0)
    vertex = -kap * (p * p + space.k**2 / 4.0)
    return {
        "vertex": complex(vertex, 0.0),
        "upper": complex(0.0, abs(2.0 * kap * p * c)),
        "lower": complex(0.0, -abs(2.0 * kap * p * c)),
    }


def threshold(space: Space, mu: complex, nu: complex) -> float:
    """Length ``pi rho / (2p)`` of the interval on which the two eigenfunctions differ.

    ``p`` is the larger strip half-width of ``mu`` and ``nu``; returns
    ``math.inf`` when both eigenvalues lie on the real ray.
    """
    if complex(mu) == complex(nu):
        raise DomainError("threshold is undefined for mu == nu")
    p = max(strip_halfwidth(space, mu), strip_halfwidth(space, nu))
    if p == 0.0:
        return math.inf
    return math.pi * space.rho / (2.0 * p)


@dataclass(frozen=True)
class SpectralPoint:
    """An exponent together with its eigenvalue."""

    alpha: complex
    mu: complex
    space: Space

    def __post_init__(self):
        expected = phi(self.space, self.alpha)
        if abs(expected - self.mu) > 1e-12 * max(1.0, abs(expected)):
            raise DomainError(f"mu={self.mu} is not phi(alpha={self.alpha})={expected}")

    @classmethod
    def from_alpha(cls, space: Space, alpha: complex) -> "SpectralPoint":
        return cls(complex(alpha), phi(space, alpha), space)

    @classmethod
    def from_mu(cls, space: Space, mu: complex) -> "SpectralPoint":
        return cls(phi_inverse(space, mu)[0], complex(mu), space)

    @property
    def partner(self) -> "SpectralPoint":
        return SpectralPoint(self.space.k - self.alpha, self.mu, self.space)

    @property
    def halfwidth(self) -> float:
        return abs(self.alpha.imag)


@dataclass(frozen=True)
class StripRegion:
    """Horizontal strip ``|Im alpha| <= p`` in the exponent plane."""

    p: float

    def __post_init__(self):
        if not self.p >= 0:
            raise DomainError(f"strip half-width must be nonnegative, got {self.p!r}")

    def contains_alpha(self, alpha: complex) -> bool:
        return abs(complex(alpha).imag) <= self.p

    def contains_mu(self, space: Space, mu: complex) -> bool:
        if self.p == 0:
            return in_real_ray(space, mu)
        return in_parabola(space, mu, self.p)

    def radius(self, space: Space) -> float:
        """Largest radius ``pi rho / (2p)`` on which one sample is decisive."""
        return math.inf if self.p == 0 else math.pi * space.rho / (2.0 * self.p)
