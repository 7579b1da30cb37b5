"""Origin-normalised radial eigenfunctions of the hyperbolic Laplacian.

phi'' + (k/rho) coth(r/rho) phi' + mu phi = 0,   phi(0) = 1.

Three evaluation routes are provided:

* ``eval_series``: even Taylor series of the regular solution, valid near 0;
* ``eval_ode``: adaptive Dormand-Prince integration seeded by the series at
  ``R_SWITCH`` (the coth term has a 1/r pole at the origin);
* ``eval_kernel``: the spherical average of ``omega**alpha`` with
  ``mu = phi(alpha)``.

``evaluate`` runs the kernel and ODE routes and reports the kernel value with
their difference as error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exceptions import DomainError, MethodDisagreement
from .geometry import Space
from .numerics import IntegratorConfig, rk_integrate
from .radialization import radialize_at_r
from .spectral import phi_inverse

__all__ = [
    "EvalReport",
    "R_SWITCH",
    "SERIES_RADIUS",
    "SERIES_ORDER",
    "DISAGREEMENT_TOL",
    "EVAL_REL_TOL",
    "scoth_coefficients",
    "series_coefficients",
    "eval_series",
    "series_with_derivative",
    "eval_ode",
    "eval_ode_grid",
    "eval_kernel",
    "evaluate",
    "evaluate_grid",
]

R_SWITCH = 1e-2  # in units of rho
SERIES_RADIUS = 0.5  # in units of rho
SERIES_ORDER = 20
DISAGREEMENT_TOL = 1e-6
# the ODE leg of evaluate: absolute agreement ~1e-8 needs this when |phi| ~ 1e5
EVAL_REL_TOL = 1e-13
METHODS = ("series", "ode", "kernel", "reconciled")


@dataclass(frozen=True)
class EvalReport:
    r: float
    mu: complex
    value: complex
    method: str
    error_estimate: float

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")


@lru_cache(maxsize=None)
def scoth_coefficients(n_terms: int) -> tuple[Fraction, ...]:
    """Exact coefficients c_j of ``s coth s = sum c_j s^(2j)``.

    Obtained by dividing the even series of cosh(s) by that of sinh(s)/s.
    """
    num = [Fraction(1, math.factorial(2 * j)) for j in range(n_terms)]
    den = [Fraction(1, math.factorial(2 * j + 1)) for j in range(n_terms)]
    c = []
    for j in range(n_terms):
        c.append(num[j] - sum(c[i] * den[j - i] for i in range(j)))
    return tuple(c)


def series_coefficients(space: Space, mu: complex, order: int = SERIES_ORDER) -> np.ndarray:
    """Taylor coefficients a_0..a_order of phi in the variable s = r / rho.

    With lam = mu rho^2 the equation times s reads
    s phi'' + k (s coth s) phi' + lam s phi = 0, which gives
    n (n - 1 + k) a_n = -k sum_{j>=1} c_j (n - 2j) a_{n-2j} - lam a_{n-2}.
    Odd coefficients come out identically zero.
    """
    if order < 2 or order > 40:
        raise DomainError(f"series order must be in [2, 40], got {order}")
    lam = complex(mu) * space.rho**2
    k = space.k
    c = [float(x) for x in scoth_coefficients(order // 2 + 1)]
    a = np.zeros(order + 1, dtype=complex)
    a[0] = 1.0
    for n in range(1, order + 1):
        acc = 0.0j
        for j in range(1, n // 2 + 1):
            acc += c[j] * (n - 2 * j) * a[n - 2 * j]
        rhs = -k * acc
        if n >= 2:
            rhs -= lam * a[n - 2]
        a[n] = rhs / (n * (n - 1 + k))
    return a


def series_with_derivative(space: Space, mu: complex, r: float, order: int = SERIES_ORDER):
    """Value, r-derivative and truncation estimate (last retained term)."""
    if order % 2 or order < 2:
        raise DomainError(f"series order must be an even integer >= 2, got {order}")
    if not r >= 0:
        raise DomainError(f"r must be nonnegative, got {r!r}")
    if r > SERIES_RADIUS * space.rho:
        raise DomainError(f"r={r!r} beyond validated series radius {SERIES_RADIUS * space.rho}")
    a = series_coefficients(space, mu, order)
    s = r / space.rho
    powers = s ** np.arange(order + 1)
    value = complex(np.dot(a, powers))
    deriv = complex(np.dot(a[1:] * np.arange(1, order + 1), powers[:-1])) / space.rho
    trunc = float(abs(a[order] * powers[order]))
    return value, deriv, trunc


def eval_series(space: Space, mu: complex, r: float, order: int = SERIES_ORDER) -> complex:
    if r == 0:
        return 1.0 + 0.0j
    return series_with_derivative(space, mu, r, order)[0]


def _field(space, mu):
    k_over_rho = space.k / space.rho
    rho = space.rho
    mu = complex(mu)

    def f(r, y):
        return np.array([y[1], -k_over_rho / math.tanh(r / rho) * y[1] - mu * y[0]])

    return f


def eval_ode_grid(space: Space, mu: complex, rs, rel_tol: float = 1e-10):
    """ODE-route values on an increasing sequence of radii.

    The integrator is carried from one radius to the next. Returns
    ``(values, error_estimates)``.
    """
    rs = np.asarray(rs, dtype=float)
    if rs.ndim != 1 or np.any(rs < 0) or np.any(np.diff(rs) <= 0):
        raise DomainError("radii must be nonnegative and strictly increasing")
    cfg = IntegratorConfig(rel_tol=rel_tol, abs_tol=1e-3 * rel_tol, initial_step=1e-3 * space.rho)
    r_sw = R_SWITCH * space.rho
    values = np.empty(len(rs), dtype=complex)
    errors = np.empty(len(rs))
    v0, d0, t0 = series_with_derivative(space, mu, r_sw)
    y = np.array([v0, d0])
    r_cur, err = r_sw, t0
    f = _field(space, mu)
    for i, r in enumerate(rs):
        if r <= r_sw:
            if r == 0:
                values[i], errors[i] = 1.0, 0.0
            else:
                v, _, t = series_with_derivative(space, mu, r)
                values[i], errors[i] = v, t
            continue
        if r > r_cur:
            y, e, _ = rk_integrate(f, (r_cur, r), y, cfg)
            err += e
            r_cur = r
        values[i], errors[i] = y[0], err
    return values, errors


def eval_ode(space: Space, mu: complex, r: float, rel_tol: float = 1e-10, full_output: bool = False):
    """ODE-route value at ``r``; with ``full_output`` also the error estimate."""
    if not r > 0:
        if r == 0:
            return (1.0 + 0.0j, 0.0) if full_output else 1.0 + 0.0j
        raise DomainError(f"r must be positive, got {r!r}")
    values, errors = eval_ode_grid(space, mu, [r], rel_tol)
    if full_output:
        return complex(values[0]), float(errors[0])
    return complex(values[0])


def eval_kernel(space: Space, mu: complex, r: float, root: int = 0) -> complex:
    """Kernel-route value: the sphere average for an exponent of ``mu``.

    ``root`` picks which of the two exponents from :func:`phi_inverse` is used;
    the value does not depend on it.
    """
    if not r >= 0:
        raise DomainError(f"r must be nonnegative, got {r!r}")
    alpha = phi_inverse(space, mu)[root]
    return radialize_at_r(space, alpha, r)


def _reconcile(r, mu, kern, ode):
    diff = abs(kern - ode)
    if diff > DISAGREEMENT_TOL * max(1.0, abs(kern)):
        raise MethodDisagreement(
            f"kernel and ODE routes disagree at r={r!r}, mu={mu!r}: {kern} vs {ode}"
        )
    return EvalReport(r=float(r), mu=complex(mu), value=complex(kern), method="reconciled",
                      error_estimate=float(diff))


def evaluate(space: Space, mu: complex, r: float) -> EvalReport:
    """Reconciled value: kernel route checked against the ODE route."""
    if not r >= 0:
        raise DomainError(f"r must be nonnegative, got {r!r}")
    if r == 0:
        return EvalReport(0.0, complex(mu), 1.0 + 0.0j, "reconciled", 0.0)
    return _reconcile(r, mu, eval_kernel(space, mu, r), eval_ode(space, mu, r, EVAL_REL_TOL))


def evaluate_grid(space: Space, mu: complex, rs) -> list[EvalReport]:
    """:func:`evaluate` on an increasing grid, sharing one ODE sweep."""
    rs = np.asarray(rs, dtype=float)
    odes, _ = eval_ode_grid(space, mu, rs, EVAL_REL_TOL)
    alpha = phi_inverse(space, mu)[0]
    out = []
    for r, ode in zip(rs, odes):
        kern = radialize_at_r(space, alpha, float(r)) if r > 0 else 1.0 + 0.0j
        out.append(_reconcile(float(r), mu, kern, complex(ode)))
    return out
