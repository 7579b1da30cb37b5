"""Shared numerical kernels.

Gauss-Legendre rules, an adaptive Dormand-Prince 5(4) integrator for complex
state vectors, damped complex Newton iteration and central differences.
Everything here is deterministic and free of module-level mutable state
(the quadrature cache only ever stores immutable rules).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .exceptions import (
    DomainError,
    MaxStepsExceeded,
    NewtonFailure,
    StepSizeUnderflow,
)

__all__ = [
    "QuadratureRule",
    "IntegratorConfig",
    "gauss_legendre",
    "integrate_panels",
    "dopri_step",
    "rk_fixed",
    "rk_integrate",
    "newton_complex",
    "central_diff",
    "central_diff2",
]


# ----------------------------------------------------------------------------
# Gauss-Legendre quadrature
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def integrate(self, f, a=-1.0, b=1.0):
        """Apply the rule to ``f`` on ``[a, b]`` (f must accept arrays)."""
        half = 0.5 * (b - a)
        x = 0.5 * (a + b) + half * self.nodes
        return half * np.dot(self.weights, f(x))


def _legendre_with_derivative(n, x):
    # three-term recurrence for P_n and P_{n-1}
    p_prev = np.ones_like(x)
    p = x.copy()
    for j in range(2, n + 1):
        p_prev, p = p, ((2 * j - 1) * x * p - (j - 1) * p_prev) / j
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> QuadratureRule:
    """Nodes and weights of the ``order``-point Gauss-Legendre rule on [-1, 1].

    Roots of P_n are polished by Newton's method starting from Tricomi's
    asymptotic guesses; weights follow from 2 / ((1 - x^2) P_n'(x)^2).
    """
    if not isinstance(order, (int, np.integer)) or not 2 <= order <= 512:
        raise DomainError(f"quadrature order must be an integer in [2, 512], got {order!r}")
    n = int(order)
    i = np.arange(1, n + 1)
    theta = math.pi * (i - 0.25) / (n + 0.5)
    x = np.cos(theta) * (1.0 - (n - 1) / (8.0 * n**3))
    for _ in range(100):
        p, dp = _legendre_with_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    _, dp = _legendre_with_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # enforce exact symmetry; the Newton iterates agree to rounding anyway
    x = np.sort(x)
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadratureRule(nodes=x, weights=w, order=n)


def integrate_panels(f, breakpoints, rule: QuadratureRule):
    """Composite Gauss-Legendre over consecutive panels.

    ``f`` is called once on the concatenated node array, so it should be
    vectorised. Returns the integral and the integral of ``|f|``.
    """
    b = np.asarray(breakpoints, dtype=float)
    a0, a1 = b[:-1], b[1:]
    half = 0.5 * (a1 - a0)
    mid = 0.5 * (a1 + a0)
    x = (mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel()
    w = (half[:, None] * rule.weights[None, :]).ravel()
    fx = f(x)
    return np.dot(w, fx), np.dot(w, np.abs(fx))


# ----------------------------------------------------------------------------
# Dormand-Prince 5(4)
# ----------------------------------------------------------------------------

_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_E = _B5 - _B4


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_steps: int = 200_000
    initial_step: float = 1e-3

    def __post_init__(self):
        if not self.rel_tol >= 1e-13:
            raise DomainError(f"rel_tol must be >= 1e-13, got {self.rel_tol}")
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if self.max_steps < 1:
            raise DomainError("max_steps must be positive")
        if not self.initial_step > 0:
            raise DomainError("initial_step must be positive")


def dopri_step(f, r, y, h, k1=None):
    """One Dormand-Prince step. Returns (y5, local_error, k7).

    ``k7`` is f at the new point (FSAL), reusable as the next ``k1``.
    """
    k = [None] * 7
    k[0] = f(r, y) if k1 is None else k1
    for s in range(1, 7):
        dy = sum(a * k[j] for j, a in enumerate(_A[s]) if a != 0.0)
        k[s] = f(r + _C[s] * h, y + h * dy)
    y5 = y + h * sum(b * k[j] for j, b in enumerate(_B5) if b != 0.0)
    err = h * sum(e * k[j] for j, e in enumerate(_E))
    return y5, err, k[6]


def rk_fixed(f, span, y0, n_steps):
    """Fixed-step Dormand-Prince (5th-order solution); for convergence checks."""
    ra, rb = span
    h = (rb - ra) / n_steps
    y = np.asarray(y0, dtype=complex)
    for i in range(n_steps):
        y, _, _ = dopri_step(f, ra + i * h, y, h)
    return y


def _err_norm(err, y_old, y_new, cfg):
    scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y_old), np.abs(y_new))
    # complex components count as two real components
    ratio = np.concatenate([err.real / scale, err.imag / scale])
    return math.sqrt(float(np.mean(ratio * ratio)))


def rk_integrate(
    f: Callable[[float, np.ndarray], np.ndarray],
    span: tuple[float, float],
    y0,
    cfg: IntegratorConfig = IntegratorConfig(),
):
    """Integrate ``y' = f(r, y)`` over ``span`` with complex state.

    Adaptive Dormand-Prince 5(4) with a PI step-size controller and local
    extrapolation. Returns ``(y_final, error_estimate, steps)`` where the
    error estimate is the sum of the accepted local error magnitudes.
    """
    ra, rb = float(span[0]), float(span[1])
    if not ra < rb:
        raise DomainError(f"integration span must satisfy r_a < r_b, got {span}")
    y = np.array(y0, dtype=complex)
    r = ra
    h = min(cfg.initial_step, rb - ra)
    k1 = f(r, y)
    err_prev = 1e-4
    global_err = 0.0
    steps = 0
    rejected_last = False
    alpha, beta = 0.7 / 5, 0.4 / 5
    while r < rb:
        if steps >= cfg.max_steps:
            raise MaxStepsExceeded(f"max_steps={cfg.max_steps} exceeded at r={r!r}", r)
        if r + h > rb or rb - (r + h) < 1e-12 * h:
            h = rb - r
        if h <= 1e-14 * max(1.0, abs(r)):
            raise StepSizeUnderflow(f"step size underflow at r={r!r} (h={h:.3e})", r)
        y_new, err, k7 = dopri_step(f, r, y, h, k1)
        en = _err_norm(err, y, y_new, cfg)
        if not np.isfinite(en):
            h *= 0.2
            rejected_last = True
            continue
        if en <= 1.0:
            r = rb if h == rb - r else r + h
            y = y_new
            k1 = k7
            steps += 1
            global_err += float(np.max(np.abs(err)))
            fac = 0.9 * max(en, 1e-10) ** (-alpha) * err_prev**beta
            fac = min(5.0, max(0.2, fac))
            if rejected_last:
                fac = min(fac, 1.0)
            err_prev = max(en, 1e-4)
            rejected_last = False
            h *= fac
        else:
            fac = max(0.2, 0.9 * en ** (-1 / 5))
            h *= fac
            rejected_last = True
    return y, global_err, steps


# ----------------------------------------------------------------------------
# Newton iteration and finite differences
# ----------------------------------------------------------------------------


def central_diff(f, x, h):
    return (f(x + h) - f(x - h)) / (2 * h)


def central_diff2(f, x, h, fx=None):
    if fx is None:
        fx = f(x)
    return (f(x + h) - 2 * fx + f(x - h)) / (h * h)


def newton_complex(
    g: Callable[[complex], complex],
    z0: complex,
    tol: float = 1e-12,
    max_iter: int = 60,
    fd_step: float = 1e-6,
    max_halvings: int = 30,
    max_step: float | None = None,
) -> complex:
    """Damped Newton iteration for an analytic ``g`` with |g(z)| < tol as target.

    The derivative is a central difference along the real axis, which for an
    analytic function equals the complex derivative. Steps are halved until
    |g| decreases; ``max_step`` optionally caps the length of a full step.
    Raises :class:`NewtonFailure` carrying the best iterate.
    """
    if not tol >= 1e-12:
        raise DomainError(f"tol must be >= 1e-12, got {tol}")
    z = complex(z0)
    gz = complex(g(z))
    best, best_res = z, abs(gz)
    for _ in range(max_iter):
        if abs(gz) < tol:
            return z
        dg = (complex(g(z + fd_step)) - complex(g(z - fd_step))) / (2 * fd_step)
        if dg == 0 or not np.isfinite(abs(dg)):
            raise NewtonFailure(f"vanishing derivative at z={z}", best, best_res)
        step = gz / dg
        if max_step is not None and abs(step) > max_step:
            step *= max_step / abs(step)
        lam = 1.0
        for _ in range(max_halvings):
            z_try = z - lam * step
            g_try = complex(g(z_try))
            if np.isfinite(abs(g_try)) and abs(g_try) < abs(gz):
                break
            lam *= 0.5
        else:
            raise NewtonFailure(f"line search stalled at z={z}", best, best_res)
        z, gz = z_try, g_try
        if abs(gz) < best_res:
            best, best_res = z, abs(gz)
    if abs(gz) < tol:
        return z
    raise NewtonFailure(
        f"no convergence in {max_iter} iterations (best |g|={best_res:.3e})", best, best_res
    )
