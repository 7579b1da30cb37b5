"""Radial eigenfunctions of the hyperbolic Laplacian and one-radius uniqueness."""

__version__ = "0.1.0"

from .eigenfunction import EvalReport, eval_kernel, eval_ode, eval_series, evaluate
from .exceptions import (
    ConvergenceError,
    DomainError,
    HyperradialError,
    MethodDisagreement,
)
from .geometry import BallPoint, HalfSpacePoint, Space, cayley, eta_to_r, omega, r_to_eta
from .one_radius import Collision, certify_one_radius, find_collision, scan_separation
from .radialization import RadializationRequest, mc_radialize, ode_residual, radialize
from .spectral import (
    SpectralPoint,
    in_parabola,
    in_real_ray,
    parabola_boundary,
    phi,
    phi_inverse,
    strip_halfwidth,
    threshold,
)
