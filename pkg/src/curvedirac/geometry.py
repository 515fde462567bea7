"""Differential geometry of axially symmetric bumps on a flat sheet.

Two deformation profiles are supported, a Gaussian bump z = A exp(-r^2/b^2)
and a volcano bump z = A r exp(-r^2/b^2), plus an exactly flat reference.
The induced spatial metric is ds^2 = (1 + alpha f(r)) dr^2 + r^2 dtheta^2
with alpha = A^2/b^2, and everything else (Fermi factor, pseudo-gauge
potential, curvature, Christoffel symbols, geometric phase) follows from
f(r) in closed form.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.integrate import quad

GAUSSIAN = "gaussian"
VOLCANO = "volcano"
FLAT = "flat"

_KINDS = (GAUSSIAN, VOLCANO, FLAT)


@dataclass(frozen=True)
class SurfaceSpec:
    """A bump geometry: profile kind plus amplitude A and width b.

    The perturbation strength alpha = A^2/b^2 is always derived from the
    stored amplitude and width, never set independently.  A flat spec
    ignores amplitude and width entirely (f is identically zero).
    """

    kind: str
    amplitude: float = 1.0
    width: float = 1.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown surface kind {self.kind!r}")
        if self.kind != FLAT:
            if not (self.amplitude > 0):
                raise ValueError("amplitude must be positive")
            if not (self.width > 0):
                raise ValueError("width must be positive")

    @property
    def alpha(self):
        if self.kind == FLAT:
            return 0.0
        return self.amplitude ** 2 / self.width ** 2

    @classmethod
    def from_alpha(cls, kind, alpha):
        """Build a spec with a given alpha by setting width=1, amplitude=sqrt(alpha)."""
        if alpha < 0:
            raise ValueError("alpha must be non-negative")
        if alpha == 0.0:
            return cls(FLAT)
        return cls(kind, amplitude=math.sqrt(alpha), width=1.0)


@dataclass(frozen=True)
class GeometryFields:
    """All local geometry values at one radius (or one array of radii)."""

    r: object
    f: object
    f_prime: object
    fermi_factor: object
    pseudo_gauge: object
    curvature: object


def profile_height(spec, r):
    """Height z(r) of the surface above the flat sheet."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    if spec.kind == GAUSSIAN:
        z = spec.amplitude * np.exp(-(r / spec.width) ** 2)
    elif spec.kind == VOLCANO:
        z = spec.amplitude * r * np.exp(-(r / spec.width) ** 2)
    else:
        z = np.zeros_like(r)
    return z if z.ndim else float(z)


def metric_deformation(spec, r):
    """Return (f, f') for the metric deformation f(r) = z'(r)^2 / alpha.

    Both values are evaluated from fully expanded polynomial-times-
    exponential forms, so they stay regular at r = 0 and at the volcano's
    derivative zero r = b/sqrt(2).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    b = spec.width
    u = (r / b) ** 2
    damp = np.exp(-2.0 * u)
    if spec.kind == GAUSSIAN:
        f = 4.0 * u * damp
        f_prime = (8.0 * r / b ** 2) * (1.0 - 2.0 * u) * damp
    elif spec.kind == VOLCANO:
        f = b ** 2 * (1.0 - 2.0 * u) ** 2 * damp
        f_prime = -4.0 * r * (3.0 - 8.0 * u + 4.0 * u ** 2) * damp
    else:
        f = np.zeros_like(r)
        f_prime = np.zeros_like(r)
    if f.ndim:
        return f, f_prime
    return float(f), float(f_prime)


def fermi_factor(spec, r):
    """F(r) = (1 + alpha f(r))^(-1/2), the local Fermi-velocity factor."""
    f, _ = metric_deformation(spec, r)
    return (1.0 + spec.alpha * np.asarray(f)) ** -0.5 if np.ndim(f) else (1.0 + spec.alpha * f) ** -0.5


def fermi_factor_prime(spec, r):
    """dF/dr, from the closed form F' = -alpha f' (1 + alpha f)^(-3/2) / 2."""
    f, fp = metric_deformation(spec, r)
    return -0.5 * spec.alpha * fp * (1.0 + spec.alpha * np.asarray(f)) ** -1.5


def pseudo_gauge(spec, r):
    """Pseudo-gauge potential A_theta(r) = (1 - F(r)) / (2 r).

    The difference 1 - F is evaluated through expm1/log1p so small
    deformations do not lose precision.  At r = 0 the Gaussian value is the
    series limit 0; the volcano diverges there and raises instead.
    """
    scalar = np.ndim(r) == 0
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    at_zero = r == 0.0
    if np.any(at_zero):
        if spec.kind == VOLCANO:
            raise ValueError("pseudo_gauge diverges at r = 0 for the volcano surface")
        out = np.zeros_like(r)
        pos = ~at_zero
        if np.any(pos):
            out[pos] = pseudo_gauge(spec, r[pos])
        return float(out[0]) if scalar else out
    f, _ = metric_deformation(spec, r)
    one_minus_F = -np.expm1(-0.5 * np.log1p(spec.alpha * np.asarray(f)))
    val = one_minus_F / (2.0 * r)
    return float(val[0]) if scalar else val


def pseudo_gauge_prime(spec, r):
    """dA_theta/dr = -F'/(2r) - A_theta/r."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    return -fermi_factor_prime(spec, r) / (2.0 * r) - pseudo_gauge(spec, r) / r


def curvature_scalar(spec, r):
    """Scalar curvature R(r) = -alpha f'(r) / ( r (1 + alpha f(r))^2 ).

    At r = 0 the removable singularity is replaced by the analytic limit:
    f' ~ (8/b^2) r for the Gaussian and f' ~ -12 r for the volcano, giving
    R(0) = -8 alpha / b^2 and R(0) = +12 alpha / (1 + alpha b^2)^2.
    """
    scalar = np.ndim(r) == 0
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    alpha = spec.alpha
    out = np.empty_like(r)
    at_zero = r == 0.0
    if np.any(at_zero):
        if spec.kind == GAUSSIAN:
            out[at_zero] = -8.0 * alpha / spec.width ** 2
        elif spec.kind == VOLCANO:
            out[at_zero] = 12.0 * alpha / (1.0 + alpha * spec.width ** 2) ** 2
        else:
            out[at_zero] = 0.0
    pos = ~at_zero
    if np.any(pos):
        rp = r[pos]
        f, fp = metric_deformation(spec, rp)
        out[pos] = -alpha * np.asarray(fp) / (rp * (1.0 + alpha * np.asarray(f)) ** 2)
    return float(out[0]) if scalar else out


def christoffel_symbols(spec, r):
    """Non-trivial Christoffel symbols (Gamma^r_rr, Gamma^r_thth, Gamma^th_rth)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    f, fp = metric_deformation(spec, r)
    opa = 1.0 + spec.alpha * np.asarray(f)
    g_rrr = spec.alpha * np.asarray(fp) / (2.0 * opa)
    g_rtt = -r / opa
    g_trt = 1.0 / r
    return g_rrr, g_rtt, g_trt


def geometric_phase(spec, r, r_lower):
    """mu(r) = exp(-integral of A_theta from r_lower to r), by adaptive quadrature.

    Absolute quadrature tolerance is 1e-10.  For the Gaussian surface the
    integrand is regular at the origin so r_lower = 0 is allowed; the
    volcano integral diverges logarithmically there and raises.
    """
    if r_lower < 0 or r < r_lower:
        raise ValueError("need 0 <= r_lower <= r")
    if spec.kind == VOLCANO and r_lower == 0.0:
        raise ValueError("volcano pseudo-gauge integral diverges at r_lower = 0")
    if spec.kind == FLAT or r == r_lower:
        return 1.0
    val, _ = quad(lambda s: pseudo_gauge(spec, s), r_lower, r,
                  epsabs=1e-10, epsrel=1e-12, limit=200)
    return math.exp(-val)


def geometric_phase_profile(spec, r_values, r_lower):
    """mu at every radius of an increasing sequence, sharing one integral.

    Accumulates per-interval quadratures of A_theta instead of integrating
    from r_lower anew for each point; same tolerances as geometric_phase.
    """
    r_values = np.asarray(r_values, dtype=float)
    if r_values.size and (r_lower < 0 or r_values[0] < r_lower):
        raise ValueError("need 0 <= r_lower <= r for every r")
    if np.any(np.diff(r_values) <= 0):
        raise ValueError("radii must be strictly increasing")
    if spec.kind == VOLCANO and r_lower == 0.0:
        raise ValueError("volcano pseudo-gauge integral diverges at r_lower = 0")
    if spec.kind == FLAT:
        return np.ones_like(r_values)
    out = np.empty_like(r_values)
    acc = 0.0
    prev = r_lower
    for i, ri in enumerate(r_values):
        if ri > prev:
            val, _ = quad(lambda s: pseudo_gauge(spec, s), prev, ri,
                          epsabs=1e-10, epsrel=1e-12, limit=200)
            acc += val
        out[i] = math.exp(-acc)
        prev = ri
    return out


def geometry_fields(spec, r):
    """Bundle f, f', F, A_theta and R at the given radii."""
    f, fp = metric_deformation(spec, r)
    return GeometryFields(
        r=r,
        f=f,
        f_prime=fp,
        fermi_factor=fermi_factor(spec, r),
        pseudo_gauge=pseudo_gauge(spec, r),
        curvature=curvature_scalar(spec, r),
    )
