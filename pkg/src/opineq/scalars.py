"""Scalar refinements of the triangle inequality.

The central quantity is the segment average

    I(c, d) = integral_0^1 |s*c + (1-s)*d| ds,

which squeezes between |c+d|/2 and (|c|+|d|)/2 for all complex c, d. For
unit scalars e^{i*theta}, e^{-i*theta} the average collapses to the
refinement factor mu(theta) in [1/2, 1]; the reverse direction is governed
by gamma_t(theta) in [0, 1]. This module evaluates all of these in closed
form, provides an independent Gauss-Legendre route for I(c, d), and packages
the inequality chains as checkable reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .quadrature import gauss_legendre_01

__all__ = [
    "ScalarChainReport",
    "chain_tolerance",
    "segment_mean_abs",
    "segment_mean_abs_quadrature",
    "check_triangle_refinement",
    "check_reverse_triangle",
    "check_log_bound",
    "mu",
    "nu",
    "mu_derivative",
    "gamma",
    "SCALAR_ABS_TOL",
    "SCALAR_REL_TOL",
]

# absolute slack tolerance for scalar chains at scale <= 10, grows
# scale-relatively beyond that (see chain_tolerance)
SCALAR_ABS_TOL = 1e-10
SCALAR_REL_TOL = 1e-12

# half-width (radians) of the windows around 0, pi/2, pi (mod pi) where mu
# returns its limit value instead of evaluating the 0*inf closed form
MU_BRANCH_TOL = 1e-8

# discriminant threshold below which the segment is treated as collinear
# with the origin: 4*alpha*gamma - beta^2 <= tol * (alpha*gamma + beta^2)
COLLINEAR_DISC_TOL = 1e-14

# nu rejects arguments with 1 - sin(theta) below this (log singularity);
# mu_derivative returns its limit 0 inside the slightly wider window
NU_SIN_TOL = 1e-15
MU_DERIV_HALF_PI_TOL = 5e-8
MU_DERIV_EDGE_TOL = 1e-8

_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class ScalarChainReport:
    """One checked three-term inequality chain lhs <= mid <= rhs."""

    lhs: float
    mid: float
    rhs: float
    slack_low: float   # mid - lhs
    slack_high: float  # rhs - mid
    holds: bool


def chain_tolerance(c: complex, d: complex) -> float:
    """Slack tolerance for a scalar chain at the scale of its inputs."""
    return max(SCALAR_ABS_TOL, SCALAR_REL_TOL * max(abs(c), abs(d), 1.0))


def _chain_report(lhs: float, mid: float, rhs: float, tol: float) -> ScalarChainReport:
    slack_low = mid - lhs
    slack_high = rhs - mid
    return ScalarChainReport(
        lhs=lhs,
        mid=mid,
        rhs=rhs,
        slack_low=slack_low,
        slack_high=slack_high,
        holds=(slack_low >= -tol) and (slack_high >= -tol),
    )


def segment_mean_abs(c: complex, d: complex) -> float:
    """Closed form of I(c, d) = integral_0^1 |s*c + (1-s)*d| ds.

    The integrand is sqrt(alpha*s^2 + beta*s + gamma) with alpha = |c-d|^2,
    beta = 2*Re(conj(d)*(c-d)), gamma = |d|^2, integrated with the standard
    sqrt-of-quadratic antiderivative (asinh form). When the discriminant
    4*alpha*gamma - beta^2 vanishes the segment line passes through the
    origin and the integrand degenerates to the piecewise-linear
    sqrt(alpha)*|s - s0|, which is integrated directly.
    """
    c = complex(c)
    d = complex(d)
    big = max(abs(c), abs(d))
    if not math.isfinite(big):
        return (abs(c) + abs(d)) / 2.0  # inf/nan propagate like the endpoints
    if big > 1e70 or 0.0 < big < 1e-70:
        # the discriminant below is fourth order in the inputs; rescale by a
        # power of two (exact) so it can neither overflow nor denormalize
        shift = math.ldexp(1.0, -int(math.floor(math.log2(big))))
        return segment_mean_abs(c * shift, d * shift) / shift
    e = c - d
    alpha = abs(e) ** 2
    if alpha == 0.0:
        return abs(c)
    beta = 2.0 * (d.conjugate() * e).real
    gam = abs(d) ** 2
    disc = 4.0 * alpha * gam - beta * beta
    if disc <= COLLINEAR_DISC_TOL * (alpha * gam + beta * beta):
        s0 = -beta / (2.0 * alpha)
        root_alpha = math.sqrt(alpha)
        if s0 <= 0.0:
            return root_alpha * (0.5 - s0)
        if s0 >= 1.0:
            return root_alpha * (s0 - 0.5)
        return root_alpha * (s0 * s0 + (1.0 - s0) ** 2) / 2.0
    r1 = abs(c)
    r0 = abs(d)
    linear = ((2.0 * alpha + beta) * r1 - beta * r0) / (4.0 * alpha)
    root_disc = math.sqrt(disc)
    log_part = (
        disc
        / (8.0 * alpha**1.5)
        * (math.asinh((2.0 * alpha + beta) / root_disc) - math.asinh(beta / root_disc))
    )
    return linear + log_part


def segment_mean_abs_quadrature(c: complex, d: complex, nodes: int = 64) -> float:
    """Fixed-order Gauss-Legendre approximation of I(c, d) on [0, 1].

    Independent of the closed form; exact for smooth segments, limited to
    ~1e-3 relative accuracy when the segment passes through the origin (the
    integrand then has a kink the fixed rule cannot resolve).
    """
    nodes = int(nodes)
    if nodes < 2:
        raise ValueError(f"segment_mean_abs_quadrature: need nodes >= 2, got {nodes}")
    s, w = gauss_legendre_01(nodes)
    return float(np.sum(w * np.abs(s * complex(c) + (1.0 - s) * complex(d))))


def check_triangle_refinement(c: complex, d: complex, tol: float | None = None) -> ScalarChainReport:
    """Check |c+d|/2 <= I(c, d) <= (|c|+|d|)/2."""
    c = complex(c)
    d = complex(d)
    if tol is None:
        tol = chain_tolerance(c, d)
    lhs = abs(c + d) / 2.0
    mid = segment_mean_abs(c, d)
    rhs = (abs(c) + abs(d)) / 2.0
    return _chain_report(lhs, mid, rhs, tol)


def check_reverse_triangle(
    c: complex, d: complex, t: float, tol: float | None = None
) -> ScalarChainReport:
    """Check the reverse bound with weight r_t = min(t, 1-t):

        (|c|+|d|)/2 - ((1-t)|c| + t|d| - |(1-t)c + t*d|) / (2*r_t)
            <= |c+d|/2 <= (|c|+|d|)/2.

    The report's chain is reverse bound <= |c+d|/2 <= (|c|+|d|)/2 (the
    second link is the plain triangle inequality). `holds` additionally
    requires the equivalent convexity form

        |(1-t)c + t*d| <= (1-t)|c| + t|d| - 2*r_t*((|c|+|d|)/2 - |c+d|/2),

    which is the same inequality scaled by 2*r_t and so can never be the
    stricter of the two at a fixed tolerance.
    """
    c = complex(c)
    d = complex(d)
    if not (math.isfinite(t) and 0.0 < t < 1.0):
        raise ValueError(f"check_reverse_triangle: t must lie strictly in (0, 1), got {t!r}")
    if tol is None:
        tol = chain_tolerance(c, d)
    r_t = min(t, 1.0 - t)
    abs_c = abs(c)
    abs_d = abs(d)
    mean_abs = (abs_c + abs_d) / 2.0
    mixed = abs((1.0 - t) * c + t * d)
    lhs = mean_abs - ((1.0 - t) * abs_c + t * abs_d - mixed) / (2.0 * r_t)
    mid = abs(c + d) / 2.0
    report = _chain_report(lhs, mid, mean_abs, tol)
    equiv_holds = mixed <= (1.0 - t) * abs_c + t * abs_d - 2.0 * r_t * (mean_abs - mid) + tol
    return replace(report, holds=report.holds and equiv_holds)


def check_log_bound(x: float, tol: float = 1e-12) -> bool:
    """Check 2x/(x^2+1) <= log((1+x)/(1-x)) for 0 <= x < 1 and the reversed
    inequality for -1 < x <= 0, within `tol`."""
    if not (math.isfinite(x) and -1.0 < x < 1.0):
        raise ValueError(f"check_log_bound: need |x| < 1, got {x!r}")
    lhs = 2.0 * x / (x * x + 1.0)
    rhs = math.log1p(x) - math.log1p(-x)
    if x >= 0.0:
        return rhs >= lhs - tol
    return rhs <= lhs + tol


def _reduce_mod_pi(theta: float) -> float:
    r = math.fmod(theta, math.pi)
    if r < 0.0:
        r += math.pi
    return r


def _log_ratio(s: float, c: float) -> float:
    """log((1+s)/(1-s)) for s = sin(theta), c = cos(theta), 0 < s < 1.

    Uses 1 - s = c^2/(1+s) for s near 1, where the direct difference loses
    all significant digits.
    """
    if s < 0.9:
        return math.log1p(s) - math.log1p(-s)
    return 2.0 * math.log((1.0 + s) / abs(c))


def mu(theta: float) -> float:
    """Refinement factor mu(theta) = (2 + cos(t)*cot(t)*log((1+sin t)/(1-sin t)))/4.

    Equals I(e^{i*theta}, e^{-i*theta}); pi-periodic, decreasing on
    [0, pi/2], increasing on [pi/2, pi], with range [1/2, 1]. Returns the
    limit values exactly at the removable singularities: 1 at theta = 0
    (mod pi) and 1/2 at theta = pi/2 (mod pi).
    """
    if not math.isfinite(theta):
        raise ValueError(f"mu: theta must be finite, got {theta!r}")
    th = _reduce_mod_pi(theta)
    if th < MU_BRANCH_TOL or math.pi - th < MU_BRANCH_TOL:
        return 1.0
    if abs(th - _HALF_PI) < MU_BRANCH_TOL:
        return 0.5
    s = math.sin(th)
    c = math.cos(th)
    return 0.25 * (2.0 + (c * c / s) * _log_ratio(s, c))


def nu(theta: float) -> float:
    """nu(theta) = 4*sin(t) - 2*(sin^2(t) + 1)*log((1+sin t)/(1-sin t)).

    Defined on (0, pi) away from pi/2; nonpositive everywhere there, which
    is what pins down the monotonicity of mu.
    """
    if not (math.isfinite(theta) and 0.0 < theta < math.pi):
        raise ValueError(f"nu: theta must lie in (0, pi), got {theta!r}")
    s = math.sin(theta)
    if 1.0 - s < NU_SIN_TOL:
        raise ValueError(
            f"nu: log term singular at theta = pi/2 (1 - sin(theta) = {1.0 - s:.3e}); "
            "evaluate one-sided"
        )
    c = math.cos(theta)
    return 4.0 * s - 2.0 * (s * s + 1.0) * _log_ratio(s, c)


def mu_derivative(theta: float) -> float:
    """d(mu)/d(theta) = cos(t)/(8*sin^2(t)) * nu(t) on (0, pi).

    Nonpositive on (0, pi/2], nonnegative on [pi/2, pi). Returns the limit 0
    inside a 5e-8 window of pi/2, where the factors form an unresolvable
    0*inf in double precision.
    """
    if not math.isfinite(theta):
        raise ValueError(f"mu_derivative: theta must be finite, got {theta!r}")
    if not (MU_DERIV_EDGE_TOL < theta < math.pi - MU_DERIV_EDGE_TOL):
        raise ValueError(
            f"mu_derivative: theta must stay in (0, pi) at least {MU_DERIV_EDGE_TOL} "
            f"away from the endpoints, got {theta!r}"
        )
    if abs(theta - _HALF_PI) < MU_DERIV_HALF_PI_TOL:
        return 0.0
    s = math.sin(theta)
    return math.cos(theta) / (8.0 * s * s) * nu(theta)


def gamma(t: float, theta: float) -> float:
    """Reverse-direction factor

        gamma_t(theta) = 1 - (1 - sqrt(cos^2 th + (2t-1)^2 sin^2 th)) / (2*r_t),

    with r_t = min(t, 1-t), for t strictly inside (0, 1). Symmetric under
    t -> 1-t, pi-periodic in theta, with range [0, 1]; at t = 1/2 it equals
    |cos(theta)| exactly.
    """
    if not (math.isfinite(t) and 0.0 < t < 1.0):
        raise ValueError(f"gamma: t must lie strictly in (0, 1), got {t!r}")
    if not math.isfinite(theta):
        raise ValueError(f"gamma: theta must be finite, got {theta!r}")
    th = _reduce_mod_pi(theta)
    s = math.sin(th)
    c = math.cos(th)
    u = 2.0 * t - 1.0
    root = math.sqrt(c * c + u * u * s * s)
    r_t = min(t, 1.0 - t)
    val = 1.0 - (1.0 - root) / (2.0 * r_t)
    # round-off at theta ~ pi/2 can stray a few ulps outside the true range
    return min(1.0, max(0.0, val))
