"""Operator-level inequality checks.

Every check reduces to the scalar refinement through the polar
decomposition A = U |A|: with one SVD A = W diag(sigma) V*, the two
absolute-value powers are |A|^p = V diag(sigma^p) V* and
|A*|^p = W diag(sigma^p) W*, and the auxiliary vectors |A|^v x and
|A|^(1-v) U* y live in the V-coordinate frame as sigma^v (V* x) and
sigma^(1-v) (W* y). The chains checked here:

  * mixed Schwarz:   |<Ax,y>| <= mu(theta) * sqrt(<|A|^2v x,x><|A*|^2(1-v) y,y>)
                                <= the unrefined bound,
  * numerical radius, per unit vector: the four-term proof chain ending in
    mu(theta_x)/2 * || |A|^2v + |A*|^2(1-v) ||,
  * reverse Cauchy-Schwarz: 0 <= gamma_t(theta) ||x|| ||y|| <= |<x,y>|,
  * geometric-mean lower bound: cos(theta_x) <(|A|^2v # |A*|^2(1-v)) x, x>
    <= |<Ax,x>| with an exact-equality last link.

Inner products are linear in the first slot: <u, w> = w* u.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .linalg import _as_square, _as_vector, geometric_mean, spectral_norm, svd
from .scalars import gamma, mu

__all__ = [
    "AngleProfile",
    "OperatorChainReport",
    "check_mixed_schwarz",
    "check_radius_chain",
    "check_reverse_cs",
    "check_geomean_lower",
    "kittaneh_bound",
    "refined_radius_bound",
    "angle_profile",
    "OPERATOR_SLACK_TOL",
]

OPERATOR_SLACK_TOL = 1e-8

# |<x,x> - 1| allowed when an operation requires a unit vector
UNIT_NORM_TOL = 1e-8

# auxiliary vectors shorter than this (relative to the natural scale) leave
# theta undefined; such trials are reported, not failed
_AUX_DEGENERATE_TOL = 1e-12

_MASK64 = (1 << 64) - 1
_PROFILE_STREAM = 0x70726F66  # fixed second key word for angle_profile draws


@dataclass(frozen=True)
class OperatorChainReport:
    """A checked inequality chain over named terms.

    `terms` lists each link of the chain in order; `worst_slack` is the most
    negative adjacent gap (equality links contribute the negated absolute
    gap). When the defining angle is degenerate the report is marked
    `angle_undefined` and carries no verdict.
    """

    terms: tuple[tuple[str, float], ...]
    holds: bool
    worst_slack: float
    input_digest: str
    angle_undefined: bool = False

    @property
    def outcome(self) -> str:
        if self.angle_undefined:
            return "angle-undefined"
        return "pass" if self.holds else "fail"


@dataclass(frozen=True)
class AngleProfile:
    """Empirical distribution of theta_x = angle(|A|^v x, |A|^(1-v) U* x)
    over sampled unit vectors x. `histogram` holds (bin center, count) pairs
    over [0, pi/2]; sampled hypothesis only - the true extrema over the unit
    sphere may lie outside [theta_min, theta_max]."""

    v: float
    samples: int
    skipped: int
    theta_min: float
    theta_max: float
    histogram: tuple[tuple[float, int], ...]


def _content_digest(*parts) -> str:
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        if isinstance(part, np.ndarray):
            h.update(np.ascontiguousarray(part).tobytes())
        else:
            h.update(repr(part).encode())
    return h.hexdigest()


def _validate_v(v: float, who: str) -> float:
    if not (np.isfinite(v) and 0.0 <= v <= 1.0):
        raise ValueError(f"{who}: weight v must lie in [0, 1], got {v!r}")
    return float(v)


def _require_unit(x: np.ndarray, who: str) -> np.ndarray:
    n = float(np.linalg.norm(x))
    if abs(n - 1.0) > UNIT_NORM_TOL:
        raise ValueError(f"{who}: expected a unit vector, got norm {n!r}")
    return x


def _aux_coefficients(sigma: np.ndarray, Vh: np.ndarray, Wh: np.ndarray, v: float, x, y):
    """Coefficients of |A|^v x and |A|^(1-v) U* y in the V frame."""
    a1 = sigma**v * (Vh @ x)
    a2 = sigma ** (1.0 - v) * (Wh @ y)
    return a1, a2


def _aux_tol(sigma: np.ndarray, p: float) -> float:
    top = float(sigma[0]) if sigma.size else 0.0
    return _AUX_DEGENERATE_TOL * max(1.0, top**p if top > 0.0 else 0.0)


def _chain(terms, tol_eff, equality_gaps=()):
    values = [value for _, value in terms]
    slacks = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    worst = min(slacks) if slacks else 0.0
    holds = worst >= -tol_eff
    for gap, gap_tol in equality_gaps:
        worst = min(worst, -abs(gap))
        holds = holds and abs(gap) <= gap_tol
    return holds, worst


def check_mixed_schwarz(A, x, y, v: float, tol: float = OPERATOR_SLACK_TOL) -> OperatorChainReport:
    """Refined mixed Schwarz chain for |<Ax, y>|.

    terms = [|<Ax,y>|, mu(theta)*B, B] with
    B = sqrt(<|A|^2v x, x> <|A*|^2(1-v) y, y>) and
    theta = angle(|A|^v x, |A|^(1-v) U* y). The last link is the unrefined
    bound. Degenerate auxiliary vectors give an angle-undefined report.
    """
    A = _as_square(A, "check_mixed_schwarz")
    xv = _as_vector(x, "check_mixed_schwarz")
    yv = _as_vector(y, "check_mixed_schwarz")
    v = _validate_v(v, "check_mixed_schwarz")
    if np.linalg.norm(xv) == 0.0 or np.linalg.norm(yv) == 0.0:
        raise ValueError("check_mixed_schwarz: x and y must be nonzero")
    digest = f"n={A.shape[0]};v={v:g};{_content_digest(A, xv, yv, v)}"

    W, sigma, V = svd(A)
    a1, a2 = _aux_coefficients(sigma, V.conj().T, W.conj().T, v, xv, yv)
    n1 = float(np.linalg.norm(a1))
    n2 = float(np.linalg.norm(a2))
    t1 = abs(np.vdot(yv, A @ xv))
    if n1 <= _aux_tol(sigma, v) * np.linalg.norm(xv) or n2 <= _aux_tol(sigma, 1.0 - v) * np.linalg.norm(yv):
        return OperatorChainReport(
            terms=(("abs_inner", t1),),
            holds=True,
            worst_slack=0.0,
            input_digest=digest,
            angle_undefined=True,
        )
    theta = math.acos(min(1.0, abs(np.vdot(a2, a1)) / (n1 * n2)))
    base = n1 * n2
    terms = (
        ("abs_inner", t1),
        ("refined_schwarz", mu(theta) * base),
        ("kato_schwarz", base),
    )
    holds, worst = _chain(terms, tol * max(1.0, base))
    return OperatorChainReport(terms=terms, holds=holds, worst_slack=worst, input_digest=digest)


def check_radius_chain(A, v: float, x, tol: float = OPERATOR_SLACK_TOL) -> OperatorChainReport:
    """Per-unit-vector numerical radius chain.

    terms = [|<Ax,x>|, mu(theta_x)*sqrt(q1*q2), mu(theta_x)/2*(q1+q2),
    mu(theta_x)/2*||S||] with q1 = <|A|^2v x,x>, q2 = <|A*|^2(1-v) x,x> and
    S = |A|^2v + |A*|^2(1-v). The middle step is the arithmetic-geometric
    mean inequality; x must be a unit vector.
    """
    A = _as_square(A, "check_radius_chain")
    xv = _require_unit(_as_vector(x, "check_radius_chain"), "check_radius_chain")
    v = _validate_v(v, "check_radius_chain")
    digest = f"n={A.shape[0]};v={v:g};{_content_digest(A, xv, v)}"

    W, sigma, V = svd(A)
    Vh = V.conj().T
    Wh = W.conj().T
    a1, a2 = _aux_coefficients(sigma, Vh, Wh, v, xv, xv)
    n1 = float(np.linalg.norm(a1))
    n2 = float(np.linalg.norm(a2))
    t1 = abs(np.vdot(xv, A @ xv))
    if n1 <= _aux_tol(sigma, v) or n2 <= _aux_tol(sigma, 1.0 - v):
        return OperatorChainReport(
            terms=(("abs_quadratic_form", t1),),
            holds=True,
            worst_slack=0.0,
            input_digest=digest,
            angle_undefined=True,
        )
    theta = math.acos(min(1.0, abs(np.vdot(a2, a1)) / (n1 * n2)))
    m = mu(theta)
    S = (V * sigma ** (2.0 * v)) @ Vh + (W * sigma ** (2.0 * (1.0 - v))) @ Wh
    S = (S + S.conj().T) / 2.0
    terms = (
        ("abs_quadratic_form", t1),
        ("refined_schwarz", m * n1 * n2),
        ("arithmetic_mean", m / 2.0 * (n1 * n1 + n2 * n2)),
        ("operator_norm_bound", m / 2.0 * spectral_norm(S)),
    )
    holds, worst = _chain(terms, tol * max(1.0, n1 * n2))
    return OperatorChainReport(terms=terms, holds=holds, worst_slack=worst, input_digest=digest)


def check_reverse_cs(
    x, y, t: float, tol: float = OPERATOR_SLACK_TOL, equality_tol: float = 1e-12
) -> OperatorChainReport:
    """Reverse Cauchy-Schwarz chain 0 <= gamma_t(theta) ||x|| ||y|| <= |<x,y>|.

    Also verifies the sharpness relation at t = 1/2, where
    gamma_(1/2)(theta) ||x|| ||y|| recovers |<x,y>| exactly (within
    equality_tol * ||x|| ||y||) by the definition of the angle.
    """
    xv = _as_vector(x, "check_reverse_cs")
    yv = _as_vector(y, "check_reverse_cs")
    if xv.shape != yv.shape:
        raise ValueError(f"check_reverse_cs: shape mismatch {xv.shape} vs {yv.shape}")
    nx = float(np.linalg.norm(xv))
    ny = float(np.linalg.norm(yv))
    if nx == 0.0 or ny == 0.0:
        raise ValueError("check_reverse_cs: x and y must be nonzero")
    if not (np.isfinite(t) and 0.0 < t < 1.0):
        raise ValueError(f"check_reverse_cs: t must lie strictly in (0, 1), got {t!r}")
    digest = f"n={xv.size};t={t:g};{_content_digest(xv, yv, t)}"

    inner = abs(np.vdot(yv, xv))
    prod = nx * ny
    theta = math.acos(min(1.0, inner / prod))
    terms = (
        ("zero", 0.0),
        ("reverse_bound", gamma(t, theta) * prod),
        ("abs_inner", inner),
    )
    sharp_gap = gamma(0.5, theta) * prod - inner
    holds, worst = _chain(
        terms, tol * max(1.0, prod), equality_gaps=((sharp_gap, equality_tol * max(1.0, prod)),)
    )
    return OperatorChainReport(terms=terms, holds=holds, worst_slack=worst, input_digest=digest)


def check_geomean_lower(
    A, v: float, x, tol: float = OPERATOR_SLACK_TOL, equality_tol: float = 1e-10
) -> OperatorChainReport:
    """Geometric-mean lower bound on |<Ax, x>| for invertible A.

    terms = [cos(theta_x) <G x, x>, cos(theta_x)*sqrt(q1*q2), |<Ax,x>|] with
    G = |A|^2v # |A*|^2(1-v). The first link is <A#B x,x> <=
    sqrt(<Ax,x><Bx,x>); the last is an exact equality by the definition of
    theta_x and is verified two-sided within equality_tol.
    """
    A = _as_square(A, "check_geomean_lower")
    xv = _require_unit(_as_vector(x, "check_geomean_lower"), "check_geomean_lower")
    v = _validate_v(v, "check_geomean_lower")
    digest = f"n={A.shape[0]};v={v:g};{_content_digest(A, xv, v)}"

    W, sigma, V = svd(A)
    Vh = V.conj().T
    Wh = W.conj().T
    P = (V * sigma ** (2.0 * v)) @ Vh
    P = (P + P.conj().T) / 2.0
    Q = (W * sigma ** (2.0 * (1.0 - v))) @ Wh
    Q = (Q + Q.conj().T) / 2.0
    try:
        G = geometric_mean(P, Q, 0.5)
    except ValueError as err:
        raise ValueError(
            "check_geomean_lower: needs |A|^2v and |A*|^2(1-v) positive definite "
            f"(invertible A): {err}"
        ) from err

    a1, a2 = _aux_coefficients(sigma, Vh, Wh, v, xv, xv)
    n1 = float(np.linalg.norm(a1))
    n2 = float(np.linalg.norm(a2))
    t3 = abs(np.vdot(xv, A @ xv))
    if n1 <= _aux_tol(sigma, v) or n2 <= _aux_tol(sigma, 1.0 - v):
        return OperatorChainReport(
            terms=(("abs_quadratic_form", t3),),
            holds=True,
            worst_slack=0.0,
            input_digest=digest,
            angle_undefined=True,
        )
    cos_theta = min(1.0, abs(np.vdot(a2, a1)) / (n1 * n2))
    t1 = cos_theta * float(np.vdot(xv, G @ xv).real)
    t2 = cos_theta * n1 * n2
    terms = (
        ("geomean_form", t1),
        ("schwarz_form", t2),
        ("abs_quadratic_form", t3),
    )
    scale = max(1.0, n1 * n2)
    holds, worst = _chain(terms[:2], tol * scale, equality_gaps=((t3 - t2, equality_tol * scale),))
    return OperatorChainReport(terms=terms, holds=holds, worst_slack=worst, input_digest=digest)


def kittaneh_bound(A) -> float:
    """Upper bound w(A) <= || |A| + |A*| || / 2, itself at most ||A||."""
    W, sigma, V = svd(A)
    absA = (V * sigma) @ V.conj().T
    absAstar = (W * sigma) @ W.conj().T
    total = absA + absAstar
    return 0.5 * spectral_norm((total + total.conj().T) / 2.0)


def refined_radius_bound(A, v: float, theta_ref: float) -> float:
    """mu(theta_ref)/2 * || |A|^2v + |A*|^2(1-v) ||.

    Valid as a numerical radius bound only under the hypothesis that
    theta_ref lower-bounds theta_x over ALL unit vectors; this function does
    not verify the hypothesis (pair it with an AngleProfile, sampled
    hypothesis only). theta_ref must lie in [0, pi/2]; beyond pi/2 the
    mirrored branch is degenerate under the modulus angle. At theta_ref = 0
    this reduces to the v-weighted version of the Kittaneh bound.
    """
    A = _as_square(A, "refined_radius_bound")
    v = _validate_v(v, "refined_radius_bound")
    if not (np.isfinite(theta_ref) and 0.0 <= theta_ref <= math.pi / 2.0 + 1e-12):
        raise ValueError(
            f"refined_radius_bound: theta_ref must lie in [0, pi/2], got {theta_ref!r}"
        )
    W, sigma, V = svd(A)
    S = (V * sigma ** (2.0 * v)) @ V.conj().T + (W * sigma ** (2.0 * (1.0 - v))) @ W.conj().T
    S = (S + S.conj().T) / 2.0
    return mu(theta_ref) / 2.0 * spectral_norm(S)


def angle_profile(A, v: float, samples: int, seed: int, bins: int = 36) -> AngleProfile:
    """Sample theta_x over Haar-uniform unit vectors x (Gaussian normalize).

    Deterministic for a fixed seed. Vectors whose auxiliary images are
    degenerate are skipped and counted; if every sample degenerates the
    profile is empty and an error is raised.
    """
    A = _as_square(A, "angle_profile")
    v = _validate_v(v, "angle_profile")
    samples = int(samples)
    if samples < 1:
        raise ValueError(f"angle_profile: need samples >= 1, got {samples}")
    bins = int(bins)
    if bins < 1:
        raise ValueError(f"angle_profile: need bins >= 1, got {bins}")

    n = A.shape[0]
    W, sigma, V = svd(A)
    rng = np.random.Generator(
        np.random.Philox(key=np.array([seed & _MASK64, _PROFILE_STREAM], dtype=np.uint64))
    )
    Z = rng.normal(size=(samples, n)) + 1j * rng.normal(size=(samples, n))
    norms = np.linalg.norm(Z, axis=1)
    norms[norms == 0.0] = 1.0
    X = Z / norms[:, None]
    # row i of X @ conj(V) is V* x_i; scale columns by the sigma powers
    A1 = (X @ V.conj()) * sigma**v
    A2 = (X @ W.conj()) * sigma ** (1.0 - v)
    n1 = np.linalg.norm(A1, axis=1)
    n2 = np.linalg.norm(A2, axis=1)
    defined = (n1 > _aux_tol(sigma, v)) & (n2 > _aux_tol(sigma, 1.0 - v))
    skipped = int(samples - defined.sum())
    if not defined.any():
        raise ValueError("angle_profile: profile empty (every sampled angle was undefined)")
    inner = np.abs(np.sum(np.conj(A2[defined]) * A1[defined], axis=1))
    ratios = np.minimum(1.0, inner / (n1[defined] * n2[defined]))
    thetas = np.arccos(ratios)
    counts, edges = np.histogram(thetas, bins=bins, range=(0.0, math.pi / 2.0))
    centers = (edges[:-1] + edges[1:]) / 2.0
    return AngleProfile(
        v=v,
        samples=samples,
        skipped=skipped,
        theta_min=float(thetas.min()),
        theta_max=float(thetas.max()),
        histogram=tuple((float(c), int(k)) for c, k in zip(centers, counts)),
    )
