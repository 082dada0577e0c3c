"""Desk-scale dense complex linear algebra.

Hermitian eigendecomposition, SVD, polar decomposition, fractional powers,
weighted geometric means, spectral norm, numerical radius, vector angles,
and the JSON interchange format for matrices. Matrices are plain complex
ndarrays; decompositions are validated against their reconstruction
contracts in the test suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EigSystem",
    "PolarParts",
    "is_hermitian",
    "is_unitary",
    "is_psd",
    "hermitian_eig",
    "svd",
    "polar",
    "frac_power",
    "geometric_mean",
    "spectral_norm",
    "numerical_radius",
    "angle",
    "matrix_to_json",
    "matrix_from_json",
    "save_matrix",
    "load_matrix",
    "DEFAULT_TOL",
    "PD_FLOOR_REL",
]

DEFAULT_TOL = 1e-10

# relative floor on eigenvalues below which a matrix is rejected as "not
# positive definite enough for congruence inversion"
PD_FLOOR_REL = 1e-10


@dataclass(frozen=True)
class EigSystem:
    """Spectral decomposition M = vectors @ diag(values) @ vectors*."""

    values: np.ndarray   # real, ascending
    vectors: np.ndarray  # orthonormal columns


@dataclass(frozen=True)
class PolarParts:
    """Polar decomposition A = unitary @ positive with positive = (A*A)^(1/2)."""

    unitary: np.ndarray
    positive: np.ndarray


def _as_matrix(M, who: str) -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.size == 0:
        raise ValueError(f"{who}: expected a nonempty 2-D matrix, got shape {A.shape}")
    return A


def _as_square(M, who: str) -> np.ndarray:
    A = _as_matrix(M, who)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"{who}: expected a square matrix, got shape {A.shape}")
    return A


def _as_vector(x, who: str) -> np.ndarray:
    v = np.asarray(x, dtype=complex).ravel()
    if v.size == 0:
        raise ValueError(f"{who}: empty vector")
    return v


def _fro(M: np.ndarray) -> float:
    return float(np.linalg.norm(M))


def is_hermitian(M, tol: float = DEFAULT_TOL) -> bool:
    A = _as_matrix(M, "is_hermitian")
    if A.shape[0] != A.shape[1]:
        return False
    return _fro(A - A.conj().T) <= tol * _fro(A)


def is_unitary(M, tol: float = DEFAULT_TOL) -> bool:
    A = _as_matrix(M, "is_unitary")
    if A.shape[0] != A.shape[1]:
        return False
    n = A.shape[0]
    return _fro(A.conj().T @ A - np.eye(n)) <= tol


def is_psd(M, tol: float = DEFAULT_TOL) -> bool:
    A = _as_matrix(M, "is_psd")
    if not is_hermitian(A, tol):
        return False
    w = np.linalg.eigvalsh((A + A.conj().T) / 2.0)
    return bool(w.min(initial=0.0) >= -tol)


def hermitian_eig(M, tol: float = DEFAULT_TOL) -> EigSystem:
    """Full spectral decomposition of a Hermitian matrix.

    Eigenvalues come back ascending with orthonormal eigenvector columns.
    Rejects non-square input and input whose Hermiticity defect
    ||M - M*|| exceeds tol * ||M||.
    """
    A = _as_square(M, "hermitian_eig")
    defect = _fro(A - A.conj().T)
    if defect > tol * _fro(A):
        raise ValueError(
            f"hermitian_eig: matrix is not Hermitian: defect ||M - M*|| = {defect:.3e} "
            f"exceeds tol*||M|| = {tol * _fro(A):.3e}"
        )
    w, V = np.linalg.eigh((A + A.conj().T) / 2.0)
    return EigSystem(values=w, vectors=V)


def svd(M):
    """Singular value decomposition M = W @ diag(sigma) @ V*.

    Returns (W, sigma, V) with sigma descending and W, V unitary (full,
    also for singular M).
    """
    A = _as_square(M, "svd")
    W, sigma, Vh = np.linalg.svd(A)
    return W, sigma, Vh.conj().T


def polar(A) -> PolarParts:
    """Polar decomposition A = U |A| through the SVD.

    With A = W diag(sigma) V*, the factors are U = W V* and
    |A| = V diag(sigma) V*. U is always a full unitary (the SVD supplies a
    unitary completion when A is singular), which makes the transport
    identity U |A|^p U* = |A*|^p hold for every p > 0.
    """
    W, sigma, V = svd(A)
    U = W @ V.conj().T
    P = (V * sigma) @ V.conj().T
    P = (P + P.conj().T) / 2.0
    return PolarParts(unitary=U, positive=P)


def frac_power(P, p: float, tol: float | None = None) -> np.ndarray:
    """Spectral power P^p of a positive semidefinite matrix.

    Eigenvalues map to lambda^p with the conventions 0^p = 0 for p > 0 and
    p = 0 -> identity (also on the kernel). Eigenvalues in [-tol, 0) are
    clamped to 0 first; anything below -tol is rejected as not PSD. The
    default tol is 1e-10 * max(1, ||P||).
    """
    A = _as_square(P, "frac_power")
    if not (np.isfinite(p) and p >= 0.0):
        raise ValueError(f"frac_power: exponent must be >= 0, got {p!r}")
    eig = hermitian_eig(A, tol=1e-8)
    lam = eig.values
    scale = max(abs(float(lam[0])), abs(float(lam[-1])))
    clamp = (PD_FLOOR_REL * max(1.0, scale)) if tol is None else tol
    if lam[0] < -clamp:
        raise ValueError(
            f"frac_power: matrix is not positive semidefinite "
            f"(min eigenvalue {lam[0]:.3e} < -{clamp:.3e})"
        )
    n = A.shape[0]
    if p == 0.0:
        return np.eye(n, dtype=complex)
    lam = np.where(lam < 0.0, 0.0, lam)
    V = eig.vectors
    out = (V * lam**p) @ V.conj().T
    return (out + out.conj().T) / 2.0


def geometric_mean(A, B, t: float, pd_floor_rel: float = PD_FLOOR_REL) -> np.ndarray:
    """Weighted geometric mean A #_t B = A^(1/2) (A^(-1/2) B A^(-1/2))^t A^(1/2).

    Both arguments must be Hermitian with smallest eigenvalue above
    pd_floor_rel times their spectral norm; otherwise the congruence
    inversion is refused. t = 1/2 gives the (symmetric) geometric mean.
    """
    A = _as_square(A, "geometric_mean")
    B = _as_square(B, "geometric_mean")
    if A.shape != B.shape:
        raise ValueError(f"geometric_mean: shape mismatch {A.shape} vs {B.shape}")
    if not (np.isfinite(t) and 0.0 <= t <= 1.0):
        raise ValueError(f"geometric_mean: weight t must lie in [0, 1], got {t!r}")

    def _pd_eig(M, label):
        eig = hermitian_eig(M, tol=1e-8)
        scale = max(abs(float(eig.values[0])), abs(float(eig.values[-1])), 1e-300)
        floor = pd_floor_rel * scale
        if eig.values[0] < floor:
            raise ValueError(
                f"geometric_mean: {label} is not positive definite enough for "
                f"congruence inversion (min eigenvalue {eig.values[0]:.3e} < {floor:.3e})"
            )
        return eig

    ea = _pd_eig(A, "first operand")
    _pd_eig(B, "second operand")
    Va = ea.vectors
    root = (Va * np.sqrt(ea.values)) @ Va.conj().T
    inv_root = (Va * (1.0 / np.sqrt(ea.values))) @ Va.conj().T
    inner = inv_root @ B @ inv_root
    inner = (inner + inner.conj().T) / 2.0
    wi, Vi = np.linalg.eigh(inner)
    wi = np.where(wi < 0.0, 0.0, wi)  # round-off guard; inner is PD here
    mid = (Vi * wi**t) @ Vi.conj().T
    out = root @ mid @ root
    return (out + out.conj().T) / 2.0


def spectral_norm(M) -> float:
    """Largest singular value of M."""
    A = _as_matrix(M, "spectral_norm")
    return float(np.linalg.norm(A, 2))


def _golden_section_max(f, a: float, b: float, tol: float) -> float:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
    return max(fc, fd)


def numerical_radius(A, grid: int = 720, refine_tol: float = 1e-10) -> float:
    """Numerical radius w(A) = sup over unit x of |<Ax, x>|.

    Computed as the maximum over phi in [0, 2*pi) of the top eigenvalue of
    the Hermitian part of e^{i*phi} A, scanned on a coarse grid and then
    refined by golden-section search around the three best grid maxima
    down to refine_tol in phi. The top-3 refinement bounds the risk of
    missing the global basin; the returned value is always a valid lower
    estimate of the supremum.
    """
    A = _as_square(A, "numerical_radius")
    grid = int(grid)
    if grid < 8:
        raise ValueError(f"numerical_radius: grid must be at least 8, got {grid}")
    if not (np.isfinite(refine_tol) and refine_tol > 0.0):
        raise ValueError(f"numerical_radius: refine_tol must be positive, got {refine_tol!r}")
    Ah = A.conj().T
    phis = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    phase = np.exp(1j * phis)[:, None, None]
    herm = (phase * A + np.conj(phase) * Ah) / 2.0
    tops = np.linalg.eigvalsh(herm)[:, -1]
    best = float(tops.max())

    def f(phi: float) -> float:
        H = (np.exp(1j * phi) * A + np.exp(-1j * phi) * Ah) / 2.0
        return float(np.linalg.eigvalsh(H)[-1])

    step = 2.0 * np.pi / grid
    local_max = (tops >= np.roll(tops, 1)) & (tops >= np.roll(tops, -1))
    candidates = np.nonzero(local_max)[0]
    top3 = candidates[np.argsort(tops[candidates])[::-1][:3]]
    for i in top3:
        phi0 = float(phis[i])
        best = max(best, _golden_section_max(f, phi0 - step, phi0 + step, refine_tol))
    return best


def angle(x, y) -> float:
    """Angle arccos(|<x, y>| / (||x|| ||y||)) between nonzero vectors.

    The modulus in the numerator keeps the value in [0, pi/2].
    """
    xv = _as_vector(x, "angle")
    yv = _as_vector(y, "angle")
    if xv.shape != yv.shape:
        raise ValueError(f"angle: shape mismatch {xv.shape} vs {yv.shape}")
    nx = float(np.linalg.norm(xv))
    ny = float(np.linalg.norm(yv))
    if nx == 0.0 or ny == 0.0:
        raise ValueError("angle undefined for zero vectors")
    r = abs(np.vdot(yv, xv)) / (nx * ny)
    return float(np.arccos(min(1.0, r)))


# --- matrix JSON interchange -------------------------------------------------
#
# {"rows": R, "cols": C, "data": [[[re, im], ...], ...]}  (row-major)
#
# Floats survive the round trip bit-exactly: json emits the shortest decimal
# repr that reparses to the same double.


def matrix_to_json(M) -> dict:
    A = _as_matrix(M, "matrix_to_json")
    rows, cols = A.shape
    return {
        "rows": int(rows),
        "cols": int(cols),
        "data": [[[float(z.real), float(z.imag)] for z in row] for row in A],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError(f"matrix JSON: expected an object, got {type(obj).__name__}")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise ValueError(f"matrix JSON: missing key {key!r}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise ValueError(f"matrix JSON: rows/cols must be positive integers, got {rows!r}/{cols!r}")
    if not isinstance(data, list) or len(data) != rows:
        raise ValueError(f"matrix JSON: data must be a list of {rows} rows")
    out = np.empty((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ValueError(f"matrix JSON: row {i} must be a list of {cols} entries")
        for j, entry in enumerate(row):
            if not (isinstance(entry, list) and len(entry) == 2):
                raise ValueError(f"matrix JSON: entry ({i},{j}) must be an [re, im] pair")
            re, im = entry
            if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
                raise ValueError(f"matrix JSON: entry ({i},{j}) must hold two numbers")
            out[i, j] = complex(re, im)
    return out


def save_matrix(M, path) -> None:
    obj = matrix_to_json(M)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(obj, fh)
            fh.write("\n")
    except OSError as err:
        raise OSError(f"cannot write matrix to {path}: {err}") from err


def load_matrix(path) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as err:
        raise OSError(f"cannot read matrix from {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ValueError(f"malformed matrix JSON in {path}: {err}") from err
    return matrix_from_json(obj)
