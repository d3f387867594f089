"""Complex/real matrix primitives shared by every other module.

Conventions: matrices are numpy arrays (complex128 or float64), row-major.
The JSON wire format for a matrix is
``{"rows": n, "cols": m, "data": [[re, im], ...]}`` with ``data`` row-major.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, NumericError

COND_LIMIT = 1e12


@dataclass(frozen=True)
class Tolerance:
    """Combined absolute/relative comparison thresholds."""

    abs: float = 1e-10
    rel: float = 1e-10

    def __post_init__(self):
        if self.abs < 0 or self.rel < 0:
            raise DomainError("tolerances must be nonnegative")

    def close(self, a, b):
        """|a - b| <= abs + rel * max(|a|, |b|), entrywise for arrays."""
        a = np.asarray(a)
        b = np.asarray(b)
        bound = self.abs + self.rel * np.maximum(np.abs(a), np.abs(b))
        return bool(np.all(np.abs(a - b) <= bound))


DEFAULT_TOL = Tolerance()


def as_complex_matrix(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={a.ndim}")
    return a


def require_square(a, what="matrix"):
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {a.shape}")
    return a


def is_symmetric(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff max |A_ij - A_ji| is within tol."""
    a = require_square(a)
    return tol.close(a, a.T)


def is_hermitian(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = require_square(a)
    return tol.close(a, a.conj().T)


def symmetrize(a):
    a = require_square(a)
    return 0.5 * (a + a.T)


def hermitize(a):
    a = require_square(a)
    return 0.5 * (a + a.conj().T)


def is_positive_definite(s, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue of Hermitian ``s`` exceeds tol.abs.

    Boundary points are rejected: the spaces here are built on open cones.
    """
    s = require_square(s)
    if not is_hermitian(s, tol):
        raise DomainError("positivity test requires a Hermitian matrix")
    eigs = np.linalg.eigvalsh(hermitize(s))
    return bool(eigs[0] > tol.abs)


def cholesky(s):
    """Cholesky factor L with L L^H = s for Hermitian positive definite s."""
    s = require_square(s)
    try:
        return np.linalg.cholesky(hermitize(s))
    except np.linalg.LinAlgError as exc:
        raise DomainError(f"matrix is not positive definite: {exc}") from exc


def eigh_sorted(s):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    s = require_square(s)
    return np.linalg.eigh(hermitize(s))


def safe_inv(a):
    """Inverse with a conditioning guard; raises NumericError when cond > 1e12."""
    a = require_square(a)
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise NumericError(f"matrix condition estimate {cond:.3e} exceeds {COND_LIMIT:.1e}")
    return np.linalg.inv(a)


def safe_solve(a, b):
    a = require_square(a)
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise NumericError(f"matrix condition estimate {cond:.3e} exceeds {COND_LIMIT:.1e}")
    return np.linalg.solve(a, b)


def principal_sqrt_log(s, tol: Tolerance = DEFAULT_TOL):
    """Principal square root of a real symmetric matrix with spectrum in [0, 1),
    together with log((I + sqrt(s)) (I - sqrt(s))^{-1}) assembled on the same
    eigenbasis.

    Both outputs are symmetric; a spectrum outside [0, 1) signals an invalid
    cross-ratio and raises DomainError.
    """
    s = require_square(s)
    if not is_symmetric(s, tol) or np.max(np.abs(s.imag)) > tol.abs:
        raise DomainError("principal_sqrt_log expects a real symmetric matrix")
    w, q = np.linalg.eigh(symmetrize(s).real)
    if w[0] < -tol.abs or w[-1] >= 1.0 - 1e-14:
        raise DomainError(f"eigenvalues {w} not inside [0, 1)")
    w = np.clip(w, 0.0, None)
    root = np.sqrt(w)
    sqrt_s = (q * root) @ q.T
    log_ratio = (q * np.log((1.0 + root) / (1.0 - root))) @ q.T
    return sqrt_s, log_ratio


def random_unitary(n, rng):
    """Haar-ish random unitary: QR of a complex Gaussian with phase-fixed R."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


# -- JSON wire format ---------------------------------------------------------

def matrix_to_json(a) -> dict:
    a = as_complex_matrix(a)
    data = [[float(x.real), float(x.imag)] for x in a.reshape(-1)]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": data}


def matrix_from_json(obj):
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= set(obj):
        raise DimensionError("matrix JSON needs keys rows, cols, data")
    rows, cols = int(obj["rows"]), int(obj["cols"])
    if rows < 1 or cols < 1:
        raise DimensionError("rows and cols must be >= 1")
    data = obj["data"]
    if len(data) != rows * cols:
        raise DimensionError(f"data length {len(data)} != rows*cols {rows * cols}")
    flat = [complex(float(re), float(im)) for re, im in data]
    return np.array(flat, dtype=complex).reshape(rows, cols)


def matrix_dumps(a) -> str:
    return json.dumps(matrix_to_json(a))


def matrix_loads(text: str):
    return matrix_from_json(json.loads(text))
