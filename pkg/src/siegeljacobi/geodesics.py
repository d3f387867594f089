"""Geodesic distance on the Siegel upper half space via cross-ratio
eigenvalues, and the special diagonal geodesics through iI."""
from __future__ import annotations

import numpy as np

from .errors import NumericError, ParameterError
from .linalg import safe_solve
from .spaces import SiegelPoint

EIG_IMAG_TOL = 1e-9


def cross_ratio(p0: SiegelPoint, p1: SiegelPoint):
    """(O0 - O1)(O0 - conj(O1))^{-1}(conj(O0) - conj(O1))(conj(O0) - O1)^{-1}."""
    o0, o1 = p0.omega, p1.omega
    o0b, o1b = np.conj(o0), np.conj(o1)
    a = safe_solve((o0 - o1b).T, (o0 - o1).T).T
    b = safe_solve((o0b - o1).T, (o0b - o1b).T).T
    return a @ b


def cross_ratio_eigenvalues(p0: SiegelPoint, p1: SiegelPoint):
    """Eigenvalues of the cross-ratio matrix, checked real and inside [0, 1)."""
    r = cross_ratio(p0, p1)
    eigs = np.linalg.eigvals(r)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    if np.max(np.abs(eigs.imag)) > EIG_IMAG_TOL * scale:
        raise NumericError(f"cross-ratio spectrum not real: {eigs}")
    vals = eigs.real
    if np.min(vals) < -EIG_IMAG_TOL or np.max(vals) >= 1.0 - 1e-14:
        raise NumericError(f"cross-ratio eigenvalues {vals} outside [0, 1)")
    return np.sort(np.clip(vals, 0.0, None))


def siegel_distance(p0: SiegelPoint, p1: SiegelPoint) -> float:
    """Geodesic length for the weight-1 invariant metric:
    rho^2 = sum_k log((1 + sqrt(r_k)) / (1 - sqrt(r_k)))^2 over the
    cross-ratio eigenvalues r_k."""
    vals = cross_ratio_eigenvalues(p0, p1)
    roots = np.sqrt(vals)
    return float(np.sqrt(np.sum(np.log((1.0 + roots) / (1.0 - roots)) ** 2)))


def siegel_distance_series(p0: SiegelPoint, p1: SiegelPoint, tail: float = 1e-14) -> float:
    """Same distance through the series form 4 r (sum_k r^k / (2k+1))^2,
    truncated once the tail falls below ``tail``."""
    vals = cross_ratio_eigenvalues(p0, p1)
    total = 0.0
    for r in vals:
        if r == 0.0:
            continue
        acc = 0.0
        power = 1.0
        k = 0
        while True:
            acc += power / (2 * k + 1)
            power *= r
            k += 1
            # remainder of sum_j r^j/(2j+1) past k is below power/((2k+1)(1-r))
            if power / ((2 * k + 1) * (1.0 - r)) < tail * max(acc, 1.0) or k > 100_000:
                break
        total += 4.0 * r * acc * acc
    return float(np.sqrt(total))


def special_geodesic(a, t: float, norm_tol: float = 1e-8) -> SiegelPoint:
    """Unit-speed geodesic i diag(a_1^t, ..., a_n^t) through iI at t = 0.

    Requires sum_k log(a_k)^2 = 1 within ``norm_tol``.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if np.any(a <= 0):
        raise ParameterError("geodesic parameters must be positive")
    logs = np.log(a)
    if abs(float(np.sum(logs**2)) - 1.0) > norm_tol:
        raise ParameterError("parameters violate the unit-speed normalization "
                             f"sum(log a_k)^2 = 1 (got {float(np.sum(logs**2)):.3e})")
    return SiegelPoint(1j * np.diag(np.exp(t * logs)).astype(complex))
