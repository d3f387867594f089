"""Deterministic random points, tangents and fields for the check suites."""
from __future__ import annotations

import numpy as np

from .errors import DomainError
from .spaces import DiskPoint, JacobiDiskPoint, JacobiPoint, SiegelPoint, TangentVector


def random_siegel_point(n: int, rng, y_range=(0.5, 2.0)) -> SiegelPoint:
    x = rng.uniform(-1.0, 1.0, (n, n))
    x = 0.5 * (x + x.T)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    y = q @ np.diag(rng.uniform(*y_range, n)) @ q.T
    return SiegelPoint.create(x + 1j * y)


def random_jacobi_point(n: int, m: int, rng) -> JacobiPoint:
    base = random_siegel_point(n, rng)
    z = rng.uniform(-1.0, 1.0, (m, n)) + 1j * rng.uniform(-1.0, 1.0, (m, n))
    return JacobiPoint.create(base.omega, z)


def random_disk_point(n: int, rng, radius: float = 0.5) -> DiskPoint:
    w = rng.uniform(-1.0, 1.0, (n, n)) + 1j * rng.uniform(-1.0, 1.0, (n, n))
    w = 0.5 * (w + w.T)
    norm = np.linalg.norm(w, 2)
    if norm > radius:
        w *= radius / norm
    return DiskPoint.create(w)


def random_jacobi_disk_point(n: int, m: int, rng, radius: float = 0.5) -> JacobiDiskPoint:
    base = random_disk_point(n, rng, radius)
    eta = 0.7 * (rng.uniform(-1.0, 1.0, (m, n)) + 1j * rng.uniform(-1.0, 1.0, (m, n)))
    return JacobiDiskPoint.create(base.w, eta)


def random_point(kind: str, n: int, m: int, rng):
    if kind == "siegel":
        return random_siegel_point(n, rng)
    if kind == "jacobi":
        return random_jacobi_point(n, m, rng)
    if kind == "disk":
        return random_disk_point(n, rng)
    if kind == "jacobi_disk":
        return random_jacobi_disk_point(n, m, rng)
    raise DomainError(f"unknown point kind {kind!r}")


def random_tangent(n: int, m: int, rng) -> TangentVector:
    a = rng.uniform(-1.0, 1.0, (n, n)) + 1j * rng.uniform(-1.0, 1.0, (n, n))
    dz = rng.uniform(-1.0, 1.0, (max(m, 0), n)) + 1j * rng.uniform(-1.0, 1.0, (max(m, 0), n))
    return TangentVector(0.5 * (a + a.T), dz)


def random_polynomial_field(kind: str, rng):
    """Smooth low-degree field on a half-space or disk point."""
    cs = rng.uniform(-1.0, 1.0, 8)
    if kind in ("jacobi", "siegel"):
        def f(p):
            om = p.omega
            z = p.z if hasattr(p, "z") else np.zeros((1, p.n), dtype=complex)
            return (cs[0] * np.trace(om).real + cs[1] * np.trace(om @ om).imag
                    + cs[2] * np.sum(z).real + cs[3] * abs(np.sum(z)) ** 2
                    + cs[4] * np.trace(om.imag @ om.imag)
                    + cs[5] * np.sum(z.imag * z.imag)
                    + cs[6] * np.trace(om).imag * np.sum(z).real + cs[7])
        return f
    if kind in ("jacobi_disk", "disk"):
        def f(p):
            w = p.w
            eta = p.eta if hasattr(p, "eta") else np.zeros((1, p.n), dtype=complex)
            return (cs[0] * np.sum(w).real + cs[1] * abs(np.sum(eta)) ** 2
                    + cs[2] * np.sum(eta).imag + cs[3] * np.trace(w @ np.conj(w)).real
                    + cs[4] * (np.sum(eta) * np.sum(w)).real
                    + cs[5] * np.sum(eta.real * eta.real) + cs[7])
        return f
    raise DomainError(f"unknown field kind {kind!r}")
