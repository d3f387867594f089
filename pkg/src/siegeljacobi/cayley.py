"""Cayley transform between the disk and half-space models, and its partial
extension to the Jacobi spaces."""
from __future__ import annotations

import numpy as np

from . import linalg
from .errors import DimensionError
from .linalg import safe_solve
from .spaces import DiskPoint, JacobiDiskPoint, JacobiPoint, SiegelPoint


def cayley(p: DiskPoint) -> SiegelPoint:
    """W -> i (I + W)(I - W)^{-1}."""
    n = p.n
    eye = np.eye(n)
    omega = 1j * safe_solve((eye - p.w).T, (eye + p.w).T).T
    return SiegelPoint(linalg.symmetrize(omega))


def cayley_inverse(p: SiegelPoint) -> DiskPoint:
    """omega -> (omega - iI)(omega + iI)^{-1}."""
    n = p.n
    eye = np.eye(n)
    w = safe_solve((p.omega + 1j * eye).T, (p.omega - 1j * eye).T).T
    return DiskPoint(linalg.symmetrize(w))


def partial_cayley(p: JacobiDiskPoint) -> JacobiPoint:
    """(W, eta) -> (i (I + W)(I - W)^{-1}, 2 i eta (I - W)^{-1})."""
    n = p.n
    eye = np.eye(n)
    omega = 1j * safe_solve((eye - p.w).T, (eye + p.w).T).T
    z = 2j * safe_solve((eye - p.w).T, p.eta.T).T
    return JacobiPoint(linalg.symmetrize(omega), z)


def partial_cayley_inverse(p: JacobiPoint) -> JacobiDiskPoint:
    """(omega, z) -> ((omega - iI)(omega + iI)^{-1}, z (omega + iI)^{-1})."""
    n = p.n
    eye = np.eye(n)
    w = safe_solve((p.omega + 1j * eye).T, (p.omega - 1j * eye).T).T
    eta = safe_solve((p.omega + 1j * eye).T, p.z.T).T
    return JacobiDiskPoint(linalg.symmetrize(w), eta)


def to_disk(p):
    if isinstance(p, SiegelPoint):
        return cayley_inverse(p)
    if isinstance(p, JacobiPoint):
        return partial_cayley_inverse(p)
    raise DimensionError(f"no disk model for {type(p).__name__}")


def to_half_space(p):
    if isinstance(p, DiskPoint):
        return cayley(p)
    if isinstance(p, JacobiDiskPoint):
        return partial_cayley(p)
    raise DimensionError(f"no half-space model for {type(p).__name__}")
