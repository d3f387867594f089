"""Invariant Hermitian metrics on the four spaces, the invariant volume
density, and pushforwards of tangent vectors along the group actions.

Each metric is exposed as a sesquilinear form on tangent vectors: the line
element is turned into h(t1, t2) by substituting holomorphic differentials
from t1 and antiholomorphic ones from conj(t2), then Hermitian-symmetrizing
h(t1, t2) = (s(t1, t2) + conj(s(t2, t1))) / 2, so that h(t, t) reproduces the
line element on real tangents.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups
from .errors import DomainError, ParameterError
from .linalg import safe_inv
from .spaces import DiskPoint, JacobiDiskPoint, JacobiPoint, SiegelPoint, TangentVector


@dataclass(frozen=True)
class MetricParams:
    """Positive weights of the two-parameter family of invariant metrics."""

    A: float = 1.0
    B: float = 1.0

    def __post_init__(self):
        if not (self.A > 0 and self.B > 0):
            raise DomainError("metric parameters must be strictly positive")


def _tr(x) -> complex:
    return complex(np.trace(x))


def _hermitized(raw, p, t1, t2, *args):
    return 0.5 * (raw(p, t1, t2, *args) + np.conj(raw(p, t2, t1, *args)))


# -- Siegel upper half space ----------------------------------------------------

def _siegel_raw(p: SiegelPoint, t1: TangentVector, t2: TangentVector, a: float) -> complex:
    yi = safe_inv(p.omega.imag)
    return a * _tr(yi @ t1.d_omega @ yi @ np.conj(t2.d_omega))


def siegel_metric(p: SiegelPoint, t1: TangentVector, t2: TangentVector, a: float = 1.0) -> complex:
    """A tr(Y^{-1} dOmega Y^{-1} conj(dOmega)) as a Hermitian form."""
    if a <= 0:
        raise DomainError("metric weight must be positive")
    return _hermitized(_siegel_raw, p, t1, t2, a)


# -- Siegel-Jacobi space --------------------------------------------------------

def _jacobi_raw(p: JacobiPoint, t1: TangentVector, t2: TangentVector,
                params: MetricParams) -> complex:
    y = p.omega.imag
    yi = safe_inv(y)
    v = p.z.imag
    d_om = t1.d_omega
    d_om_bar = np.conj(t2.d_omega)
    d_z = t1.d_z
    d_z_bar = np.conj(t2.d_z)
    s = params.A * _tr(yi @ d_om @ yi @ d_om_bar)
    s += params.B * (
        _tr(yi @ v.T @ v @ yi @ d_om @ yi @ d_om_bar)
        + _tr(yi @ d_z.T @ d_z_bar)
        - _tr(v @ yi @ d_om @ yi @ d_z_bar.T)
        - _tr(v @ yi @ d_om_bar @ yi @ d_z.T)
    )
    return s


def jacobi_metric(p: JacobiPoint, t1: TangentVector, t2: TangentVector,
                  params: MetricParams = MetricParams()) -> complex:
    return _hermitized(_jacobi_raw, p, t1, t2, params)


# -- Generalized unit disk ------------------------------------------------------

def _disk_raw(p: DiskPoint, t1: TangentVector, t2: TangentVector, a: float) -> complex:
    n = p.n
    eye = np.eye(n)
    w = p.w
    wbar = np.conj(w)
    left = safe_inv(eye - w @ wbar)
    right = safe_inv(eye - wbar @ w)
    return 4.0 * a * _tr(left @ t1.d_omega @ right @ np.conj(t2.d_omega))


def disk_metric(p: DiskPoint, t1: TangentVector, t2: TangentVector, a: float = 1.0) -> complex:
    """4A tr((I - W conj(W))^{-1} dW (I - conj(W) W)^{-1} conj(dW))."""
    if a <= 0:
        raise DomainError("metric weight must be positive")
    return _hermitized(_disk_raw, p, t1, t2, a)


# -- Siegel-Jacobi disk ---------------------------------------------------------

def _jacobi_disk_raw(p: JacobiDiskPoint, t1: TangentVector, t2: TangentVector,
                     params: MetricParams) -> complex:
    n = p.n
    eye = np.eye(n)
    w = p.w
    wb = np.conj(w)
    eta = p.eta
    etab = np.conj(eta)
    lw = safe_inv(eye - w @ wb)        # (I - W conj(W))^{-1}
    rw = safe_inv(eye - wb @ w)        # (I - conj(W) W)^{-1}
    one_m_w = eye - w
    one_m_wb = eye - wb
    inv_one_m_w = safe_inv(one_m_w)
    inv_one_m_wb = safe_inv(one_m_wb)
    dw = t1.d_omega
    dwb = np.conj(t2.d_omega)
    de = t1.d_z
    deb = np.conj(t2.d_z)

    s = 4.0 * params.A * _tr(lw @ dw @ rw @ dwb)
    b_terms = _tr(lw @ de.T @ deb)
    b_terms += _tr((eta @ wb - etab) @ lw @ dw @ rw @ deb.T)
    b_terms += _tr((etab @ w - eta) @ rw @ dwb @ lw @ de.T)
    b_terms -= _tr(lw @ eta.T @ eta @ rw @ wb @ dw @ rw @ dwb)
    b_terms -= _tr(w @ rw @ etab.T @ etab @ lw @ dw @ rw @ dwb)
    b_terms += _tr(lw @ eta.T @ etab @ lw @ dw @ rw @ dwb)
    b_terms += _tr(inv_one_m_wb @ etab.T @ eta @ wb @ lw @ dw @ rw @ dwb)
    b_terms += _tr(inv_one_m_wb @ one_m_w @ rw @ etab.T @ eta @ rw
                   @ one_m_wb @ inv_one_m_w @ dw @ rw @ dwb)
    b_terms -= _tr(lw @ one_m_w @ inv_one_m_wb @ etab.T @ eta @ inv_one_m_w @ dw @ rw @ dwb)
    return s + 4.0 * params.B * b_terms


def jacobi_disk_metric(p: JacobiDiskPoint, t1: TangentVector, t2: TangentVector,
                       params: MetricParams = MetricParams()) -> complex:
    return _hermitized(_jacobi_disk_raw, p, t1, t2, params)


# -- Volume density -------------------------------------------------------------

def volume_density(p: SiegelPoint) -> float:
    """Density (det Im omega)^{-(n+1)} of the invariant volume element."""
    return float(np.linalg.det(p.omega.imag) ** (-(p.n + 1)))


# -- Pushforwards ----------------------------------------------------------------

def default_fd_step(p) -> float:
    if isinstance(p, (SiegelPoint, DiskPoint)):
        mats = [p.omega if isinstance(p, SiegelPoint) else p.w]
    elif isinstance(p, JacobiPoint):
        mats = [p.omega, p.z]
    else:
        mats = [p.w, p.eta]
    scale = max(np.max(np.abs(m)) for m in mats)
    return 1e-4 * (1.0 + scale)


def _shift(p, t: TangentVector, c: float):
    if isinstance(p, SiegelPoint):
        return SiegelPoint(p.omega + c * t.d_omega)
    if isinstance(p, JacobiPoint):
        return JacobiPoint(p.omega + c * t.d_omega, p.z + c * t.d_z)
    if isinstance(p, DiskPoint):
        return DiskPoint(p.w + c * t.d_omega)
    if isinstance(p, JacobiDiskPoint):
        return JacobiDiskPoint(p.w + c * t.d_omega, p.eta + c * t.d_z)
    raise DomainError(f"not a point type: {type(p)!r}")


def _components(p):
    if isinstance(p, SiegelPoint):
        return (p.omega, None)
    if isinstance(p, JacobiPoint):
        return (p.omega, p.z)
    if isinstance(p, DiskPoint):
        return (p.w, None)
    return (p.w, p.eta)


def map_differential(fn, p, t: TangentVector, h: float | None = None) -> TangentVector:
    """Central-difference directional derivative of a holomorphic point map."""
    if h is None:
        h = default_fd_step(p)
    if h <= 0 or 1.0 + h == 1.0:
        raise ParameterError(f"finite-difference step {h} underflows")
    plus = _components(fn(_shift(p, t, h)))
    minus = _components(fn(_shift(p, t, -h)))
    d_first = (plus[0] - minus[0]) / (2.0 * h)
    if plus[1] is None:
        return TangentVector.omega_only(d_first)
    return TangentVector(d_first, (plus[1] - minus[1]) / (2.0 * h))


def pushforward(g, p, t: TangentVector, mode: str = "exact",
                h: float | None = None) -> TangentVector:
    """Differential of the group action at p applied to t.

    Exact mode covers the half-space action of the symplectic group, where
    dOmega maps to t((C omega + D)^{-1}) dOmega (C omega + D)^{-1}; all other
    actions use the central-difference mode.
    """
    if mode == "exact":
        if not (isinstance(g, groups.SymplecticElement) and isinstance(p, SiegelPoint)):
            raise DomainError("exact pushforward is only available for the half-space action")
        _, _, c, d = g.blocks()
        denom_inv = safe_inv(c @ p.omega + d)
        return TangentVector.omega_only(denom_inv.T @ t.d_omega @ denom_inv, m=t.m)
    if mode != "fd":
        raise DomainError(f"unknown pushforward mode {mode!r}")
    return map_differential(lambda q: groups.act(g, q), p, t, h)


def real_jacobian_det(fn, p: SiegelPoint, h: float | None = None) -> float:
    """Determinant of the real Jacobian of a half-space map in the symmetric
    coordinates (x_ij, y_ij), i <= j."""
    if h is None:
        h = default_fd_step(p)
    n = p.n
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    dim = 2 * len(pairs)

    def coords(q: SiegelPoint):
        vec = np.empty(dim)
        for idx, (i, j) in enumerate(pairs):
            vec[idx] = q.omega[i, j].real
            vec[len(pairs) + idx] = q.omega[i, j].imag
        return vec

    def basis(idx):
        e = np.zeros((n, n), dtype=complex)
        k = idx % len(pairs)
        i, j = pairs[k]
        val = 1.0 if idx < len(pairs) else 1.0j
        e[i, j] = val
        e[j, i] = val
        return TangentVector.omega_only(e)

    jac = np.empty((dim, dim))
    for col in range(dim):
        t = basis(col)
        plus = coords(fn(_shift(p, t, h)))
        minus = coords(fn(_shift(p, t, -h)))
        jac[:, col] = (plus - minus) / (2.0 * h)
    return float(np.linalg.det(jac))
