"""Wirtinger finite-difference engine and the invariant differential operators.

The engine differentiates scalar fields (callables on points) in the real
coordinates of each space, then assembles weighted Wirtinger derivatives.
Matrix derivative conventions: for a symmetric complex matrix the (i, j)
entry of the derivative matrix carries the weight (1 + delta_ij)/2 applied to
the symmetric-variable partial; for rectangular z-type matrices the layout is
the n x m transpose of the variable layout, i.e. entry (l, k) differentiates
with respect to z_{kl}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import DomainError, ParameterError
from .linalg import safe_inv
from .metrics import MetricParams
from .spaces import DiskPoint, JacobiDiskPoint, JacobiPoint, SiegelPoint


@dataclass(frozen=True)
class FDConfig:
    step: float = 1e-3
    scheme: str = "central-4"

    def __post_init__(self):
        if self.step <= 0:
            raise ParameterError("step must be positive")
        if self.scheme not in ("central-2", "central-4"):
            raise ParameterError(f"unknown scheme {self.scheme!r}")


@dataclass(frozen=True)
class ScalarField:
    """Callable field with an optional declared smoothness radius."""

    fn: object
    radius: float = np.inf

    def __call__(self, p):
        return self.fn(p)


def _first_weights(scheme, h):
    if scheme == "central-2":
        return {1: 0.5 / h, -1: -0.5 / h}
    return {2: -1.0 / (12 * h), 1: 8.0 / (12 * h), -1: -8.0 / (12 * h), -2: 1.0 / (12 * h)}


def _second_same_weights(scheme, h):
    if scheme == "central-2":
        return {1: 1.0 / h**2, 0: -2.0 / h**2, -1: 1.0 / h**2}
    h2 = 12 * h**2
    return {2: -1.0 / h2, 1: 16.0 / h2, 0: -30.0 / h2, -1: 16.0 / h2, -2: -1.0 / h2}


class _Chart:
    """Real coordinates of a point: symmetric complex blocks then z blocks."""

    def __init__(self, p):
        if isinstance(p, SiegelPoint):
            self.kind = "siegel"
            self.n, self.m = p.n, 0
            self.sym, self.rect = p.omega, None
        elif isinstance(p, JacobiPoint):
            self.kind = "jacobi"
            self.n, self.m = p.n, p.m
            self.sym, self.rect = p.omega, p.z
        elif isinstance(p, DiskPoint):
            self.kind = "disk"
            self.n, self.m = p.n, 0
            self.sym, self.rect = p.w, None
        elif isinstance(p, JacobiDiskPoint):
            self.kind = "jacobi_disk"
            self.n, self.m = p.n, p.m
            self.sym, self.rect = p.w, p.eta
        else:
            raise DomainError(f"no chart for {type(p)!r}")
        n, m = self.n, self.m
        self.sym_pairs = [(i, j) for i in range(n) for j in range(i, n)]
        # coordinate descriptors: (block, re/im flag, position)
        self.coords = []
        for (i, j) in self.sym_pairs:
            self.coords.append(("sym", 0, (i, j)))
            self.coords.append(("sym", 1, (i, j)))
        for k in range(m):
            for l in range(n):
                self.coords.append(("rect", 0, (k, l)))
                self.coords.append(("rect", 1, (k, l)))
        self.dim = len(self.coords)

    def coord_value(self, idx):
        block, im, pos = self.coords[idx]
        base = self.sym if block == "sym" else self.rect
        v = base[pos]
        return v.imag if im else v.real

    def make_point(self, offsets):
        """Point with coordinate idx shifted by delta for (idx, delta) items."""
        sym = self.sym.copy()
        rect = None if self.rect is None else self.rect.copy()
        for idx, delta in offsets:
            block, im, pos = self.coords[idx]
            step = (1j * delta) if im else delta
            if block == "sym":
                i, j = pos
                sym[i, j] += step
                if i != j:
                    sym[j, i] += step
            else:
                rect[pos] += step
        if self.kind == "siegel":
            return SiegelPoint(sym)
        if self.kind == "jacobi":
            return JacobiPoint(sym, rect)
        if self.kind == "disk":
            return DiskPoint(sym)
        return JacobiDiskPoint(sym, rect)


class DerivativeTable:
    """First and second Wirtinger derivatives of a field at a point."""

    def __init__(self, f, p, cfg: FDConfig = FDConfig()):
        self.cfg = cfg
        self.chart = chart = _Chart(p)
        radius = getattr(f, "radius", np.inf)
        steps = [cfg.step * (1.0 + abs(chart.coord_value(i))) for i in range(chart.dim)]
        if 2 * max(steps, default=0.0) >= radius:
            raise ParameterError("finite-difference step exceeds the field's smoothness radius")
        self._f = f
        center = complex(f(p))
        if not np.isfinite(center.real) or not np.isfinite(center.imag):
            raise DomainError("field evaluated to a non-finite value")
        self.value = center

        dim = chart.dim
        g1 = np.zeros(dim, dtype=complex)
        g2 = np.zeros((dim, dim), dtype=complex)
        fw = _first_weights(cfg.scheme, 1.0)
        offsets = sorted(fw)
        cache = {}

        def feval(items):
            key = tuple(items)
            if key not in cache:
                val = complex(f(chart.make_point(items)))
                if not np.isfinite(val.real) or not np.isfinite(val.imag):
                    raise DomainError("field evaluated to a non-finite value")
                cache[key] = val
            return cache[key]

        for i in range(dim):
            hi = steps[i]
            for o, w in _first_weights(cfg.scheme, hi).items():
                g1[i] += w * feval([(i, o * hi)])
            acc = 0.0 + 0.0j
            for o, w in _second_same_weights(cfg.scheme, hi).items():
                acc += w * (center if o == 0 else feval([(i, o * hi)]))
            g2[i, i] = acc
        for i in range(dim):
            for j in range(i + 1, dim):
                hi, hj = steps[i], steps[j]
                acc = 0.0 + 0.0j
                for oi in offsets:
                    for oj in offsets:
                        acc += fw[oi] * fw[oj] / (hi * hj) * feval([(i, oi * hi), (j, oj * hj)])
                g2[i, j] = g2[j, i] = acc
        self.g1 = g1
        self.g2 = g2
        self._index = {desc: i for i, desc in enumerate(chart.coords)}

    # coordinate index helpers
    def _sym_idx(self, i, j, im):
        i, j = min(i, j), max(i, j)
        return self._index[("sym", im, (i, j))]

    def _rect_idx(self, k, l, im):
        return self._index[("rect", im, (k, l))]

    def _sym_weight(self, i, j):
        return 1.0 if i == j else 0.5

    # first derivatives --------------------------------------------------
    def d_sym(self, bar=False):
        """Weighted matrix d/dOmega (or conj) as an n x n array."""
        n = self.chart.n
        sign = 1.0 if bar else -1.0
        out = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                x = self.g1[self._sym_idx(i, j, 0)]
                y = self.g1[self._sym_idx(i, j, 1)]
                out[i, j] = self._sym_weight(i, j) * 0.5 * (x + sign * 1j * y)
        return out

    def d_rect(self, bar=False):
        """Matrix d/dZ (or conj): entry (l, k) differentiates z_{kl}."""
        n, m = self.chart.n, self.chart.m
        sign = 1.0 if bar else -1.0
        out = np.empty((n, m), dtype=complex)
        for k in range(m):
            for l in range(n):
                u = self.g1[self._rect_idx(k, l, 0)]
                v = self.g1[self._rect_idx(k, l, 1)]
                out[l, k] = 0.5 * (u + sign * 1j * v)
        return out

    # second derivative blocks -------------------------------------------
    def _combo(self, c1, c2):
        """Product of two Wirtinger factors; c = (re_idx, im_idx, sign) with
        sign +1 for a conjugate derivative, -1 for a holomorphic one."""
        r1, i1, s1 = c1
        r2, i2, s2 = c2
        g2 = self.g2
        return 0.25 * (g2[r1, r2] + s2 * 1j * g2[r1, i2] + s1 * 1j * g2[i1, r2]
                       - s1 * s2 * g2[i1, i2])

    def _sym_combo(self, i, j, bar):
        return (self._sym_idx(i, j, 0), self._sym_idx(i, j, 1), 1.0 if bar else -1.0)

    def _rect_combo(self, k, l, bar):
        return (self._rect_idx(k, l, 0), self._rect_idx(k, l, 1), 1.0 if bar else -1.0)

    def block_sym_bar_sym(self):
        """T[a, b, c, d] = (d/dOmega_bar)_ab (d/dOmega)_cd, both weighted."""
        n = self.chart.n
        out = np.empty((n, n, n, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                wab = self._sym_weight(a, b)
                for c in range(n):
                    for d in range(n):
                        out[a, b, c, d] = wab * self._sym_weight(c, d) * self._combo(
                            self._sym_combo(a, b, True), self._sym_combo(c, d, False))
        return out

    def block_rect_bar_rect(self):
        """T[k, e, k2, j] = d^2 / d zbar_{ke} d z_{k2 j}."""
        n, m = self.chart.n, self.chart.m
        out = np.empty((m, n, m, n), dtype=complex)
        for k in range(m):
            for e in range(n):
                for k2 in range(m):
                    for j in range(n):
                        out[k, e, k2, j] = self._combo(
                            self._rect_combo(k, e, True), self._rect_combo(k2, j, False))
        return out

    def block_sym_bar_rect(self):
        """T[a, b, k, d] = (d/dOmega_bar)_ab d/dz_{kd}."""
        n, m = self.chart.n, self.chart.m
        out = np.empty((n, n, m, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                wab = self._sym_weight(a, b)
                for k in range(m):
                    for d in range(n):
                        out[a, b, k, d] = wab * self._combo(
                            self._sym_combo(a, b, True), self._rect_combo(k, d, False))
        return out

    def block_rect_bar_sym(self):
        """T[k, e, a, b] = d/dzbar_{ke} (d/dOmega)_ab."""
        n, m = self.chart.n, self.chart.m
        out = np.empty((m, n, n, n), dtype=complex)
        for k in range(m):
            for e in range(n):
                for a in range(n):
                    for b in range(n):
                        out[k, e, a, b] = self._sym_weight(a, b) * self._combo(
                            self._rect_combo(k, e, True), self._sym_combo(a, b, False))
        return out


def wirtinger_derivs(f, p, cfg: FDConfig = FDConfig()) -> DerivativeTable:
    """Derivative table with first and second Wirtinger derivatives at p."""
    return DerivativeTable(f, p, cfg)


# -- Laplacians on the half-space models ----------------------------------------

def _maass_contraction(y, block):
    return complex(np.einsum("ij,lk,kjli->", y, y, block))


def laplacian_siegel(f, p: SiegelPoint, a: float = 1.0, cfg: FDConfig = FDConfig(),
                     table: DerivativeTable | None = None) -> complex:
    """(4/A) tr(Y t(Y d/dOmega_bar) d/dOmega) applied to f at p."""
    if a <= 0:
        raise DomainError("metric weight must be positive")
    t = table if table is not None else DerivativeTable(f, p, cfg)
    return (4.0 / a) * _maass_contraction(p.omega.imag, t.block_sym_bar_sym())


def jacobi_laplacian_parts(f, p: JacobiPoint, cfg: FDConfig = FDConfig(),
                           table: DerivativeTable | None = None):
    """The two invariant pieces of the Laplacian on the Siegel-Jacobi space.

    Returns (part1, part2): part1 couples the omega-derivatives with the
    z-derivatives through V = Im z; part2 = tr(Y d/dZ t(d/dZ_bar)).
    """
    t = table if table is not None else DerivativeTable(f, p, cfg)
    y = p.omega.imag
    v = p.z.imag
    yi = safe_inv(y)
    obo = t.block_sym_bar_sym()
    zbz = t.block_rect_bar_rect()
    obz = t.block_sym_bar_rect()
    zbo = t.block_rect_bar_sym()
    part1 = _maass_contraction(y, obo)
    # V-quadratic piece: tr(Y S(Ebar V Y^{-1}) Y S(E V Y^{-1})) expanded, the
    # unique quadratic form compatible with the Heisenberg translations
    part1 += 0.5 * complex(np.einsum("ka,Kb,Kakb->", v, v, zbz))
    part1 += 0.5 * complex(np.einsum("kK,ef,kfKe->", v @ yi @ v.T, y, zbz))
    part1 += complex(np.einsum("kc,de,eckd->", v, y, obz))
    part1 += complex(np.einsum("kJ,je,kejJ->", v, y, zbo))
    part2 = complex(np.einsum("ij,kikj->", y, zbz))
    return part1, part2


def laplacian_jacobi(f, p: JacobiPoint, params: MetricParams = MetricParams(),
                     cfg: FDConfig = FDConfig(),
                     table: DerivativeTable | None = None) -> complex:
    part1, part2 = jacobi_laplacian_parts(f, p, cfg, table)
    return (4.0 / params.A) * part1 + (4.0 / params.B) * part2


# -- Disk operators ---------------------------------------------------------------

def _disk_mats(p: JacobiDiskPoint | DiskPoint):
    w = p.w
    wb = np.conj(w)
    eye = np.eye(p.n)
    return w, wb, eye - w @ wb, eye - wb @ w


def disk_eta_trace(f, p: JacobiDiskPoint, cfg: FDConfig = FDConfig(),
                   table: DerivativeTable | None = None) -> complex:
    """S1 = tr((I - conj(W) W) d/d eta t(d/d eta_bar))."""
    t = table if table is not None else DerivativeTable(f, p, cfg)
    _, _, _, q = _disk_mats(p)
    return complex(np.einsum("ij,kikj->", q, t.block_rect_bar_rect()))


def disk_w_part(f, p: JacobiDiskPoint, cfg: FDConfig = FDConfig(),
                table: DerivativeTable | None = None) -> complex:
    """S2: the invariant operator pairing W-derivatives with eta-derivatives.

    The W-block is tr((I - W conj(W)) dW_bar (I - conj(W) W) dW); the mixed
    blocks couple eta - conj(eta) W combinations with one W- and one
    eta-derivative; the eta-quadratic block is the unique completion making
    (1/A) S2 + (1/B) S1 the image of the half-space Laplacian under the
    partial Cayley transform.
    """
    t = table if table is not None else DerivativeTable(f, p, cfg)
    w, wb, qp, q = _disk_mats(p)
    n = p.n
    eye = np.eye(n)
    eta = p.eta
    etab = np.conj(eta)
    r = safe_inv(eye - w)
    rb = np.conj(r)
    v = eta @ r + etab @ rb
    wbw = t.block_sym_bar_sym()
    ebe = t.block_rect_bar_rect()
    wbe = t.block_sym_bar_rect()
    ebw = t.block_rect_bar_sym()
    val = _maass_contraction(qp, wbw)
    val += complex(np.einsum("kj,ec,kecj->", eta - etab @ w, q, ebw))
    val += complex(np.einsum("kc,de,eckd->", etab - eta @ wb, qp, wbe))
    g1 = v @ (eye - wb)
    g2 = v @ (eye - w)
    kmat = g1 @ safe_inv(qp) @ g2.T + etab @ (rb @ q @ r) @ eta.T
    h2 = etab @ rb @ q
    h3 = q @ r @ eta.T
    j1 = eta @ r @ qp
    val += 0.5 * complex(np.einsum("ka,Kb,Kakb->", g1, g2, ebe))
    val += 0.5 * complex(np.einsum("kK,ef,kfKe->", kmat, qp, ebe))
    val += 0.5 * complex(np.einsum("ka,Kb,Kakb->", j1 - g1, h2, ebe))
    val -= 0.5 * complex(np.einsum("kK,ef,Kekf->", v @ etab.T + eta @ v.T, q, ebe))
    val -= 0.5 * complex(np.einsum("ka,bK,kbKa->", g2, h3, ebe))
    return val


def laplacian_disk(f, p: JacobiDiskPoint, params: MetricParams = MetricParams(),
                   cfg: FDConfig = FDConfig(),
                   table: DerivativeTable | None = None) -> complex:
    """(1/A) S2 + (1/B) S1: the Laplacian of the invariant disk metric."""
    t = table if table is not None else DerivativeTable(f, p, cfg)
    return (disk_w_part(f, p, cfg, t) / params.A) + (disk_eta_trace(f, p, cfg, t) / params.B)


def disk_eta_entry(f, p: JacobiDiskPoint, k: int, l: int, cfg: FDConfig = FDConfig(),
                   table: DerivativeTable | None = None) -> complex:
    """J_{kl} = sum_{ij} (I - conj(W) W)_{ij} d^2/(d etabar_{ki} d eta_{lj})."""
    m = p.m
    if not (0 <= k < m and 0 <= l < m):
        raise DomainError(f"entry ({k}, {l}) outside index range for m={m}")
    t = table if table is not None else DerivativeTable(f, p, cfg)
    _, _, _, q = _disk_mats(p)
    ebe = t.block_rect_bar_rect()
    return complex(np.einsum("ij,ij->", q, ebe[k, :, l, :]))


def eta_pair_value(f, p: JacobiDiskPoint, hol, antihol, cfg: FDConfig) -> complex:
    """d^2 f / (d eta_{hol} d etabar_{antihol}) at p via a lean cross stencil."""
    chart = _Chart(p)
    idx = {desc: i for i, desc in enumerate(chart.coords)}
    ur, ui = idx[("rect", 0, hol)], idx[("rect", 1, hol)]
    vr, vi = idx[("rect", 0, antihol)], idx[("rect", 1, antihol)]
    h1 = cfg.step * (1.0 + abs(chart.coord_value(ur)) + abs(chart.coord_value(ui)))
    h2 = cfg.step * (1.0 + abs(chart.coord_value(vr)) + abs(chart.coord_value(vi)))
    fw = _first_weights(cfg.scheme, 1.0)

    def cross(i, j, hi, hj):
        if i == j:
            acc = 0.0 + 0.0j
            center = complex(f(p))
            for o, w in _second_same_weights(cfg.scheme, hi).items():
                acc += w * (center if o == 0 else complex(f(chart.make_point([(i, o * hi)]))))
            return acc
        acc = 0.0 + 0.0j
        for oi, wi in fw.items():
            for oj, wj in fw.items():
                acc += (wi * wj / (hi * hj)) * complex(
                    f(chart.make_point([(i, oi * hi), (j, oj * hj)])))
        return acc

    # (1/2)(du - i dv) on the holomorphic side, (1/2)(du + i dv) on the other
    return 0.25 * (cross(ur, vr, h1, h2) + 1j * cross(ur, vi, h1, h2)
                   - 1j * cross(ui, vr, h1, h2) + cross(ui, vi, h1, h2))


def disk_eta_determinant(f, p: JacobiDiskPoint, cfg: FDConfig = FDConfig(),
                         table: DerivativeTable | None = None) -> complex:
    """S3 = det(I - conj(W) W) det(d/d eta t(d/d eta_bar)).

    The operator determinant expands over permutations; for n = 1 it reduces
    to the eta-trace kernel and is read from the derivative table, while for
    n >= 2 the constant-coefficient entry operators are composed by nested
    finite differences (with an enlarged step to keep roundoff in check).
    """
    n, m = p.n, p.m
    _, _, _, q = _disk_mats(p)
    det_q = complex(np.linalg.det(q))
    if n == 1:
        t = table if table is not None else DerivativeTable(f, p, cfg)
        ebe = t.block_rect_bar_rect()
        return det_q * complex(sum(ebe[k, 0, k, 0] for k in range(m)))
    nested_cfg = FDConfig(step=max(cfg.step, 8e-3), scheme="central-4")
    total = 0.0 + 0.0j
    for perm in permutations(range(n)):
        sign = 1.0
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        for ks in np.ndindex(*([m] * n)):
            field = f
            for i in range(n - 1, 0, -1):
                field = (lambda g, kk, ii, jj:
                         lambda q_: eta_pair_value(g, q_, (kk, ii), (kk, jj), nested_cfg)
                         )(field, ks[i], i, perm[i])
            total += sign * eta_pair_value(field, p, (ks[0], 0), (ks[0], perm[0]), nested_cfg)
    return det_q * total


def disk_operator(f, p: JacobiDiskPoint, which: str, cfg: FDConfig = FDConfig(),
                  table: DerivativeTable | None = None) -> complex:
    """Dispatch: which is 's1', 's2', 's3', or 'j:k,l' (zero-based entries)."""
    name = which.strip().lower()
    if name == "s1":
        return disk_eta_trace(f, p, cfg, table)
    if name == "s2":
        return disk_w_part(f, p, cfg, table)
    if name == "s3":
        return disk_eta_determinant(f, p, cfg, table)
    if name.startswith("j:"):
        k, l = (int(x) for x in name[2:].split(","))
        return disk_eta_entry(f, p, k, l, cfg, table)
    raise DomainError(f"unknown disk operator {which!r}")


# -- Invariant polynomial generators ---------------------------------------------

def invariant_polynomial(name: str, omega, z=None) -> complex:
    """Evaluate a generator of the unitary-invariant polynomial algebra.

    Names: ``q:j`` for tr((omega conj(omega))^j) with 1 <= j <= n;
    ``phi:2k`` for tr((w conj(w))^k) with 1 <= k <= n;
    ``psi:e,2k,e':b,a`` for the quadratic-in-z family with e, e' in {0, 1},
    0 <= k <= n-1 and one-based entry indices (b, a).
    """
    omega = np.atleast_2d(np.asarray(omega, dtype=complex))
    n = omega.shape[0]
    if omega.shape != (n, n) or np.max(np.abs(omega - omega.T)) > 1e-12:
        raise DomainError("omega must be a symmetric square matrix")
    ob = np.conj(omega)
    parts = name.split(":")
    if parts[0] == "q":
        j = int(parts[1])
        if not 1 <= j <= n:
            raise DomainError(f"q index {j} outside 1..{n}")
        return complex(np.trace(np.linalg.matrix_power(omega @ ob, j)))
    if parts[0] == "phi":
        two_k = int(parts[1])
        if two_k % 2 or not 1 <= two_k // 2 <= n:
            raise DomainError(f"phi exponent {two_k} outside the generator range")
        return complex(np.trace(np.linalg.matrix_power(omega @ ob, two_k // 2)))
    if parts[0] == "psi":
        if z is None:
            raise DomainError("psi generators need the z component")
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        m = z.shape[0]
        eps, two_k, eps2 = (int(x) for x in parts[1].split(","))
        b, a = (int(x) for x in parts[2].split(","))
        if eps not in (0, 1) or eps2 not in (0, 1) or two_k % 2:
            raise DomainError(f"bad psi descriptor {name!r}")
        k = two_k // 2
        if not 0 <= k <= n - 1 or not (1 <= a <= m and 1 <= b <= m):
            raise DomainError(f"psi indices outside the generator range for (n, m)=({n}, {m})")
        zb = np.conj(z)
        core = np.linalg.matrix_power(omega @ ob, k)
        left = z @ ob if eps else zb
        mid = core @ omega if eps2 else core
        right = zb.T if eps2 else z.T
        return complex((left @ mid @ right)[b - 1, a - 1])
    raise DomainError(f"unknown invariant polynomial {name!r}")
