"""Schrodinger representation kernels, Weil-representation generator actions,
the angular-coordinate form on the upper half plane, the metaplectic cocycle,
Iwasawa composition, and theta sums with their transformation laws.

Test functions live on R^(m, n); the guaranteed quadrature mode covers
mn <= 2. Functions are represented by exact closures carrying a uniform grid
for quadrature and sup-norm comparisons, so shifts and phase twists lose no
accuracy.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError, DimensionError, DomainError, NumericError
from .groups import HeisenbergElement, SymplecticElement

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ThetaContext:
    """Index matrix, lattice truncation radius, quadrature grid settings."""

    m_mat: np.ndarray
    n: int = 1
    n_cut: int = 8
    extent: float = 8.0
    step: float = 1.0 / 16.0

    def __post_init__(self):
        m_mat = np.atleast_2d(np.asarray(self.m_mat, dtype=float))
        if m_mat.shape[0] != m_mat.shape[1] or np.max(np.abs(m_mat - m_mat.T)) > 1e-12:
            raise DomainError("index matrix must be symmetric")
        if np.max(np.abs(m_mat - np.round(m_mat))) > 1e-12:
            raise DomainError("index matrix must be integral")
        if np.linalg.eigvalsh(m_mat)[0] <= 0:
            raise DomainError("index matrix must be positive definite")
        if self.n_cut < 1:
            raise DomainError("truncation radius must be at least 1")
        ratio = self.extent / self.step
        if abs(ratio - round(ratio)) > 1e-9:
            raise DomainError("extent / step must be an integer")
        object.__setattr__(self, "m_mat", m_mat)

    @property
    def m(self) -> int:
        return self.m_mat.shape[0]

    @property
    def dim(self) -> int:
        return self.m * self.n

    def pairing(self, x, y):
        """(x, y)_M = tr(t(x) M y), vectorized over leading axes."""
        return np.einsum("...ab,ac,...cb->...", x, self.m_mat, y)

    def norm_sq(self, x):
        return self.pairing(x, x)


def _axis_nodes(extent: float, step: float):
    # spacing must equal step exactly (it is the quadrature weight); the
    # extent is enlarged to the next multiple of step
    half = int(np.ceil(extent / step - 1e-12))
    return step * np.arange(-half, half + 1)


def grid_points(ctx: ThetaContext, extent: float | None = None, step: float | None = None):
    """All grid nodes as an array of shape (count, m, n)."""
    extent = ctx.extent if extent is None else extent
    step = ctx.step if step is None else step
    axes = [_axis_nodes(extent, step)] * ctx.dim
    mesh = np.meshgrid(*axes, indexing="ij")
    flat = np.stack([g.ravel() for g in mesh], axis=-1)
    return flat.reshape(-1, ctx.m, ctx.n)


@dataclass
class GridFunction:
    """Function on R^(m, n): an exact evaluation closure plus grid metadata."""

    ctx: ThetaContext
    eval_fn: object
    kind: str = "derived"
    _samples: np.ndarray | None = field(default=None, repr=False)

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        single = x.ndim == 2
        pts = x[None, :, :] if single else x.reshape(-1, self.ctx.m, self.ctx.n)
        vals = np.asarray(self.eval_fn(pts), dtype=complex)
        if single:
            return complex(vals[0])
        return vals.reshape(x.shape[:-2])

    def samples(self):
        if self._samples is None:
            self._samples = np.asarray(self.eval_fn(grid_points(self.ctx)), dtype=complex)
        return self._samples

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.samples())))


def gaussian(ctx: ThetaContext) -> GridFunction:
    """The centered Gaussian exp(-pi ||x||^2_M)."""

    def fn(pts):
        return np.exp(-np.pi * ctx.norm_sq(pts)).astype(complex)

    return GridFunction(ctx, fn, kind="gaussian")


def gaussian_poly(ctx: ThetaContext, exponents) -> GridFunction:
    """Monomial-times-Gaussian: prod_flat x_i^{e_i} exp(-pi ||x||^2_M)."""
    exps = np.asarray(exponents, dtype=int).reshape(ctx.m, ctx.n)

    def fn(pts):
        mono = np.prod(pts ** exps[None, :, :], axis=(-2, -1))
        return mono * np.exp(-np.pi * ctx.norm_sq(pts))

    return GridFunction(ctx, fn, kind="gaussian")


def from_samples(ctx: ThetaContext, samples) -> GridFunction:
    """Sample-backed function; evaluation is exact on grid nodes only."""
    samples = np.asarray(samples, dtype=complex).ravel()
    nodes = grid_points(ctx)
    if samples.shape[0] != nodes.shape[0]:
        raise DimensionError("sample count does not match the grid")
    axis = _axis_nodes(ctx.extent, ctx.step)
    shape = (len(axis),) * ctx.dim
    cube = samples.reshape(shape)

    def fn(pts):
        flat = pts.reshape(-1, ctx.dim)
        idx = (flat + ctx.extent) / ctx.step
        rounded = np.round(idx)
        if np.max(np.abs(idx - rounded)) > 1e-9:
            raise DomainError("sample-backed functions evaluate on grid nodes only")
        if np.any(rounded < 0) or np.any(rounded >= len(axis)):
            raise DomainError("evaluation point outside the grid extent")
        return cube[tuple(rounded.astype(int).T)]

    return GridFunction(ctx, fn, kind="samples", _samples=samples)


# -- Schrodinger representation ---------------------------------------------------

def schrodinger_action(h0: HeisenbergElement, f: GridFunction,
                       ctx: ThetaContext) -> GridFunction:
    """[W(h0) f](x) = exp(pi i tr(M (kappa0 + mu0 t(lam0) + 2 x t(mu0)))) f(x + lam0)."""
    if (h0.m, h0.n) != (ctx.m, ctx.n):
        raise DimensionError("Heisenberg degrees do not match the context")
    lam0, mu0, kappa0 = h0.lam, h0.mu, h0.kappa
    if np.max(np.abs(lam0)) > ctx.extent:
        raise DomainError("shift exceeds the grid extent")
    const = np.trace(ctx.m_mat @ (kappa0 + mu0 @ lam0.T))

    def fn(pts):
        phases = np.exp(1j * np.pi * (const + 2.0 * np.einsum(
            "ab,...ac,bc->...", ctx.m_mat, pts, mu0)))
        return phases * f.eval_fn(pts + lam0[None, :, :])

    return GridFunction(ctx, fn)


# -- Weil representation: generator kernels ----------------------------------------

def _fourier_kernel_step(ctx: ThetaContext, x_max: float) -> float:
    """Step small enough to resolve exp(-2 pi i sigma(M y t(x))) oscillations."""
    m_norm = float(np.linalg.norm(ctx.m_mat, 2))
    freq = m_norm * max(x_max, 1.0)
    return min(ctx.step, 1.0 / (8.0 * freq))


def _chunked_kernel_sum(fvals, nodes, pts, phase_of_chunk, budget: int = 1 << 23):
    """sum_p fvals[p] * phase(nodes[p], pts[q]) with the target axis chunked
    so the phase matrix never exceeds the entry budget."""
    out = np.empty(pts.shape[0], dtype=complex)
    chunk = max(1, budget // max(1, nodes.shape[0]))
    for start in range(0, pts.shape[0], chunk):
        block = pts[start:start + chunk]
        out[start:start + chunk] = fvals @ phase_of_chunk(block)
    return out


def weil_generator_action(gen, f: GridFunction, ctx: ThetaContext) -> GridFunction:
    """Action of a generator tagged as ('t', b, t0), ('g', alpha, t0),
    ('sigma', t0) or ('h', heisenberg, t0)."""
    tag = gen[0]
    if tag == "h":
        _, h0, t0 = gen
        out = schrodinger_action(h0, f, ctx)
        return GridFunction(ctx, lambda pts: t0 * out.eval_fn(pts))
    if tag == "t":
        _, b, t0 = gen
        b = np.atleast_2d(np.asarray(b, dtype=float))
        if b.shape != (ctx.n, ctx.n) or np.max(np.abs(b - b.T)) > 1e-12:
            raise DomainError("translation block must be symmetric n x n")

        def fn(pts):
            quad = np.einsum("ab,...bc,cd,...ad->...", ctx.m_mat, pts, b, pts)
            return t0 * np.exp(1j * np.pi * quad) * f.eval_fn(pts)

        return GridFunction(ctx, fn)
    if tag == "g":
        _, alpha, t0 = gen
        alpha = np.atleast_2d(np.asarray(alpha, dtype=float))
        if alpha.shape != (ctx.n, ctx.n) or abs(np.linalg.det(alpha)) < 1e-12:
            raise DomainError("dilation block must be invertible n x n")
        scale = abs(np.linalg.det(alpha)) ** (ctx.m / 2.0)

        def fn(pts):
            return t0 * scale * f.eval_fn(pts @ alpha.T)

        return GridFunction(ctx, fn)
    if tag == "sigma":
        t0 = gen[1]
        if ctx.dim > 2:
            raise DomainError("guaranteed quadrature mode covers mn <= 2 only")
        det_factor = np.linalg.det(ctx.m_mat) ** (ctx.n / 2.0)

        def fn(pts):
            x_max = float(np.max(np.abs(pts))) if pts.size else 1.0
            step = _fourier_kernel_step(ctx, x_max)
            nodes = grid_points(ctx, step=step)
            fvals = np.asarray(f.eval_fn(nodes), dtype=complex)

            def phase(block):
                return np.exp(-2j * np.pi * np.einsum(
                    "ab,pbc,qac->pq", ctx.m_mat, nodes, block))

            return t0 * det_factor * (step ** ctx.dim) \
                * _chunked_kernel_sum(fvals, nodes, pts, phase)

        return GridFunction(ctx, fn)
    raise DomainError(f"unknown generator tag {tag!r}")


def conjugate_heisenberg(g: SymplecticElement, h: HeisenbergElement) -> HeisenbergElement:
    """g h g^{-1} inside the Jacobi group: (lam, mu) -> (lam, mu) g^{-1}."""
    return h.translate_right(g.inverse())


def symplectic_of_generator(gen, ctx: ThetaContext) -> SymplecticElement:
    from .groups import dilation, inversion, translation
    tag = gen[0]
    if tag == "t":
        return translation(np.atleast_2d(np.asarray(gen[1], dtype=float)))
    if tag == "g":
        return dilation(np.atleast_2d(np.asarray(gen[1], dtype=float)))
    if tag == "sigma":
        return inversion(ctx.n)
    raise DomainError(f"generator {tag!r} has no symplectic part")


def stone_von_neumann_residual(gen, h: HeisenbergElement, f: GridFunction,
                               ctx: ThetaContext) -> float:
    """Sup-norm over the grid of R(g) W(h) f - W(g h g^{-1}) R(g) f."""
    g_sp = symplectic_of_generator(gen, ctx)
    lhs = weil_generator_action(gen, schrodinger_action(h, f, ctx), ctx)
    rhs = schrodinger_action(conjugate_heisenberg(g_sp, h),
                             weil_generator_action(gen, f, ctx), ctx)
    pts = grid_points(ctx)
    return float(np.max(np.abs(lhs.eval_fn(pts) - rhs.eval_fn(pts))))


# -- SL(2, R) coordinates -----------------------------------------------------------

@dataclass(frozen=True)
class SL2Coord:
    tau: complex
    phi: float

    def __post_init__(self):
        if self.tau.imag <= 0:
            raise DomainError("tau must lie in the upper half plane")
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def u(self) -> float:
        return self.tau.real

    @property
    def v(self) -> float:
        return self.tau.imag

    def matrix(self):
        u, v, phi = self.u, self.v, self.phi
        upper = np.array([[1.0, u], [0.0, 1.0]])
        diag = np.array([[np.sqrt(v), 0.0], [0.0, 1.0 / np.sqrt(v)]])
        rot = np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])
        return upper @ diag @ rot


def iwasawa(g) -> SL2Coord:
    """Unique coordinates (tau, phi) with g = N(u) A(v) K(phi)."""
    g = np.asarray(g, dtype=float)
    if g.shape != (2, 2) or abs(np.linalg.det(g) - 1.0) > 1e-10:
        raise DomainError("expected a real 2 x 2 matrix of determinant 1")
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    den = c * c + d * d
    u = (a * c + b * d) / den
    v = 1.0 / den
    phi = float(np.arctan2(c, d)) % TWO_PI
    return SL2Coord(complex(u, v), phi)


def iwasawa_compose(c1: SL2Coord, c2: SL2Coord) -> SL2Coord:
    """Coordinates of the product, via the closed composition formulas; the
    angle is completed to [0, 2 pi) from the signs of the product's bottom row."""
    u1, v1, p1 = c1.u, c1.v, c1.phi
    u2, v2, p2 = c2.u, c2.v, c2.phi
    den = (u2 * np.sin(p1) + np.cos(p1)) ** 2 + (v2 * np.sin(p1)) ** 2
    a_num = (u1 * (u2 * np.sin(p1) + np.cos(p1)) ** 2
             + (u1 * v2 ** 2 - v1 * u2) * np.sin(p1) ** 2
             + v1 * u2 * np.cos(p1) ** 2
             + v1 * (u2 ** 2 + v2 ** 2 - 1.0) * np.sin(p1) * np.cos(p1))
    u3 = a_num / den
    v3 = v1 * v2 / den
    num = np.sin(p1) * (v2 * np.cos(p2) + u2 * np.sin(p2)) + np.cos(p1) * np.sin(p2)
    dnm = np.sin(p1) * (u2 * np.cos(p2) - v2 * np.sin(p2)) + np.cos(p1) * np.cos(p2)
    phi3 = float(np.arctan2(num, dnm)) % TWO_PI
    return SL2Coord(complex(u3, v3), phi3)


def sl2_action_on_coord(mat, c: SL2Coord) -> SL2Coord:
    """(tau, phi) -> ((a tau + b)/(c tau + d), phi + arg(c tau + d))."""
    mat = np.asarray(mat, dtype=float)
    a, b, cc, d = mat[0, 0], mat[0, 1], mat[1, 0], mat[1, 1]
    denom = cc * c.tau + d
    return SL2Coord((a * c.tau + b) / denom, c.phi + np.angle(denom))


def cocycle(m1, m2, m: int, n: int) -> complex:
    """exp(-i pi m n sign(c1 c2 c3) / 4) for the bottom-left entries of
    m1, m2 and their product."""
    m1 = np.asarray(m1, dtype=float)
    m2 = np.asarray(m2, dtype=float)
    for g in (m1, m2):
        if g.shape != (2, 2) or abs(np.linalg.det(g) - 1.0) > 1e-10:
            raise DomainError("expected real 2 x 2 matrices of determinant 1")
    c1, c2 = m1[1, 0], m2[1, 0]
    c3 = (m1 @ m2)[1, 0]
    return complex(np.exp(-1j * np.pi * m * n * np.sign(c1 * c2 * c3) / 4.0))


# -- Angular kernel and theta sums ---------------------------------------------------

PHI_GUARD = 1e-6


def _angular_kernel(f: GridFunction, ctx: ThetaContext, phi: float):
    """[R(i, phi) f] as a grid function: identity, parity flip, or the
    oscillatory integral with kernel exp(pi i ((|x|^2+|y|^2) cos phi
    - 2 (x, y)) / sin phi)."""
    phi = float(phi) % TWO_PI
    near = min(phi, abs(phi - np.pi), abs(phi - TWO_PI))
    if near == 0.0 or near < 1e-12:
        if abs(phi - np.pi) < 1e-12:
            return GridFunction(ctx, lambda pts: f.eval_fn(-pts))
        return GridFunction(ctx, f.eval_fn)
    if near < PHI_GUARD:
        raise NumericError(f"angle {phi} is too close to a multiple of pi "
                           "for the oscillatory kernel")
    if ctx.dim > 2:
        raise DomainError("guaranteed quadrature mode covers mn <= 2 only")
    sin_phi = np.sin(phi)
    cos_phi = np.cos(phi)
    det_factor = np.linalg.det(ctx.m_mat) ** (ctx.n / 2.0)
    pref = det_factor * abs(sin_phi) ** (-ctx.dim / 2.0)

    def fn(pts):
        x_max = float(np.max(np.abs(pts))) if pts.size else 1.0
        m_norm = float(np.linalg.norm(ctx.m_mat, 2))
        freq = m_norm * (abs(cos_phi) * ctx.extent + x_max) / abs(sin_phi) + 1.0
        step = min(ctx.step, 1.0 / (8.0 * freq))
        if ctx.extent / step > 2e5:
            raise AccuracyError("oscillatory kernel would need too fine a grid")
        nodes = grid_points(ctx, step=step)
        fvals = np.asarray(f.eval_fn(nodes), dtype=complex)
        ny = ctx.norm_sq(nodes)

        def phase(block):
            nx = ctx.norm_sq(block)
            cross = np.einsum("pab,ac,qcb->pq", nodes, ctx.m_mat, block)
            return np.exp(1j * np.pi * (
                (ny[:, None] + nx[None, :]) * cos_phi - 2.0 * cross) / sin_phi)

        return pref * (step ** ctx.dim) * _chunked_kernel_sum(fvals, nodes, pts, phase)

    return GridFunction(ctx, fn)


def weil_sl2_action(coord: SL2Coord, f: GridFunction, ctx: ThetaContext) -> GridFunction:
    """[R(tau, phi) f](x) = v^{mn/4} exp(pi i u ||x||^2_M) [R(i, phi) f](sqrt(v) x)."""
    kernel = _angular_kernel(f, ctx, coord.phi)
    u, v = coord.u, coord.v
    pref = v ** (ctx.dim / 4.0)
    root_v = np.sqrt(v)

    def fn(pts):
        return pref * np.exp(1j * np.pi * u * ctx.norm_sq(pts)) \
            * kernel.eval_fn(root_v * pts)

    return GridFunction(ctx, fn)


def weil_matrix_action(mat, f: GridFunction, ctx: ThetaContext) -> GridFunction:
    """The same operator from the matrix-entry kernel: |a|^{mn/2}
    e^{pi i a b ||x||^2} f(a x) when c = 0, otherwise the oscillatory integral
    with phase (a ||x||^2 + d ||y||^2 - 2 (x, y)) / c."""
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (2, 2) or abs(np.linalg.det(mat) - 1.0) > 1e-10:
        raise DomainError("expected a real 2 x 2 matrix of determinant 1")
    a, b, c, d = mat[0, 0], mat[0, 1], mat[1, 0], mat[1, 1]
    if abs(c) < 1e-14:
        def fn(pts):
            return abs(a) ** (ctx.dim / 2.0) \
                * np.exp(1j * np.pi * a * b * ctx.norm_sq(pts)) * f.eval_fn(a * pts)

        return GridFunction(ctx, fn)
    det_factor = np.linalg.det(ctx.m_mat) ** (ctx.n / 2.0)
    pref = det_factor * abs(c) ** (-ctx.dim / 2.0)

    def fn(pts):
        x_max = float(np.max(np.abs(pts))) if pts.size else 1.0
        m_norm = float(np.linalg.norm(ctx.m_mat, 2))
        freq = m_norm * (abs(d) * ctx.extent + x_max) / abs(c) + 1.0
        step = min(ctx.step, 1.0 / (8.0 * freq))
        nodes = grid_points(ctx, step=step)
        fvals = np.asarray(f.eval_fn(nodes), dtype=complex)
        ny = ctx.norm_sq(nodes)

        def phase(block):
            nx = ctx.norm_sq(block)
            cross = np.einsum("pab,ac,qcb->pq", nodes, ctx.m_mat, block)
            return np.exp(1j * np.pi * (
                a * nx[None, :] + d * ny[:, None] - 2.0 * cross) / c)

        return pref * (step ** ctx.dim) * _chunked_kernel_sum(fvals, nodes, pts, phase)

    return GridFunction(ctx, fn)


def lattice_points(ctx: ThetaContext):
    from itertools import product as _product
    rng = range(-ctx.n_cut, ctx.n_cut + 1)
    pts = np.array(list(_product(rng, repeat=ctx.dim)), dtype=float)
    return pts.reshape(-1, ctx.m, ctx.n)


def theta_sum(f: GridFunction, ctx: ThetaContext, coord: SL2Coord,
              h: HeisenbergElement, tail_tol: float = 1e-10) -> complex:
    """Sum over the integer lattice of [W(h) R(tau, phi) f](omega)."""
    if (h.m, h.n) != (ctx.m, ctx.n):
        raise DimensionError("Heisenberg degrees do not match the context")
    transformed = schrodinger_action(h, weil_sl2_action(coord, f, ctx), ctx)
    lattice = lattice_points(ctx)
    terms = np.asarray(transformed.eval_fn(lattice), dtype=complex)
    total = complex(np.sum(terms))
    shell = np.max(np.abs(lattice), axis=(1, 2)) >= ctx.n_cut
    tail = float(np.max(np.abs(terms[shell])))
    if tail > tail_tol * max(1.0, abs(total)):
        raise AccuracyError(f"boundary lattice terms of size {tail:.2e} violate "
                            "the truncation budget; increase n_cut")
    return total


def theta_left_translate(coord: SL2Coord, lam, mu, gamma_mat, l0, m0):
    """Theta parameters after left multiplication by the group element
    (gamma, (l0, m0)): the coordinates move by the fractional-linear action
    and (lam, mu) maps to ((lam, mu) + (l0, m0)) gamma^{-1}."""
    gamma_mat = np.asarray(gamma_mat, dtype=float)
    new_coord = sl2_action_on_coord(gamma_mat, coord)
    inv = np.linalg.inv(gamma_mat)
    a = np.asarray(lam, dtype=float) + np.asarray(l0, dtype=float)
    b = np.asarray(mu, dtype=float) + np.asarray(m0, dtype=float)
    return new_coord, a * inv[0, 0] + b * inv[1, 0], a * inv[0, 1] + b * inv[1, 1]
