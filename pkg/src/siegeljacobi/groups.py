"""Group elements and the four transitive actions.

Covered here: the real symplectic group, the Heisenberg group of degree
(n, m), their semidirect product (the Jacobi group), the conjugated group
acting on the disk models, and the embedding of the Jacobi group into it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError, DomainError
from .linalg import safe_solve
from .spaces import DiskPoint, JacobiDiskPoint, JacobiPoint, SiegelPoint

GROUP_TOL = 1e-10


def symplectic_form(n: int):
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


@dataclass(frozen=True)
class SymplecticElement:
    """Real 2n x 2n matrix M with  t(M) J M = J."""

    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] % 2:
            raise DimensionError(f"symplectic matrix must be 2n x 2n, got {mat.shape}")
        object.__setattr__(self, "mat", mat)

    @classmethod
    def create(cls, mat):
        g = cls(mat)
        if not g.is_valid():
            raise DomainError("matrix fails the symplectic relation")
        return g

    @classmethod
    def identity(cls, n: int):
        return cls(np.eye(2 * n))

    @property
    def n(self) -> int:
        return self.mat.shape[0] // 2

    def blocks(self):
        n = self.n
        m = self.mat
        return m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]

    def is_valid(self, tol: float = GROUP_TOL) -> bool:
        j = symplectic_form(self.n)
        return bool(np.max(np.abs(self.mat.T @ j @ self.mat - j)) <= tol)

    def multiply(self, other: "SymplecticElement") -> "SymplecticElement":
        if self.n != other.n:
            raise DimensionError("degree mismatch")
        return SymplecticElement(self.mat @ other.mat)

    def inverse(self) -> "SymplecticElement":
        # t(M) J M = J gives M^{-1} = J^{-1} t(M) J without a linear solve.
        j = symplectic_form(self.n)
        return SymplecticElement(-j @ self.mat.T @ j)

    def to_json(self) -> dict:
        return {"kind": "symplectic", "mat": linalg.matrix_to_json(self.mat)}


@dataclass(frozen=True)
class HeisenbergElement:
    """Heisenberg element (lam, mu; kappa) with kappa + mu t(lam) symmetric."""

    lam: np.ndarray
    mu: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        lam = np.atleast_2d(np.asarray(self.lam, dtype=float))
        mu = np.atleast_2d(np.asarray(self.mu, dtype=float))
        kappa = np.atleast_2d(np.asarray(self.kappa, dtype=float))
        if lam.shape != mu.shape:
            raise DimensionError(f"lam {lam.shape} and mu {mu.shape} differ")
        m = lam.shape[0]
        if kappa.shape != (m, m):
            raise DimensionError(f"kappa must be {m} x {m}, got {kappa.shape}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "kappa", kappa)

    @classmethod
    def create(cls, lam, mu, kappa):
        h = cls(lam, mu, kappa)
        if not h.is_valid():
            raise DomainError("kappa + mu t(lam) is not symmetric")
        return h

    @classmethod
    def identity(cls, n: int, m: int):
        z = np.zeros((m, n))
        return cls(z, z.copy(), np.zeros((m, m)))

    @property
    def m(self) -> int:
        return self.lam.shape[0]

    @property
    def n(self) -> int:
        return self.lam.shape[1]

    def is_valid(self, tol: float = GROUP_TOL) -> bool:
        s = self.kappa + self.mu @ self.lam.T
        return bool(np.max(np.abs(s - s.T)) <= tol)

    def multiply(self, other: "HeisenbergElement") -> "HeisenbergElement":
        if (self.m, self.n) != (other.m, other.n):
            raise DimensionError("degree mismatch")
        kappa = self.kappa + other.kappa + self.lam @ other.mu.T - self.mu @ other.lam.T
        return HeisenbergElement(self.lam + other.lam, self.mu + other.mu, kappa)

    def inverse(self) -> "HeisenbergElement":
        kappa = -self.kappa + self.lam @ self.mu.T - self.mu @ self.lam.T
        return HeisenbergElement(-self.lam, -self.mu, kappa)

    def translate_right(self, sp: SymplecticElement) -> "HeisenbergElement":
        """(lam, mu) -> (lam, mu) M, kappa unchanged."""
        lm = np.hstack([self.lam, self.mu]) @ sp.mat
        n = self.n
        return HeisenbergElement(lm[:, :n], lm[:, n:], self.kappa)

    def to_json(self) -> dict:
        return {"kind": "heisenberg",
                "lam": linalg.matrix_to_json(self.lam),
                "mu": linalg.matrix_to_json(self.mu),
                "kappa": linalg.matrix_to_json(self.kappa)}


def heisenberg_multiply(h1: HeisenbergElement, h2: HeisenbergElement) -> HeisenbergElement:
    return h1.multiply(h2)


@dataclass(frozen=True)
class JacobiGroupElement:
    """Pair of a symplectic part and a Heisenberg part."""

    sp: SymplecticElement
    h: HeisenbergElement

    def __post_init__(self):
        if self.sp.n != self.h.n:
            raise DimensionError("symplectic and Heisenberg degrees differ")

    @classmethod
    def create(cls, sp: SymplecticElement, h: HeisenbergElement):
        g = cls(sp, h)
        if not g.is_valid():
            raise DomainError("invalid Jacobi group element")
        return g

    @classmethod
    def identity(cls, n: int, m: int):
        return cls(SymplecticElement.identity(n), HeisenbergElement.identity(n, m))

    @classmethod
    def from_symplectic(cls, sp: SymplecticElement, m: int):
        return cls(sp, HeisenbergElement.identity(sp.n, m))

    @classmethod
    def from_heisenberg(cls, h: HeisenbergElement):
        return cls(SymplecticElement.identity(h.n), h)

    @property
    def n(self) -> int:
        return self.sp.n

    @property
    def m(self) -> int:
        return self.h.m

    def is_valid(self, tol: float = GROUP_TOL) -> bool:
        return self.sp.is_valid(tol) and self.h.is_valid(tol)

    def multiply(self, other: "JacobiGroupElement") -> "JacobiGroupElement":
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionError("degree mismatch")
        return JacobiGroupElement(self.sp.multiply(other.sp),
                                  self.h.translate_right(other.sp).multiply(other.h))

    def inverse(self) -> "JacobiGroupElement":
        sp_inv = self.sp.inverse()
        return JacobiGroupElement(sp_inv, self.h.inverse().translate_right(sp_inv))

    def to_json(self) -> dict:
        return {"kind": "jacobi", "sp": self.sp.to_json(), "h": self.h.to_json()}


def jacobi_multiply(g1: JacobiGroupElement, g2: JacobiGroupElement) -> JacobiGroupElement:
    return g1.multiply(g2)


@dataclass(frozen=True)
class StarGroupElement:
    """Element of the conjugated Jacobi group acting on the disk models.

    The symplectic part is the block matrix [[P, Q], [conj(Q), conj(P)]]; the
    Heisenberg part is stored as (xi, kappa) for the redundant complex triple
    (xi, conj(xi); i kappa).
    """

    p: np.ndarray
    q: np.ndarray
    xi: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        p = linalg.require_square(self.p, "p")
        q = linalg.require_square(self.q, "q")
        xi = np.atleast_2d(np.asarray(self.xi, dtype=complex))
        kappa = np.atleast_2d(np.asarray(self.kappa, dtype=float))
        if p.shape != q.shape:
            raise DimensionError("p and q shapes differ")
        if xi.shape[1] != p.shape[0]:
            raise DimensionError("xi column count must match the degree")
        if kappa.shape != (xi.shape[0],) * 2:
            raise DimensionError("kappa must be m x m")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "kappa", kappa)

    @classmethod
    def create(cls, p, q, xi, kappa):
        g = cls(p, q, xi, kappa)
        if not g.is_valid():
            raise DomainError("invalid star group element")
        return g

    @classmethod
    def identity(cls, n: int, m: int):
        return cls(np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex),
                   np.zeros((m, n), dtype=complex), np.zeros((m, m)))

    @property
    def n(self) -> int:
        return self.p.shape[0]

    @property
    def m(self) -> int:
        return self.xi.shape[0]

    def is_valid(self, tol: float = GROUP_TOL) -> bool:
        n = self.n
        r1 = self.p.T @ self.p.conj() - self.q.conj().T @ self.q - np.eye(n)
        r2 = self.p.T @ self.q.conj() - self.q.conj().T @ self.p
        zeta = 1j * self.kappa + self.xi.conj() @ self.xi.T
        r3 = zeta - zeta.T
        return bool(max(np.max(np.abs(r1)), np.max(np.abs(r2)), np.max(np.abs(r3))) <= tol)

    def multiply(self, other: "StarGroupElement") -> "StarGroupElement":
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionError("degree mismatch")
        p3 = self.p @ other.p + self.q @ other.q.conj()
        q3 = self.p @ other.q + self.q @ other.p.conj()
        # Heisenberg part multiplies inside the complex Heisenberg group after
        # right translation by the second symplectic part.
        xi_t = self.xi @ other.p + self.xi.conj() @ other.q.conj()
        eta_t = self.xi @ other.q + self.xi.conj() @ other.p.conj()
        zeta3 = (1j * self.kappa + 1j * other.kappa
                 + xi_t @ other.xi.conj().T - eta_t @ other.xi.T)
        return StarGroupElement(p3, q3, xi_t + other.xi, (-1j * zeta3).real)

    def to_json(self) -> dict:
        return {"kind": "star",
                "p": linalg.matrix_to_json(self.p), "q": linalg.matrix_to_json(self.q),
                "xi": linalg.matrix_to_json(self.xi), "kappa": linalg.matrix_to_json(self.kappa)}


def embed_star(g: JacobiGroupElement) -> StarGroupElement:
    """Conjugation of a Jacobi group element into the disk-model group."""
    a, b, c, d = g.sp.blocks()
    p = 0.5 * ((a + d) + 1j * (b - c))
    q = 0.5 * ((a - d) - 1j * (b + c))
    xi = 0.5 * (g.h.lam + 1j * g.h.mu)
    return StarGroupElement(p, q, xi, -0.5 * g.h.kappa)


# -- Actions ------------------------------------------------------------------

def act_siegel(g: SymplecticElement, p: SiegelPoint) -> SiegelPoint:
    """Fractional-linear action (A omega + B)(C omega + D)^{-1}."""
    if g.n != p.n:
        raise DimensionError("degree mismatch")
    a, b, c, d = g.blocks()
    denom = c @ p.omega + d
    new_omega = safe_solve(denom.T, (a @ p.omega + b).T).T
    return SiegelPoint(linalg.symmetrize(new_omega))


def act_jacobi(g: JacobiGroupElement, p: JacobiPoint) -> JacobiPoint:
    if (g.n, g.m) != (p.n, p.m):
        raise DimensionError("degree mismatch")
    a, b, c, d = g.sp.blocks()
    denom = c @ p.omega + d
    new_omega = safe_solve(denom.T, (a @ p.omega + b).T).T
    new_z = safe_solve(denom.T, (p.z + g.h.lam @ p.omega + g.h.mu).T).T
    return JacobiPoint(linalg.symmetrize(new_omega), new_z)


def act_disk(g: StarGroupElement, p: DiskPoint) -> DiskPoint:
    if g.n != p.n:
        raise DimensionError("degree mismatch")
    denom = g.q.conj() @ p.w + g.p.conj()
    new_w = safe_solve(denom.T, (g.p @ p.w + g.q).T).T
    return DiskPoint(linalg.symmetrize(new_w))


def act_jacobi_disk(g: StarGroupElement, p: JacobiDiskPoint) -> JacobiDiskPoint:
    if (g.n, g.m) != (p.n, p.m):
        raise DimensionError("degree mismatch")
    denom = g.q.conj() @ p.w + g.p.conj()
    new_w = safe_solve(denom.T, (g.p @ p.w + g.q).T).T
    new_eta = safe_solve(denom.T, (p.eta + g.xi @ p.w + g.xi.conj()).T).T
    return JacobiDiskPoint(linalg.symmetrize(new_w), new_eta)


def act(g, p):
    """Dispatch to the action matching the element/point types."""
    if isinstance(g, SymplecticElement) and isinstance(p, SiegelPoint):
        return act_siegel(g, p)
    if isinstance(g, JacobiGroupElement) and isinstance(p, JacobiPoint):
        return act_jacobi(g, p)
    if isinstance(g, StarGroupElement) and isinstance(p, DiskPoint):
        return act_disk(g, p)
    if isinstance(g, StarGroupElement) and isinstance(p, JacobiDiskPoint):
        return act_jacobi_disk(g, p)
    raise DomainError(f"no action of {type(g).__name__} on {type(p).__name__}")


# -- Generators and random words ----------------------------------------------

def translation(b) -> SymplecticElement:
    """t(b): omega -> omega + b for symmetric b."""
    b = np.asarray(b, dtype=float)
    b = np.atleast_2d(b)
    if not np.allclose(b, b.T, atol=1e-12):
        raise DomainError("translation block must be symmetric")
    n = b.shape[0]
    mat = np.eye(2 * n)
    mat[:n, n:] = 0.5 * (b + b.T)
    return SymplecticElement(mat)


def dilation(alpha) -> SymplecticElement:
    """g(alpha): omega -> t(alpha) omega alpha for invertible alpha."""
    alpha = np.atleast_2d(np.asarray(alpha, dtype=float))
    n = alpha.shape[0]
    mat = np.zeros((2 * n, 2 * n))
    mat[:n, :n] = alpha.T
    mat[n:, n:] = np.linalg.inv(alpha)
    return SymplecticElement(mat)


def inversion(n: int) -> SymplecticElement:
    """sigma_n: omega -> -omega^{-1}."""
    mat = np.zeros((2 * n, 2 * n))
    mat[:n, n:] = -np.eye(n)
    mat[n:, :n] = np.eye(n)
    return SymplecticElement(mat)


def embedded_sl2(m2, n: int, slot: int) -> SymplecticElement:
    """An SL(2, R) matrix acting on one diagonal coordinate of the half space."""
    a, b, c, d = (float(m2[0][0]), float(m2[0][1]), float(m2[1][0]), float(m2[1][1]))
    mat = np.eye(2 * n)
    mat[slot, slot] = a
    mat[slot, n + slot] = b
    mat[n + slot, slot] = c
    mat[n + slot, n + slot] = d
    return SymplecticElement(mat)


def random_symplectic(n: int, rng, max_word: int = 6) -> SymplecticElement:
    """Bounded random word in t(b), g(alpha), sigma_n."""
    g = SymplecticElement.identity(n)
    length = int(rng.integers(0, max_word + 1))
    for _ in range(length):
        kind = int(rng.integers(0, 3))
        if kind == 0:
            b = rng.uniform(-1.0, 1.0, size=(n, n))
            g = g.multiply(translation(0.5 * (b + b.T)))
        elif kind == 1:
            alpha = np.eye(n) + 0.25 * rng.uniform(-1.0, 1.0, size=(n, n))
            g = g.multiply(dilation(alpha))
        else:
            g = g.multiply(inversion(n))
    return g


def random_heisenberg(n: int, m: int, rng) -> HeisenbergElement:
    lam = rng.uniform(-1.0, 1.0, size=(m, n))
    mu = rng.uniform(-1.0, 1.0, size=(m, n))
    sym = rng.uniform(-1.0, 1.0, size=(m, m))
    # kappa + mu t(lam) equals the symmetric draw by construction
    kappa = 0.5 * (sym + sym.T) - mu @ lam.T
    return HeisenbergElement(lam, mu, kappa)


def random_jacobi(n: int, m: int, rng, max_word: int = 6) -> JacobiGroupElement:
    return JacobiGroupElement(random_symplectic(n, rng, max_word), random_heisenberg(n, m, rng))


def random_element(seed, kind: str, n: int = 1, m: int = 1, max_word: int = 6):
    """Deterministic well-conditioned random element of the requested kind."""
    rng = np.random.default_rng(seed)
    if kind == "symplectic":
        return random_symplectic(n, rng, max_word)
    if kind == "heisenberg":
        return random_heisenberg(n, m, rng)
    if kind == "jacobi":
        return random_jacobi(n, m, rng, max_word)
    if kind == "star":
        return embed_star(random_jacobi(n, m, rng, max_word))
    raise DomainError(f"unknown element kind {kind!r}")


def parse_generator_word(word: str, n: int) -> SymplecticElement:
    """Build a symplectic element from a word like ``t(0.5);g(1.2);s``.

    ``t(x)`` translates by x * (ones symmetric), ``g(x)`` dilates by
    I + x * ones / n, and ``s`` is the inversion; terms compose left to right.
    """
    g = SymplecticElement.identity(n)
    for raw in word.split(";"):
        tok = raw.strip()
        if not tok:
            continue
        if tok == "s":
            g = g.multiply(inversion(n))
        elif tok.startswith("t(") and tok.endswith(")"):
            x = float(tok[2:-1])
            g = g.multiply(translation(x * np.ones((n, n))))
        elif tok.startswith("g(") and tok.endswith(")"):
            x = float(tok[2:-1])
            g = g.multiply(dilation(np.eye(n) + (x / n) * np.ones((n, n))))
        else:
            raise DomainError(f"cannot parse generator token {tok!r}")
    return g


def element_from_json(obj):
    """Decode a group element from its JSON object by the ``kind`` tag."""
    kind = obj.get("kind")
    if kind == "symplectic":
        return SymplecticElement.create(linalg.matrix_from_json(obj["mat"]).real)
    if kind == "heisenberg":
        return HeisenbergElement.create(linalg.matrix_from_json(obj["lam"]).real,
                                        linalg.matrix_from_json(obj["mu"]).real,
                                        linalg.matrix_from_json(obj["kappa"]).real)
    if kind == "jacobi":
        return JacobiGroupElement.create(element_from_json(obj["sp"]),
                                         element_from_json(obj["h"]))
    if kind == "star":
        return StarGroupElement.create(linalg.matrix_from_json(obj["p"]),
                                       linalg.matrix_from_json(obj["q"]),
                                       linalg.matrix_from_json(obj["xi"]),
                                       linalg.matrix_from_json(obj["kappa"]).real)
    raise DomainError(f"unknown element kind {kind!r}")
