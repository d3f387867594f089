"""Reduction into fundamental domains with certificates.

Three layers: Minkowski reduction of positive forms (n <= 3, certified over
an enumerated vector set), Siegel reduction of half-space points (classical
scalar algorithm for n = 1, highest-point iteration with a finite candidate
scan for n in {2, 3}), and reduction of the toroidal coordinate of a
Siegel-Jacobi point by an integral Heisenberg translation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from . import groups
from .errors import ConvergenceError, DimensionError, DomainError
from .groups import (HeisenbergElement, JacobiGroupElement, SymplecticElement,
                     dilation, embedded_sl2, inversion, translation)
from .linalg import safe_inv
from .spaces import JacobiPoint, SiegelPoint

ENUM_BOUND = 3
DET_SLACK = 1e-12


@dataclass
class ReductionCertificate:
    gamma: object
    iterations: int
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


# -- Minkowski reduction ---------------------------------------------------------

def _primitive_vectors(n: int, bound: int):
    """Primitive integer vectors with |entries| <= bound, one per +- pair."""
    out = []
    for a in product(range(-bound, bound + 1), repeat=n):
        if all(x == 0 for x in a):
            continue
        g = 0
        for x in a:
            g = gcd(g, abs(x))
        if g != 1:
            continue
        first = next(x for x in a if x != 0)
        if first < 0:
            continue
        out.append(np.array(a, dtype=int))
    return out


def _minors_coprime(rows) -> bool:
    """True iff the k x k minors of the stacked rows have gcd 1 (the row set
    extends to a unimodular matrix)."""
    mat = np.array(rows, dtype=int)
    k, n = mat.shape
    from itertools import combinations
    g = 0
    for cols in combinations(range(n), k):
        minor = int(round(np.linalg.det(mat[:, cols]))) if k > 1 else int(mat[0, cols[0]])
        g = gcd(g, abs(minor))
        if g == 1:
            return True
    return g == 1


def _sign_fix(y):
    """Diagonal +-1 similarity making the superdiagonal nonnegative."""
    n = y.shape[0]
    s = np.ones(n)
    for k in range(n - 1):
        s[k + 1] = 1.0 if s[k] * y[k, k + 1] >= 0 else -1.0
    return np.diag(s.astype(int))


def minkowski_reduce(y, bound: int = ENUM_BOUND, heuristic: bool = False):
    """Greedy successive-minima reduction; returns (U y tU, U) unimodular U.

    Guaranteed mode covers n <= 3 with candidate vectors enumerated in the
    max-norm box of radius ``bound`` (the certification boundary); larger n
    requires ``heuristic=True`` and carries no certificate.
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if y.shape != (n, n) or np.max(np.abs(y - y.T)) > 1e-10:
        raise DomainError("expected a real symmetric matrix")
    if np.linalg.eigvalsh(y)[0] <= 0:
        raise DomainError("matrix is not positive definite")
    if n > 3 and not heuristic:
        raise DimensionError("guaranteed Minkowski reduction covers n <= 3 only")
    cands = _primitive_vectors(n, bound)
    vals = [(float(a @ y @ a), tuple(a)) for a in cands]
    order = sorted(range(len(cands)), key=lambda i: vals[i])
    rows = []
    for _ in range(n):
        for idx in order:
            a = cands[idx]
            if rows and not _minors_coprime(rows + [a]):
                continue
            rows.append(a)
            break
        else:
            raise DomainError("no extendable candidate vector found")
    u = np.array(rows, dtype=int)
    d = _sign_fix(u @ y @ u.T)
    u = d @ u
    return u @ y @ u.T, u


def minkowski_violations(y, bound: int = ENUM_BOUND, tol: float = 1e-9):
    """Violations of the reduction conditions over the enumerated vector box:
    for each k, vectors a with coprime tail a_k..a_n must satisfy
    a y ta >= y_kk; superdiagonal entries must be nonnegative."""
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    scale = float(np.max(np.abs(y)))
    viols = []
    for a in product(range(-bound, bound + 1), repeat=n):
        av = np.array(a)
        if not av.any():
            continue
        q = float(av @ y @ av)
        for k in range(n):
            g = 0
            for x in a[k:]:
                g = gcd(g, abs(x))
            if g != 1:
                continue
            if q < y[k, k] - tol * scale:
                viols.append((tuple(a), k, q, float(y[k, k])))
    for k in range(n - 1):
        if y[k, k + 1] < -tol * scale:
            viols.append(("superdiagonal", k, float(y[k, k + 1]), 0.0))
    return viols


# -- Siegel reduction -------------------------------------------------------------

def _candidate_generators(n: int):
    gens = []
    for i in range(n):
        b = np.zeros((n, n))
        b[i, i] = 1.0
        gens.append(translation(b))
        gens.append(translation(-b))
    for i in range(n):
        for j in range(i + 1, n):
            b = np.zeros((n, n))
            b[i, j] = b[j, i] = 1.0
            gens.append(translation(b))
            gens.append(translation(-b))
    from itertools import permutations as _perms
    for perm in _perms(range(n)):
        mat = np.eye(n)[list(perm)]
        if not np.allclose(mat, np.eye(n)):
            gens.append(dilation(mat))
    for signs in product([1.0, -1.0], repeat=n):
        if all(s == 1.0 for s in signs):
            continue
        gens.append(dilation(np.diag(signs)))
    gens.append(inversion(n))
    s_mat = [[0.0, -1.0], [1.0, 0.0]]
    for k in range(n):
        gens.append(embedded_sl2(s_mat, n, k))
    return gens


_CANDIDATE_CACHE: dict = {}


def siegel_candidates(n: int):
    """Deterministic finite candidate set: short words in the generator list."""
    if n in _CANDIDATE_CACHE:
        return _CANDIDATE_CACHE[n]
    gens = _candidate_generators(n)
    max_len = 3 if n <= 2 else 2
    seen = {}
    frontier = [SymplecticElement.identity(n)]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for g in gens:
                cand = w.multiply(g)
                key = np.round(cand.mat, 9).tobytes()
                neg = np.round(-cand.mat, 9).tobytes()
                if key in seen or neg in seen:
                    continue
                seen[key] = cand
                nxt.append(cand)
        frontier = nxt
    cands = list(seen.values())
    _CANDIDATE_CACHE[n] = cands
    return cands


def _det_im(p: SiegelPoint) -> float:
    return float(np.linalg.det(p.omega.imag))


def _reduce_degree_one(p: SiegelPoint, max_iter: int):
    omega = complex(p.omega[0, 0])
    gamma = np.eye(2)
    for it in range(max_iter):
        shift = -np.round(omega.real)
        omega += shift
        gamma = np.array([[1.0, shift], [0.0, 1.0]]) @ gamma
        if abs(omega) ** 2 < 1.0 - 1e-15:
            omega = -1.0 / omega
            gamma = np.array([[0.0, -1.0], [1.0, 0.0]]) @ gamma
            continue
        if abs(omega.real) <= 0.5:
            return SiegelPoint(np.array([[omega]])), SymplecticElement(gamma), it + 1
    raise ConvergenceError("degree-1 reduction did not converge",
                           partial=ReductionCertificate(SymplecticElement(gamma), max_iter))


def siegel_reduce(p: SiegelPoint, max_iter: int = 200):
    """Highest-point reduction to the Siegel fundamental domain.

    Returns (reduced point, certificate). The reduced point satisfies the
    Minkowski condition on Im and |Re| <= 1/2 entrywise exactly; the maximal
    det Im condition is certified against the finite candidate set only.
    """
    n = p.n
    if n == 1:
        out, gamma, iters = _reduce_degree_one(p, max_iter)
        cert = ReductionCertificate(gamma, iters)
    else:
        if n > 3:
            raise DimensionError("siegel_reduce supports n <= 3")
        cands = siegel_candidates(n)
        gamma = SymplecticElement.identity(n)
        current = p
        iters = 0
        converged = False
        while iters < max_iter:
            iters += 1
            _, u = minkowski_reduce(current.omega.imag)
            g1 = dilation(u.T.astype(float))
            current = groups.act_siegel(g1, current)
            gamma = g1.multiply(gamma)
            b = -np.round(current.omega.real)
            b = 0.5 * (b + b.T)
            g2 = translation(b)
            current = groups.act_siegel(g2, current)
            gamma = g2.multiply(gamma)
            base = _det_im(current)
            best = None
            best_val = base * (1.0 + DET_SLACK)
            for cand in cands:
                try:
                    moved = groups.act_siegel(cand, current)
                except Exception:
                    continue
                val = _det_im(moved)
                if val > best_val:
                    best, best_val = cand, val
            if best is None:
                converged = True
                break
            current = groups.act_siegel(best, current)
            gamma = best.multiply(gamma)
        if not converged:
            raise ConvergenceError("highest-point iteration hit the cap",
                                   partial=ReductionCertificate(gamma, iters))
        out = current
        cert = ReductionCertificate(gamma, iters)
    cert.checks = certificate_checks(p, out, cert.gamma)
    return out, cert


def certificate_checks(original: SiegelPoint, reduced: SiegelPoint,
                       gamma: SymplecticElement, tol: float = 1e-9) -> dict:
    replay = groups.act_siegel(gamma, original)
    checks = {
        "gamma_symplectic": gamma.is_valid(),
        "replay_matches": bool(np.max(np.abs(replay.omega - reduced.omega)) <= tol),
        "real_part_bounded": bool(np.max(np.abs(reduced.omega.real)) <= 0.5 + 1e-12),
        "im_minkowski": not minkowski_violations(reduced.omega.imag),
    }
    if reduced.n == 1:
        checks["modulus_at_least_one"] = bool(abs(reduced.omega[0, 0]) >= 1.0 - 1e-12)
    else:
        base = _det_im(reduced)
        ok = True
        for cand in siegel_candidates(reduced.n):
            if _det_im(groups.act_siegel(cand, reduced)) > base * (1.0 + tol):
                ok = False
                break
        checks["det_im_maximal_over_candidates"] = ok
    return checks


# -- Toroidal reduction ------------------------------------------------------------

def toroidal_coefficients(p: JacobiPoint):
    """Real matrices (lam, mu) with Z = lam + mu Omega entrywise."""
    y = p.omega.imag
    mu = (p.z.imag @ safe_inv(y)).real
    lam = p.z.real - mu @ p.omega.real
    return lam, mu


def jacobi_reduce(p: JacobiPoint, max_iter: int = 200):
    """Reduce Omega to the Siegel domain, then translate Z into the toroidal
    cell {lam + mu Omega : 0 <= lam, mu < 1} by an integral Heisenberg
    element; returns (reduced point, certificate with the full group element).
    """
    reduced_omega, cert_s = siegel_reduce(p.siegel_part(), max_iter)
    g_sp = JacobiGroupElement.from_symplectic(cert_s.gamma, p.m)
    moved = groups.act_jacobi(g_sp, p)
    lam_c, mu_c = toroidal_coefficients(moved)
    # the Heisenberg lambda-slot shifts the Omega-coefficient and the mu-slot
    # shifts the constant coefficient (Z -> Z + lam0 Omega + mu0)
    lam0 = -np.floor(mu_c + 1e-12)
    mu0 = -np.floor(lam_c + 1e-12)
    kappa0 = lam0 @ mu0.T
    h = HeisenbergElement(lam0, mu0, kappa0)
    g_h = JacobiGroupElement.from_heisenberg(h)
    out = groups.act_jacobi(g_h, moved)
    gamma = g_h.multiply(g_sp)
    lam_f, mu_f = toroidal_coefficients(out)
    checks = dict(cert_s.checks)
    checks.update({
        "gamma_valid": gamma.is_valid(),
        "integral_heisenberg": bool(np.allclose(lam0, np.round(lam0)) and np.allclose(mu0, np.round(mu0))),
        "cell_coefficients": bool(np.all(lam_f >= -1e-12) and np.all(lam_f < 1.0)
                                  and np.all(mu_f >= -1e-12) and np.all(mu_f < 1.0)),
    })
    replay = groups.act_jacobi(gamma, p)
    checks["replay_matches"] = bool(
        max(np.max(np.abs(replay.omega - out.omega)), np.max(np.abs(replay.z - out.z))) <= 1e-9)
    return out, ReductionCertificate(gamma, cert_s.iterations, checks)
