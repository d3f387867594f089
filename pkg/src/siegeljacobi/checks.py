"""Reproducible invariant batteries behind the CLI ``check`` command and the
acceptance suite. Every case compares two independently computed quantities
and records (case, lhs, rhs, residual, tol, pass)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cayley, diffops, fields, geodesics, groups, jacobiforms, metrics
from . import reduction, sampling, theta
from .diffops import DerivativeTable, FDConfig
from .groups import HeisenbergElement
from .metrics import MetricParams
from .spaces import JacobiPoint, SiegelPoint, TangentVector


@dataclass
class CheckRow:
    case: str
    lhs: float
    rhs: float
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol

    def csv(self) -> str:
        return (f"{self.case},{self.lhs!r},{self.rhs!r},"
                f"{self.residual!r},{self.tol!r},{str(self.passed).lower()}")


def _row(rows, case, lhs, rhs, tol, scale=1.0):
    lhs_v = complex(lhs)
    rhs_v = complex(rhs)
    resid = abs(lhs_v - rhs_v) / scale
    rows.append(CheckRow(case, abs(lhs_v), abs(rhs_v), resid, tol))


def _max_abs(*arrays) -> float:
    return max(float(np.max(np.abs(a))) for a in arrays)


# -- actions ------------------------------------------------------------------------

def suite_actions(seed: int = 0, tol_scale: float = 1.0, samples: int = 100):
    rng = np.random.default_rng(seed)
    rows = []
    tol = 1e-10 * tol_scale
    degrees = [(1, 1), (2, 1), (2, 2), (3, 1)]
    for i in range(samples):
        n, m = degrees[i % len(degrees)]
        p = sampling.random_siegel_point(n, rng)
        g1 = groups.random_symplectic(n, rng, 4)
        g2 = groups.random_symplectic(n, rng, 4)
        lhs = groups.act_siegel(g1.multiply(g2), p)
        rhs = groups.act_siegel(g1, groups.act_siegel(g2, p))
        rows.append(CheckRow(f"siegel_axiom_{i:03d}", 0.0, 0.0,
                             _max_abs(lhs.omega - rhs.omega), tol))
        pj = sampling.random_jacobi_point(n, m, rng)
        j1 = groups.random_jacobi(n, m, rng, 4)
        j2 = groups.random_jacobi(n, m, rng, 4)
        lhs_j = groups.act_jacobi(j1.multiply(j2), pj)
        rhs_j = groups.act_jacobi(j1, groups.act_jacobi(j2, pj))
        rows.append(CheckRow(f"jacobi_axiom_{i:03d}", 0.0, 0.0,
                             _max_abs(lhs_j.omega - rhs_j.omega, lhs_j.z - rhs_j.z), tol))
        pd = sampling.random_disk_point(n, rng)
        s1 = groups.embed_star(groups.random_jacobi(n, m, rng, 4))
        s2 = groups.embed_star(groups.random_jacobi(n, m, rng, 4))
        lhs_d = groups.act_disk(s1.multiply(s2), pd)
        rhs_d = groups.act_disk(s1, groups.act_disk(s2, pd))
        rows.append(CheckRow(f"disk_axiom_{i:03d}", 0.0, 0.0,
                             _max_abs(lhs_d.w - rhs_d.w), tol))
        pjd = sampling.random_jacobi_disk_point(n, m, rng)
        lhs_jd = groups.act_jacobi_disk(s1.multiply(s2), pjd)
        rhs_jd = groups.act_jacobi_disk(s1, groups.act_jacobi_disk(s2, pjd))
        rows.append(CheckRow(f"jacobi_disk_axiom_{i:03d}", 0.0, 0.0,
                             _max_abs(lhs_jd.w - rhs_jd.w, lhs_jd.eta - rhs_jd.eta), tol))
        if not (lhs.is_valid() and lhs_j.is_valid() and lhs_d.is_valid() and lhs_jd.is_valid()):
            rows.append(CheckRow(f"validity_{i:03d}", 0.0, 0.0, 1.0, tol))
        # embedding homomorphism on the very elements used above
        hom = groups.embed_star(j1.multiply(j2))
        prod = groups.embed_star(j1).multiply(groups.embed_star(j2))
        rows.append(CheckRow(f"embedding_hom_{i:03d}", 0.0, 0.0,
                             _max_abs(hom.p - prod.p, hom.q - prod.q,
                                      hom.xi - prod.xi, hom.kappa - prod.kappa), tol))
    return rows


# -- cayley --------------------------------------------------------------------------

def suite_cayley(seed: int = 0, tol_scale: float = 1.0, samples: int = 50):
    rng = np.random.default_rng(seed)
    rows = []
    tol_compat = 1e-9 * tol_scale
    tol_round = 1e-12 * tol_scale
    degrees = [(1, 1), (2, 1), (2, 2), (3, 2)]
    for i in range(samples):
        n, m = degrees[i % len(degrees)]
        w = sampling.random_disk_point(n, rng)
        mat = groups.random_symplectic(n, rng, 4)
        star = groups.embed_star(groups.JacobiGroupElement.from_symplectic(mat, m))
        lhs = groups.act_siegel(mat, cayley.cayley(w))
        rhs = cayley.cayley(groups.act_disk(star, w))
        rows.append(CheckRow(f"compat_disk_{i:03d}", 0.0, 0.0,
                             _max_abs(lhs.omega - rhs.omega), tol_compat))
        pjd = sampling.random_jacobi_disk_point(n, m, rng)
        g0 = groups.random_jacobi(n, m, rng, 4)
        lhs_j = groups.act_jacobi(g0, cayley.partial_cayley(pjd))
        rhs_j = cayley.partial_cayley(groups.act_jacobi_disk(groups.embed_star(g0), pjd))
        rows.append(CheckRow(f"compat_jacobi_{i:03d}", 0.0, 0.0,
                             _max_abs(lhs_j.omega - rhs_j.omega, lhs_j.z - rhs_j.z),
                             tol_compat))
        pj = sampling.random_jacobi_point(n, m, rng)
        back = cayley.partial_cayley(cayley.partial_cayley_inverse(pj))
        rows.append(CheckRow(f"roundtrip_{i:03d}", 0.0, 0.0,
                             _max_abs(back.omega - pj.omega, back.z - pj.z), tol_round))
        fwd = cayley.partial_cayley_inverse(cayley.partial_cayley(pjd))
        rows.append(CheckRow(f"roundtrip_disk_{i:03d}", 0.0, 0.0,
                             _max_abs(fwd.w - pjd.w, fwd.eta - pjd.eta), tol_round))
    return rows


# -- metrics -------------------------------------------------------------------------

def suite_metrics(seed: int = 0, tol_scale: float = 1.0, samples: int = 50):
    rng = np.random.default_rng(seed)
    rows = []
    params = MetricParams(1.0, 1.0)
    degrees = [(1, 1), (2, 1), (2, 2)]
    for i in range(samples):
        n, m = degrees[i % len(degrees)]
        p = sampling.random_jacobi_point(n, m, rng)
        t1 = sampling.random_tangent(n, m, rng)
        t2 = sampling.random_tangent(n, m, rng)
        g = groups.random_jacobi(n, m, rng, 3)
        base = metrics.jacobi_metric(p, t1, t2, params)
        moved = metrics.jacobi_metric(groups.act_jacobi(g, p),
                                      metrics.pushforward(g, p, t1, "fd"),
                                      metrics.pushforward(g, p, t2, "fd"), params)
        _row(rows, f"jacobi_invariance_{i:03d}", base, moved, 1e-5 * tol_scale,
             scale=max(1.0, abs(base)))
        ps = p.siegel_part()
        ts1 = TangentVector.omega_only(t1.d_omega)
        ts2 = TangentVector.omega_only(t2.d_omega)
        mat = groups.random_symplectic(n, rng, 4)
        base_s = metrics.siegel_metric(ps, ts1, ts2, 1.0)
        moved_s = metrics.siegel_metric(groups.act_siegel(mat, ps),
                                        metrics.pushforward(mat, ps, ts1, "exact"),
                                        metrics.pushforward(mat, ps, ts2, "exact"), 1.0)
        _row(rows, f"siegel_invariance_{i:03d}", base_s, moved_s, 1e-9 * tol_scale,
             scale=max(1.0, abs(base_s)))
        pd = sampling.random_jacobi_disk_point(n, m, rng)
        lhs = metrics.jacobi_disk_metric(pd, t1, t2, params)
        t1p = metrics.map_differential(cayley.partial_cayley, pd, t1)
        t2p = metrics.map_differential(cayley.partial_cayley, pd, t2)
        rhs = metrics.jacobi_metric(cayley.partial_cayley(pd), t1p, t2p, params)
        _row(rows, f"partial_cayley_isometry_{i:03d}", lhs, rhs, 1e-5 * tol_scale,
             scale=max(1.0, abs(rhs)))
        if i % 5 == 0:
            dens = metrics.volume_density(ps)
            jac = metrics.real_jacobian_det(lambda q: groups.act_siegel(mat, q), ps)
            dens_m = metrics.volume_density(groups.act_siegel(mat, ps)) * abs(jac)
            _row(rows, f"volume_invariance_{i:03d}", dens, dens_m, 1e-6 * tol_scale,
                 scale=max(1.0, abs(dens)))
    # closed form at degree (1, 1), entrywise
    basis = [TangentVector(np.array([[1.0 + 0j]]), np.zeros((1, 1), complex)),
             TangentVector(np.array([[1.0j]]), np.zeros((1, 1), complex)),
             TangentVector(np.zeros((1, 1), complex), np.array([[1.0 + 0j]])),
             TangentVector(np.zeros((1, 1), complex), np.array([[1.0j]]))]
    for i in range(10):
        p = sampling.random_jacobi_point(1, 1, rng)
        y = p.omega[0, 0].imag
        v = p.z[0, 0].imag
        gram = np.array([[metrics.jacobi_metric(p, a, b, params).real for b in basis]
                         for a in basis])
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[1, 1] = (y + v * v) / y**3
        expected[2, 2] = expected[3, 3] = 1.0 / y
        expected[0, 2] = expected[2, 0] = expected[1, 3] = expected[3, 1] = -v / y**2
        rows.append(CheckRow(f"closed_form_11_{i:03d}", 0.0, 0.0,
                             float(np.max(np.abs(gram - expected))), 1e-12 * tol_scale))
    return rows


# -- laplacians ----------------------------------------------------------------------

def suite_laplacians(seed: int = 0, tol_scale: float = 1.0, table_points: int = 20,
                     op_samples: int = 20):
    rng = np.random.default_rng(seed)
    rows = []
    cfg = FDConfig()
    params = MetricParams(1.0, 1.0)
    # eigenfunction table at degree (1, 1)
    for i in range(table_points):
        p = sampling.random_jacobi_point(1, 1, rng)
        for s in (0.5, 1.7, 2.0):
            for name, lam in fields.eigenfunction_table(s):
                f = fields.builtin_field(name, s=s)
                val = diffops.laplacian_jacobi(f, p, params, cfg)
                fv = f(p)
                _row(rows, f"table_{name}_s{s}_{i:02d}", val, lam * fv,
                     1e-4 * tol_scale, scale=max(1.0, abs(fv)))
            if i < 5:
                a = (1.0, -1.0, 2.0)[i % 3]
                f = fields.builtin_field("bessel", s=s, a=a)
                val = diffops.laplacian_jacobi(f, p, params, cfg)
                fv = f(p)
                _row(rows, f"table_bessel_s{s}_{i:02d}", val, s * (s - 1) * fv,
                     1e-3 * tol_scale, scale=max(1e-6, abs(fv)))
    # operator invariance on random fields
    for i in range(op_samples):
        n, m = (1, 1) if i % 2 == 0 else (2, 1)
        p = sampling.random_jacobi_point(n, m, rng)
        g = groups.random_jacobi(n, m, rng, 3)
        f = sampling.random_polynomial_field("jacobi", rng)
        fg = (lambda f_, g_: lambda q: f_(groups.act_jacobi(g_, q)))(f, g)
        gp = groups.act_jacobi(g, p)
        tl = DerivativeTable(fg, p, cfg)
        tr_ = DerivativeTable(f, gp, cfg)
        lhs_parts = diffops.jacobi_laplacian_parts(fg, p, cfg, tl)
        rhs_parts = diffops.jacobi_laplacian_parts(f, gp, cfg, tr_)
        for name, lhs, rhs in (("part_omega", lhs_parts[0], rhs_parts[0]),
                               ("part_z", lhs_parts[1], rhs_parts[1])):
            _row(rows, f"invariance_{name}_{i:02d}", lhs, rhs, 1e-4 * tol_scale,
                 scale=max(1.0, abs(rhs)))
        _row(rows, f"invariance_laplacian_{i:02d}",
             diffops.laplacian_jacobi(fg, p, params, cfg, tl),
             diffops.laplacian_jacobi(f, gp, params, cfg, tr_),
             1e-4 * tol_scale, scale=max(1.0, abs(rhs_parts[0])))
        ps = p.siegel_part()
        fs = sampling.random_polynomial_field("siegel", rng)
        mat = groups.random_symplectic(n, rng, 3)
        fsg = (lambda f_, g_: lambda q: f_(groups.act_siegel(g_, q)))(fs, mat)
        lhs = diffops.laplacian_siegel(fsg, ps, 1.0, cfg)
        rhs = diffops.laplacian_siegel(fs, groups.act_siegel(mat, ps), 1.0, cfg)
        _row(rows, f"invariance_siegel_{i:02d}", lhs, rhs, 1e-4 * tol_scale,
             scale=max(1.0, abs(rhs)))
        # disk operators
        nd, md = (1, 1) if i % 3 == 0 else ((1, 2) if i % 3 == 1 else (2, 1))
        pd = sampling.random_jacobi_disk_point(nd, md, rng, radius=0.4)
        gs = groups.embed_star(groups.random_jacobi(nd, md, rng, 3))
        fd = sampling.random_polynomial_field("jacobi_disk", rng)
        fdg = (lambda f_, g_: lambda q: f_(groups.act_jacobi_disk(g_, q)))(fd, gs)
        gpd = groups.act_jacobi_disk(gs, pd)
        tld = DerivativeTable(fdg, pd, cfg)
        trd = DerivativeTable(fd, gpd, cfg)
        ops = ["s1", "s2"] + [f"j:{k},{l}" for k in range(md) for l in range(md)]
        if nd == 1:
            ops.append("s3")
        for op in ops:
            lhs = diffops.disk_operator(fdg, pd, op, cfg, tld)
            rhs = diffops.disk_operator(fd, gpd, op, cfg, trd)
            op_id = op.replace(":", "").replace(",", "")
            _row(rows, f"invariance_{op_id}_{i:02d}", lhs, rhs,
                 1e-4 * tol_scale, scale=max(1.0, abs(rhs)))
        if i % 4 == 0:
            lhs = diffops.laplacian_disk(fd, pd, params, cfg, DerivativeTable(fd, pd, cfg))
            f_h = (lambda f_: lambda q: f_(cayley.partial_cayley_inverse(q)))(fd)
            rhs = diffops.laplacian_jacobi(f_h, cayley.partial_cayley(pd), params, cfg)
            _row(rows, f"transport_disk_laplacian_{i:02d}", lhs, rhs, 1e-3 * tol_scale,
                 scale=max(1.0, abs(rhs)))
    # unitary invariance of the polynomial generators
    from .diffops import invariant_polynomial
    from .linalg import random_unitary
    for i in range(10):
        n, m = (2, 1) if i % 2 == 0 else (3, 2)
        om = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        om = 0.5 * (om + om.T)
        z = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        h = random_unitary(n, rng)
        names = [f"q:{j}" for j in range(1, n + 1)]
        names += [f"psi:0,{2 * k},0:1,1" for k in range(n)]
        names += [f"psi:1,{2 * k},0:1,1" for k in range(n)]
        for nm in names:
            v1 = invariant_polynomial(nm, om, z)
            v2 = invariant_polynomial(nm, h @ om @ h.T, z @ h.T)
            _row(rows, f"poly_unitary_{nm.replace(':', '_').replace(',', '')}_{i:02d}",
                 v1, v2, 1e-10 * tol_scale, scale=max(1.0, abs(v1)))
    return rows


# -- distance ------------------------------------------------------------------------

def suite_distance(seed: int = 0, tol_scale: float = 1.0, samples: int = 60,
                   triangles: int = 200):
    rng = np.random.default_rng(seed)
    rows = []
    base = SiegelPoint(np.array([[1j]]))
    for a in (2.0, 5.0, 10.0):
        d = geodesics.siegel_distance(base, SiegelPoint(np.array([[a * 1j]])))
        _row(rows, f"axis_log_{a}", d, np.log(a), 1e-10 * tol_scale)
    for i in range(samples):
        n = [1, 2, 3][i % 3]
        p0 = sampling.random_siegel_point(n, rng)
        p1 = sampling.random_siegel_point(n, rng)
        d = geodesics.siegel_distance(p0, p1)
        mat = groups.random_symplectic(n, rng, 4)
        d_m = geodesics.siegel_distance(groups.act_siegel(mat, p0),
                                        groups.act_siegel(mat, p1))
        _row(rows, f"isometry_{i:03d}", d, d_m, 1e-8 * tol_scale)
        _row(rows, f"symmetry_{i:03d}", d, geodesics.siegel_distance(p1, p0),
             1e-10 * tol_scale)
        _row(rows, f"series_{i:03d}", d, geodesics.siegel_distance_series(p0, p1),
             1e-12 * tol_scale)
        eig0 = geodesics.cross_ratio_eigenvalues(p0, p1)
        eig1 = geodesics.cross_ratio_eigenvalues(
            groups.act_siegel(mat, p0), groups.act_siegel(mat, p1))
        rows.append(CheckRow(f"cross_ratio_spectrum_{i:03d}", 0.0, 0.0,
                             float(np.max(np.abs(eig0 - eig1))), 1e-9 * tol_scale))
    worst = 0.0
    for i in range(triangles):
        n = [1, 2][i % 2]
        p0 = sampling.random_siegel_point(n, rng)
        p1 = sampling.random_siegel_point(n, rng)
        p2 = sampling.random_siegel_point(n, rng)
        slack = (geodesics.siegel_distance(p0, p2) + geodesics.siegel_distance(p2, p1)
                 - geodesics.siegel_distance(p0, p1))
        worst = max(worst, -slack)
    rows.append(CheckRow("triangle_inequality", 0.0, 0.0, worst, 1e-10 * tol_scale))
    logs = np.log(np.array([2.0, 0.4, 3.0]))
    for i, n in enumerate((1, 2, 3)):
        a = np.exp(logs[:n] / np.linalg.norm(logs[:n]))
        for j in range(6):
            s, t = rng.uniform(-2.0, 2.0, 2)
            d = geodesics.siegel_distance(geodesics.special_geodesic(a, s),
                                          geodesics.special_geodesic(a, t))
            _row(rows, f"unit_speed_n{n}_{j}", d, abs(s - t), 1e-8 * tol_scale)
    return rows


# -- reduction -----------------------------------------------------------------------

def _oracle_degree_one(omega: complex) -> complex:
    for _ in range(500):
        omega = omega - round(omega.real)
        if abs(omega) < 1.0 - 1e-15:
            omega = -1.0 / omega
        else:
            break
    return omega


def suite_reduction(seed: int = 0, tol_scale: float = 1.0, n1_samples: int = 200,
                    n2_samples: int = 25):
    rng = np.random.default_rng(seed)
    rows = []
    worst = 0.0
    domain_ok = True
    cert_ok = True
    for _ in range(n1_samples):
        omega = complex(rng.uniform(-3.0, 3.0), rng.uniform(0.05, 3.0))
        p = SiegelPoint(np.array([[omega]]))
        red, cert = reduction.siegel_reduce(p)
        r = complex(red.omega[0, 0])
        worst = max(worst, abs(r - _oracle_degree_one(omega)))
        domain_ok &= abs(r.real) <= 0.5 + 1e-12 and abs(r) >= 1.0 - 1e-12
        replay = groups.act_siegel(cert.gamma, p)
        cert_ok &= float(np.max(np.abs(replay.omega - red.omega))) <= 1e-9
    rows.append(CheckRow("n1_oracle_match", 0.0, 0.0, worst, 1e-9 * tol_scale))
    rows.append(CheckRow("n1_domain_conditions", 0.0, 0.0, 0.0 if domain_ok else 1.0, 0.5))
    rows.append(CheckRow("n1_certificates", 0.0, 0.0, 0.0 if cert_ok else 1.0, 0.5))
    viol_count = 0
    for i in range(n2_samples):
        p = sampling.random_siegel_point(2, rng, y_range=(0.3, 2.0))
        red, cert = reduction.siegel_reduce(p)
        if not cert.passed:
            viol_count += 1
        if np.max(np.abs(red.omega.real)) > 0.5 + 1e-12:
            viol_count += 1
        if reduction.minkowski_violations(red.omega.imag):
            viol_count += 1
        g0 = reduction.siegel_candidates(2)[int(rng.integers(0, 80))]
        red2, _ = reduction.siegel_reduce(groups.act_siegel(g0, red))
        d1 = float(np.linalg.det(red.omega.imag))
        d2 = float(np.linalg.det(red2.omega.imag))
        _row(rows, f"n2_orbit_det_im_{i:02d}", d1, d2, 1e-9 * tol_scale,
             scale=max(1.0, abs(d1)))
    rows.append(CheckRow("n2_zero_violations", 0.0, 0.0, float(viol_count), 0.5))
    for i in range(12):
        n, m = (1, 1) if i % 2 == 0 else (2, 2)
        p = sampling.random_jacobi_point(n, m, rng)
        p = JacobiPoint(p.omega, 3.0 * p.z)
        out, cert = reduction.jacobi_reduce(p)
        lam, mu = reduction.toroidal_coefficients(out)
        in_cell = (np.all(lam >= -1e-12) and np.all(lam < 1.0)
                   and np.all(mu >= -1e-12) and np.all(mu < 1.0))
        replay = groups.act_jacobi(cert.gamma, p)
        resid = _max_abs(replay.omega - out.omega, replay.z - out.z)
        rows.append(CheckRow(f"jacobi_cell_{i:02d}", 0.0, 0.0,
                             0.0 if (in_cell and cert.passed) else 1.0, 0.5))
        rows.append(CheckRow(f"jacobi_replay_{i:02d}", 0.0, 0.0, resid, 1e-9 * tol_scale))
    return rows


# -- jacobiforms ---------------------------------------------------------------------

def _fd_m_operator_degree_one(series, p: JacobiPoint, h: float = 1e-4) -> complex:
    """Independent oracle: apply det(Y) (d/dY + M^{-1}/(8 pi) d^2/dV^2) by
    central differences to the series evaluation (degree n = 1)."""
    y = p.omega[0, 0].imag
    minv = 1.0 / series.index.m_mat[0, 0]

    def at(dy, dv):
        return jacobiforms.fourier_eval(
            series, JacobiPoint(p.omega + 1j * dy, p.z + 1j * dv))

    d_y = (at(h, 0) - at(-h, 0)) / (2 * h)
    d_vv = (at(0, h) - 2 * at(0, 0) + at(0, -h)) / h**2
    return y * (d_y + minv / (8 * np.pi) * d_vv)


def _synthetic_series(singular: bool, rng, count: int = 20):
    idx = jacobiforms.JacobiFormIndex(np.array([[1.0]]), weight=0)
    terms = []
    for _ in range(count):
        if singular:
            k = int(rng.integers(0, 4))
            t, r = float(k * k), float(2 * k * (1 if rng.uniform() < 0.5 else -1))
        else:
            t = float(rng.integers(1, 5))
            r = float(rng.integers(-1, 2))
            if abs(t - r * r / 4.0) < 1e-9:
                t += 1.0
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        terms.append((np.array([[t]]), np.array([[r]]), c))
    return jacobiforms.FourierSeries.build(1, idx, terms)


def suite_jacobiforms(seed: int = 0, tol_scale: float = 1.0, cocycle_samples: int = 60,
                      slash_samples: int = 40):
    rng = np.random.default_rng(seed)
    rows = []
    degrees = [(1, 1), (2, 1), (2, 2)]
    for i in range(cocycle_samples):
        n, m = degrees[i % 3]
        idx = jacobiforms.JacobiFormIndex(np.eye(m) * (1 + i % 2), weight=int(rng.integers(-3, 4)))
        g1 = groups.random_jacobi(n, m, rng, 3)
        g2 = groups.random_jacobi(n, m, rng, 3)
        p = sampling.random_jacobi_point(n, m, rng)
        lhs = jacobiforms.automorphic_factor(idx, g1.multiply(g2), p)
        rhs = (jacobiforms.automorphic_factor(idx, g1, groups.act_jacobi(g2, p))
               * jacobiforms.automorphic_factor(idx, g2, p))
        _row(rows, f"cocycle_{i:03d}", lhs, rhs, 1e-8 * tol_scale, scale=max(1e-12, abs(rhs)))
    for i in range(slash_samples):
        n, m = degrees[i % 2]
        idx = jacobiforms.JacobiFormIndex(np.eye(m), weight=1)
        g1 = groups.random_jacobi(n, m, rng, 2)
        g2 = groups.random_jacobi(n, m, rng, 2)
        f = sampling.random_polynomial_field("jacobi", rng)
        p = sampling.random_jacobi_point(n, m, rng)
        lhs = jacobiforms.slash(jacobiforms.slash(f, idx, g1), idx, g2)(p)
        rhs = jacobiforms.slash(f, idx, g1.multiply(g2))(p)
        _row(rows, f"slash_composition_{i:03d}", lhs, rhs, 1e-8 * tol_scale,
             scale=max(1e-12, abs(rhs)))
    # singular gate vs operator annihilation (with the FD oracle riding along)
    sing = _synthetic_series(True, rng)
    mixed = _synthetic_series(False, rng)
    rows.append(CheckRow("gate_singular_series", 1.0, 1.0,
                         0.0 if jacobiforms.is_singular(sing) else 1.0, 0.5))
    rows.append(CheckRow("gate_mixed_series", 0.0, 0.0,
                         0.0 if not jacobiforms.is_singular(mixed) else 1.0, 0.5))
    for i in range(10):
        p = sampling.random_jacobi_point(1, 1, rng)
        val_sing = jacobiforms.apply_m_operator(sing, p)
        scale = max(1.0, abs(jacobiforms.fourier_eval(sing, p)))
        _row(rows, f"annihilation_{i:02d}", val_sing, 0.0, 1e-8 * tol_scale, scale=scale)
        val_mixed = jacobiforms.apply_m_operator(mixed, p)
        fd = _fd_m_operator_degree_one(mixed, p)
        _row(rows, f"m_operator_fd_{i:02d}", val_mixed, fd, 1e-4 * tol_scale,
             scale=max(1.0, abs(fd)))
        rows.append(CheckRow(f"nonannihilation_{i:02d}", abs(val_mixed), 0.0,
                             0.0 if abs(val_mixed) > 1e-6 else 1.0, 0.5))
    # degree-lowering projection vs large-parameter evaluation
    idx2 = jacobiforms.JacobiFormIndex(np.array([[1.0]]), weight=0)
    terms = [(np.diag([1.0, 0.0]), np.array([[2.0], [0.0]]), 1.0),
             (np.diag([2.0, 0.0]), np.array([[1.0], [0.0]]), 0.5 - 0.1j),
             (np.diag([0.0, 0.0]), np.array([[0.0], [0.0]]), 0.3),
             (np.array([[1.0, 0.5], [0.5, 1.0]]), np.array([[1.0], [1.0]]), 2.0)]
    s2 = jacobiforms.FourierSeries.build(2, idx2, terms)
    proj = jacobiforms.siegel_jacobi_operator(s2, 1)
    for i in range(6):
        p1 = sampling.random_jacobi_point(1, 1, rng)
        big = JacobiPoint(np.array([[p1.omega[0, 0], 0.0], [0.0, 50.0j]]),
                          np.array([[p1.z[0, 0], 0.0]]))
        _row(rows, f"projection_limit_{i:02d}", jacobiforms.fourier_eval(proj, p1),
             jacobiforms.fourier_eval(s2, big), 1e-8 * tol_scale)
    # pluriharmonic invariance
    P = jacobiforms.Polynomial
    s_mat = np.array([[2.0, 0.5], [0.5, 1.0]])
    t_mat = np.linalg.inv(s_mat)
    w, q = np.linalg.eigh(s_mat)
    s_half = (q * np.sqrt(w)) @ q.T
    s_mhalf = np.linalg.inv(s_half)
    base_polys = {
        "quadratic": (P.variable(2, 1, 0, 0) * P.variable(2, 1, 0, 0)).scale(t_mat[1, 1])
                     - (P.variable(2, 1, 1, 0) * P.variable(2, 1, 1, 0)).scale(t_mat[0, 0]),
        "linear": P.variable(2, 1, 0, 0) + P.variable(2, 1, 1, 0).scale(2.0),
    }
    for name, poly in base_polys.items():
        rows.append(CheckRow(f"pluriharmonic_{name}", 1.0, 1.0,
                             0.0 if jacobiforms.is_pluriharmonic(poly, s_mat) else 1.0, 0.5))
        for i in range(5):
            a = rng.standard_normal((1, 1)) + 1j * rng.standard_normal((1, 1))
            # orthogonal for the row pairing: b s_mat t(b) = s_mat
            b = s_half @ _random_orthogonal(2, rng) @ s_mhalf
            moved = poly.transform(a, b)
            rows.append(CheckRow(f"pluriharmonic_moved_{name}_{i}", 1.0, 1.0,
                                 0.0 if jacobiforms.is_pluriharmonic(moved, s_mat) else 1.0,
                                 0.5))
    rows.append(CheckRow("pluriharmonic_negative", 0.0, 0.0,
                         0.0 if not jacobiforms.is_pluriharmonic(
                             P.variable(1, 1, 0, 0) * P.variable(1, 1, 0, 0), np.eye(1))
                         else 1.0, 0.5))
    return rows


def _random_orthogonal(n: int, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diagonal(r))


# -- theta ---------------------------------------------------------------------------

def suite_theta(seed: int = 0, tol_scale: float = 1.0, draws: int = 20):
    rng = np.random.default_rng(seed)
    rows = []

    def hb(lam, mu, kap=0.0):
        return HeisenbergElement(np.array([[lam]]), np.array([[mu]]), np.array([[kap]]))

    ctx1 = theta.ThetaContext(np.array([[1.0]]), n=1, n_cut=10)
    f1 = theta.gaussian(ctx1)
    direct = sum(np.exp(-np.pi * w * w) for w in range(-8, 9))
    _row(rows, "lattice_sum_origin", theta.theta_sum(f1, ctx1, theta.SL2Coord(1j, 0.0),
                                                     hb(0, 0)), direct, 1e-10 * tol_scale)
    for i in range(draws):
        m_val = 1.0 if i % 2 == 0 else 2.0
        ctx = theta.ThetaContext(np.array([[m_val]]), n=1, n_cut=10)
        f = theta.gaussian(ctx) if i % 3 else theta.gaussian_poly(ctx, [[2]])
        tau = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.5, 2.0))
        phi = rng.uniform(0.15, np.pi - 0.15)
        lam, mu, kap = rng.uniform(-0.9, 0.9, 3)
        s = float(rng.integers(-3, 4))
        base = theta.theta_sum(f, ctx, theta.SL2Coord(tau, phi), hb(lam, mu, kap))
        moved = theta.theta_sum(f, ctx, theta.SL2Coord(tau + 2, phi),
                                hb(lam, s - 2 * lam + mu, kap - s * lam))
        _row(rows, f"jacobi2_{i:02d}", moved, base, 1e-8 * tol_scale,
             scale=max(1e-12, abs(base)))
        l0, m0, k0 = (float(x) for x in rng.integers(-3, 4, 3))
        lhs = theta.theta_sum(f, ctx, theta.SL2Coord(tau, phi),
                              hb(lam + l0, mu + m0, kap + k0 + l0 * mu - m0 * lam))
        rhs = np.exp(1j * np.pi * m_val * (k0 + m0 * l0)) \
            * theta.theta_sum(f, ctx, theta.SL2Coord(tau, phi), hb(lam, mu, kap))
        _row(rows, f"jacobi3_{i:02d}", lhs, rhs, 1e-8 * tol_scale,
             scale=max(1e-12, abs(rhs)))
        if m_val == 1.0:
            lhs1 = theta.theta_sum(f, ctx, theta.SL2Coord(-1 / tau, phi + np.angle(tau)),
                                   hb(-mu, lam, kap))
            sgn = np.sign(np.sin(phi) * np.sin(phi + np.angle(tau)))
            rhs1 = np.exp(-1j * np.pi * sgn / 4.0) \
                * theta.theta_sum(f, ctx, theta.SL2Coord(tau, phi), hb(lam, mu, kap))
            _row(rows, f"jacobi1_{i:02d}", lhs1, rhs1, 1e-3 * tol_scale,
                 scale=max(1e-12, abs(rhs1)))
    # product invariance under the three generator families
    s_mat = np.array([[0.0, -1.0], [1.0, 0.0]])
    t_star = np.array([[1.0, 2.0], [0.0, 1.0]])
    g1 = theta.gaussian(ctx1)
    g2 = theta.gaussian_poly(ctx1, [[2]])
    for i in range(8):
        tau = complex(rng.uniform(-1.2, 1.2), rng.uniform(0.6, 1.8))
        phi = rng.uniform(0.25, np.pi - 0.25)
        coord = theta.SL2Coord(tau, phi)
        lam, mu = rng.uniform(-0.8, 0.8, 2)
        base = abs(theta.theta_sum(g1, ctx1, coord, hb(lam, mu))
                   * np.conj(theta.theta_sum(g2, ctx1, coord, hb(lam, mu))))
        for name, gm, l0, m0, tol in (
                ("S", s_mat, 0.0, 0.0, 1e-3),
                ("Tstar", t_star, 0.0, float(rng.integers(-2, 3)), 1e-8),
                ("transl", np.eye(2), float(rng.integers(-2, 3)),
                 float(rng.integers(-2, 3)), 1e-8)):
            nc, nl, nm_ = theta.theta_left_translate(coord, lam, mu, gm, l0, m0)
            moved = abs(theta.theta_sum(g1, ctx1, nc, hb(float(nl), float(nm_)))
                        * np.conj(theta.theta_sum(g2, ctx1, nc, hb(float(nl), float(nm_)))))
            _row(rows, f"gamma2_{name}_{i:02d}", moved, base, tol * tol_scale,
                 scale=max(1e-12, base))
    # Stone-von Neumann residual per generator
    for m_val in (1.0, 2.0):
        ctx = theta.ThetaContext(np.array([[m_val]]), n=1)
        f = theta.gaussian(ctx)
        h = hb(0.4, -0.3, 0.2)
        for gen in (("t", np.array([[0.7]]), 1.0), ("g", np.array([[1.4]]), 1.0),
                    ("sigma", 1.0)):
            r = theta.stone_von_neumann_residual(gen, h, f, ctx)
            rows.append(CheckRow(f"svn_{gen[0]}_M{int(m_val)}", 0.0, 0.0, r,
                                 1e-6 * tol_scale))
    # Iwasawa round trips and composition
    worst_rt = worst_cp = 0.0
    for _ in range(40):
        mats = []
        for _k in range(2):
            a = rng.standard_normal((2, 2))
            while abs(np.linalg.det(a)) < 0.2:
                a = rng.standard_normal((2, 2))
            a /= np.sqrt(abs(np.linalg.det(a)))
            if np.linalg.det(a) < 0:
                a[:, 0] *= -1
            mats.append(a)
        c1, c2 = theta.iwasawa(mats[0]), theta.iwasawa(mats[1])
        worst_rt = max(worst_rt, float(np.max(np.abs(c1.matrix() - mats[0]))))
        c3 = theta.iwasawa_compose(c1, c2)
        worst_cp = max(worst_cp, float(np.max(np.abs(c3.matrix() - mats[0] @ mats[1]))))
    rows.append(CheckRow("iwasawa_roundtrip", 0.0, 0.0, worst_rt, 1e-10 * tol_scale))
    rows.append(CheckRow("iwasawa_composition", 0.0, 0.0, worst_cp, 1e-10 * tol_scale))
    # cocycle table (frozen sign evaluations)
    s = np.array([[0.0, -1.0], [1.0, 0.0]])
    t_low = np.array([[1.0, 0.0], [1.0, 1.0]])
    t_up = np.array([[1.0, 1.0], [0.0, 1.0]])
    table = [("S_S", s, s, 1.0 + 0j),
             ("S_Tlow", s, t_low, np.exp(-1j * np.pi / 4)),
             ("Tlow_S", t_low, s, np.exp(-1j * np.pi / 4)),
             ("Tup_S", t_up, s, 1.0 + 0j),
             ("S_Tup", s, t_up, 1.0 + 0j),
             ("Tlow_Tlow", t_low, t_low, np.exp(-1j * np.pi / 4)),
             ("Sneg_S", -s, s, 1.0 + 0j),
             ("S_TlowInv", s, np.array([[1.0, 0.0], [-1.0, 1.0]]), np.exp(1j * np.pi / 4))]
    for name, m1, m2, expected in table:
        _row(rows, f"cocycle_{name}", theta.cocycle(m1, m2, 1, 1), expected, 1e-14)
    return rows


SUITES = {
    "actions": suite_actions,
    "cayley": suite_cayley,
    "metrics": suite_metrics,
    "laplacians": suite_laplacians,
    "distance": suite_distance,
    "reduction": suite_reduction,
    "jacobiforms": suite_jacobiforms,
    "theta": suite_theta,
}


def run_suite(name: str, seed: int = 0, tol_scale: float = 1.0):
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed=seed, tol_scale=max(1.0, tol_scale))
