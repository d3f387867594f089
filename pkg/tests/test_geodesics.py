import numpy as np
import pytest

from siegeljacobi import geodesics, groups, sampling, spaces
from siegeljacobi.errors import ParameterError


def test_cross_ratio_same_point_is_zero():
    p = spaces.SiegelPoint.create(np.array([[0.3 + 1.5j, 0.1], [0.1, 2j]]))
    assert np.max(np.abs(geodesics.cross_ratio(p, p))) < 1e-14
    assert geodesics.siegel_distance(p, p) == 0.0


@pytest.mark.parametrize("a", [2.0, 5.0, 10.0, 0.25])
def test_scalar_cross_ratio_formula(a):
    p0 = spaces.SiegelPoint.create(np.array([[1j]]))
    p1 = spaces.SiegelPoint.create(np.array([[a * 1j]]))
    r = geodesics.cross_ratio(p0, p1)[0, 0]
    assert np.isclose(r, ((1 - a) / (1 + a)) ** 2)
    assert np.isclose(geodesics.siegel_distance(p0, p1), abs(np.log(a)), atol=1e-10)


def test_degree_one_hyperbolic_oracle():
    rng = np.random.default_rng(3)
    for _ in range(30):
        p0 = sampling.random_siegel_point(1, rng)
        p1 = sampling.random_siegel_point(1, rng)
        z0 = p0.omega[0, 0]
        z1 = p1.omega[0, 0]
        oracle = 2.0 * np.arctanh(abs((z0 - z1) / (z0 - np.conj(z1))))
        assert abs(geodesics.siegel_distance(p0, p1) - oracle) < 1e-12


def test_spectrum_invariance_and_symmetry():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        p0 = sampling.random_siegel_point(n, rng)
        p1 = sampling.random_siegel_point(n, rng)
        mat = groups.random_symplectic(n, rng, 4)
        e0 = geodesics.cross_ratio_eigenvalues(p0, p1)
        e1 = geodesics.cross_ratio_eigenvalues(groups.act_siegel(mat, p0),
                                               groups.act_siegel(mat, p1))
        assert np.max(np.abs(e0 - e1)) < 1e-9
        d = geodesics.siegel_distance(p0, p1)
        assert abs(d - geodesics.siegel_distance(p1, p0)) < 1e-10
        assert abs(d - geodesics.siegel_distance(groups.act_siegel(mat, p0),
                                                 groups.act_siegel(mat, p1))) < 1e-8


def test_series_form_matches_log_form():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(1, 4))
        p0 = sampling.random_siegel_point(n, rng)
        p1 = sampling.random_siegel_point(n, rng)
        d_log = geodesics.siegel_distance(p0, p1)
        d_series = geodesics.siegel_distance_series(p0, p1)
        assert abs(d_log - d_series) < 1e-12


def test_triangle_inequality_sampled():
    rng = np.random.default_rng(9)
    for _ in range(100):
        n = int(rng.integers(1, 3))
        p0, p1, p2 = (sampling.random_siegel_point(n, rng) for _ in range(3))
        slack = (geodesics.siegel_distance(p0, p2) + geodesics.siegel_distance(p2, p1)
                 - geodesics.siegel_distance(p0, p1))
        assert slack >= -1e-10


def test_special_geodesic():
    assert np.allclose(geodesics.special_geodesic([np.e], 0.0).omega, np.array([[1j]]))
    p = geodesics.special_geodesic([np.e], 1.3)
    assert np.isclose(p.omega[0, 0], 1j * np.exp(1.3))
    with pytest.raises(ParameterError):
        geodesics.special_geodesic([2.0, 3.0], 0.0)
    with pytest.raises(ParameterError):
        geodesics.special_geodesic([-1.0], 0.0)


def test_unit_speed_property():
    rng = np.random.default_rng(11)
    logs = np.log([2.0, 0.4, 3.0])
    for n in (1, 2, 3):
        a = np.exp(logs[:n] / np.linalg.norm(logs[:n]))
        for _ in range(8):
            s, t = rng.uniform(-2, 2, 2)
            d = geodesics.siegel_distance(geodesics.special_geodesic(a, s),
                                          geodesics.special_geodesic(a, t))
            assert abs(d - abs(s - t)) < 1e-8


def test_cross_ratio_eigenvalues_stay_in_unit_interval():
    rng = np.random.default_rng(13)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        p0 = sampling.random_siegel_point(n, rng)
        p1 = sampling.random_siegel_point(n, rng)
        vals = geodesics.cross_ratio_eigenvalues(p0, p1)
        assert np.all(vals >= 0.0) and np.all(vals < 1.0)
