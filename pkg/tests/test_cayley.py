import numpy as np
import pytest

from siegeljacobi import cayley, groups, sampling, spaces


def test_cayley_center():
    p = cayley.cayley(spaces.DiskPoint.create(np.zeros((3, 3))))
    assert np.allclose(p.omega, 1j * np.eye(3))


@pytest.mark.parametrize("r", [-0.8, -0.3, 0.0, 0.45, 0.9])
def test_cayley_scalar_formula(r):
    p = cayley.cayley(spaces.DiskPoint.create(np.array([[r + 0j]])))
    assert np.isclose(p.omega[0, 0], 1j * (1 + r) / (1 - r))


def test_partial_cayley_examples():
    out = cayley.partial_cayley(spaces.JacobiDiskPoint.create(
        np.zeros((2, 2)), np.zeros((1, 2))))
    assert np.allclose(out.omega, 1j * np.eye(2)) and np.allclose(out.z, 0.0)
    eta = np.array([[0.3 - 0.2j, 0.1j]])
    out2 = cayley.partial_cayley(spaces.JacobiDiskPoint.create(np.zeros((2, 2)), eta))
    assert np.allclose(out2.z, 2j * eta)


def test_partial_cayley_inverse_examples():
    out = cayley.partial_cayley_inverse(spaces.JacobiPoint.create(
        1j * np.eye(2), np.zeros((1, 2))))
    assert np.allclose(out.w, 0.0) and np.allclose(out.eta, 0.0)
    out2 = cayley.partial_cayley_inverse(spaces.JacobiPoint.create(
        np.array([[2j]]), np.array([[1.0 + 0j]])))
    assert np.isclose(out2.w[0, 0], 1.0 / 3.0)
    assert np.isclose(out2.eta[0, 0], -1j / 3.0)


def test_round_trips():
    rng = np.random.default_rng(8)
    for n, m in ((1, 1), (2, 1), (3, 2)):
        for _ in range(10):
            p = sampling.random_jacobi_point(n, m, rng)
            back = cayley.partial_cayley(cayley.partial_cayley_inverse(p))
            assert np.max(np.abs(back.omega - p.omega)) < 1e-12
            assert np.max(np.abs(back.z - p.z)) < 1e-12
            d = sampling.random_disk_point(n, rng)
            back_d = cayley.cayley_inverse(cayley.cayley(d))
            assert np.max(np.abs(back_d.w - d.w)) < 1e-12


def test_compatibility_with_actions():
    rng = np.random.default_rng(10)
    for n, m in ((1, 1), (2, 2), (3, 1)):
        for _ in range(8):
            w = sampling.random_disk_point(n, rng)
            mat = groups.random_symplectic(n, rng, 4)
            star = groups.embed_star(groups.JacobiGroupElement.from_symplectic(mat, m))
            lhs = groups.act_siegel(mat, cayley.cayley(w))
            rhs = cayley.cayley(groups.act_disk(star, w))
            assert np.max(np.abs(lhs.omega - rhs.omega)) < 1e-9
            pd = sampling.random_jacobi_disk_point(n, m, rng)
            g0 = groups.random_jacobi(n, m, rng, 4)
            lhs_j = groups.act_jacobi(g0, cayley.partial_cayley(pd))
            rhs_j = cayley.partial_cayley(
                groups.act_jacobi_disk(groups.embed_star(g0), pd))
            assert np.max(np.abs(lhs_j.omega - rhs_j.omega)) < 1e-9
            assert np.max(np.abs(lhs_j.z - rhs_j.z)) < 1e-9
