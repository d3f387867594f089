import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegeljacobi import groups, sampling, spaces
from siegeljacobi.errors import DomainError

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def _heis(l, m, s):
    lam = np.array([[l]])
    mu = np.array([[m]])
    return groups.HeisenbergElement(lam, mu, np.array([[s]]) - mu @ lam.T)


def test_heisenberg_identity_law():
    h = _heis(0.3, -0.7, 0.2)
    e = groups.HeisenbergElement.identity(1, 1)
    prod = groups.heisenberg_multiply(h, e)
    assert np.allclose(prod.lam, h.lam) and np.allclose(prod.kappa, h.kappa)


def test_heisenberg_substitution_example():
    lam = np.array([[0.5, -0.25]])
    mu = np.array([[1.5, 2.0]])
    a = groups.HeisenbergElement(lam, np.zeros((1, 2)), np.zeros((1, 1)))
    b = groups.HeisenbergElement(np.zeros((1, 2)), mu, np.zeros((1, 1)))
    prod = a.multiply(b)
    assert np.allclose(prod.kappa, lam @ mu.T)


@settings(max_examples=30, deadline=None)
@given(*(finite for _ in range(9)))
def test_heisenberg_associativity(a1, b1, c1, a2, b2, c2, a3, b3, c3):
    h1, h2, h3 = _heis(a1, b1, c1), _heis(a2, b2, c2), _heis(a3, b3, c3)
    left = h1.multiply(h2).multiply(h3)
    right = h1.multiply(h2.multiply(h3))
    for attr in ("lam", "mu", "kappa"):
        assert np.max(np.abs(getattr(left, attr) - getattr(right, attr))) < 1e-12


def test_heisenberg_inverse_and_validity():
    rng = np.random.default_rng(5)
    for _ in range(20):
        h = groups.random_heisenberg(2, 2, rng)
        assert h.is_valid()
        prod = h.multiply(h.inverse())
        assert np.max(np.abs(prod.lam)) < 1e-12
        assert np.max(np.abs(prod.kappa)) < 1e-12
        assert h.inverse().is_valid()


def test_jacobi_associativity_random():
    rng = np.random.default_rng(11)
    for _ in range(20):
        g1, g2, g3 = (groups.random_jacobi(2, 1, rng, 4) for _ in range(3))
        left = g1.multiply(g2).multiply(g3)
        right = g1.multiply(g2.multiply(g3))
        assert np.max(np.abs(left.sp.mat - right.sp.mat)) < 1e-12
        assert np.max(np.abs(left.h.kappa - right.h.kappa)) < 1e-11


def test_symplectic_closure():
    rng = np.random.default_rng(2)
    for _ in range(30):
        g = groups.random_symplectic(3, rng, 6)
        assert g.is_valid(1e-10)


def test_act_siegel_examples():
    p = spaces.SiegelPoint.create(np.array([[2j]]))
    j1 = groups.inversion(1)
    moved = groups.act_siegel(j1, p)
    assert np.isclose(moved.omega[0, 0], 0.5j)
    e = groups.SymplecticElement.identity(2)
    q = spaces.SiegelPoint.create(np.array([[1j, 0.2], [0.2, 2j]]))
    fixed = groups.act_siegel(e, q)
    assert np.allclose(fixed.omega, q.omega)


def test_act_jacobi_pure_translation():
    p = spaces.JacobiPoint.create(np.array([[0.4 + 1.1j]]), np.array([[0.2 - 0.3j]]))
    lam = np.array([[0.7]])
    mu = np.array([[-0.4]])
    g = groups.JacobiGroupElement.from_heisenberg(
        groups.HeisenbergElement(lam, mu, np.zeros((1, 1))))
    moved = groups.act_jacobi(g, p)
    assert np.allclose(moved.omega, p.omega)
    assert np.allclose(moved.z, p.z + lam @ p.omega + mu)


def test_action_axioms_all_four():
    rng = np.random.default_rng(9)
    for n, m in ((1, 1), (2, 2)):
        for _ in range(15):
            pj = sampling.random_jacobi_point(n, m, rng)
            g1 = groups.random_jacobi(n, m, rng, 4)
            g2 = groups.random_jacobi(n, m, rng, 4)
            lhs = groups.act_jacobi(g1.multiply(g2), pj)
            rhs = groups.act_jacobi(g1, groups.act_jacobi(g2, pj))
            assert np.max(np.abs(lhs.omega - rhs.omega)) < 1e-10
            assert np.max(np.abs(lhs.z - rhs.z)) < 1e-10
            pd = sampling.random_jacobi_disk_point(n, m, rng)
            s1, s2 = groups.embed_star(g1), groups.embed_star(g2)
            lhs_d = groups.act_jacobi_disk(s1.multiply(s2), pd)
            rhs_d = groups.act_jacobi_disk(s1, groups.act_jacobi_disk(s2, pd))
            assert np.max(np.abs(lhs_d.w - rhs_d.w)) < 1e-10
            assert np.max(np.abs(lhs_d.eta - rhs_d.eta)) < 1e-10


def test_embedding_is_homomorphism():
    rng = np.random.default_rng(4)
    for _ in range(25):
        g1 = groups.random_jacobi(2, 1, rng, 4)
        g2 = groups.random_jacobi(2, 1, rng, 4)
        lhs = groups.embed_star(g1.multiply(g2))
        rhs = groups.embed_star(g1).multiply(groups.embed_star(g2))
        for attr in ("p", "q", "xi", "kappa"):
            assert np.max(np.abs(getattr(lhs, attr) - getattr(rhs, attr))) < 1e-10


def test_embedding_examples():
    e = groups.JacobiGroupElement.identity(2, 1)
    star = groups.embed_star(e)
    assert np.allclose(star.p, np.eye(2)) and np.allclose(star.q, 0.0)
    # sigma_n has blocks B = -I, C = I, so P = (i/2)(B - C) = -i I
    j = groups.JacobiGroupElement.from_symplectic(groups.inversion(2), 1)
    star_j = groups.embed_star(j)
    assert np.allclose(star_j.p, -1j * np.eye(2))
    assert np.allclose(star_j.q, 0.0)
    assert star_j.is_valid()
    # the symplectic form matrix itself (B = I, C = -I) maps to +i I
    form = groups.SymplecticElement(groups.symplectic_form(2))
    star_f = groups.embed_star(groups.JacobiGroupElement.from_symplectic(form, 1))
    assert np.allclose(star_f.p, 1j * np.eye(2))
    assert star_f.is_valid()


def test_random_element_reproducible_and_valid():
    for kind in ("symplectic", "heisenberg", "jacobi", "star"):
        a = groups.random_element(123, kind, n=2, m=1)
        b = groups.random_element(123, kind, n=2, m=1)
        assert a.is_valid()
        ja, jb = a.to_json(), b.to_json()
        assert ja == jb
    ident = groups.random_element(7, "symplectic", n=2, max_word=0)
    assert np.allclose(ident.mat, np.eye(4))
    with pytest.raises(DomainError):
        groups.random_element(0, "nonsense")


def test_element_json_round_trip():
    for kind in ("symplectic", "heisenberg", "jacobi", "star"):
        g = groups.random_element(5, kind, n=2, m=2)
        back = groups.element_from_json(g.to_json())
        assert back.to_json() == g.to_json()
    with pytest.raises(DomainError):
        groups.element_from_json({"kind": "mystery"})


def test_generator_word_parsing():
    g = groups.parse_generator_word("t(0.5);s", 1)
    expected = groups.translation(np.array([[0.5]])).multiply(groups.inversion(1))
    assert np.allclose(g.mat, expected.mat)
    assert groups.parse_generator_word("", 2).mat.shape == (4, 4)
    with pytest.raises(DomainError):
        groups.parse_generator_word("x(1)", 1)
