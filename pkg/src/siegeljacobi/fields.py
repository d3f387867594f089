"""Built-in scalar fields on the degree-(1,1) Siegel-Jacobi space: the
eigenfunction family of the invariant Laplacian, and the K-Bessel integral
evaluated by quadrature."""
from __future__ import annotations

import numpy as np

from .errors import DomainError


def bessel_k(s: complex, z: float, theta_max: float = 8.0, step: float = 1.0 / 64.0) -> complex:
    """K_s(z) = (1/2) integral_0^inf exp(-(z/2)(t + 1/t)) t^{s-1} dt for
    Re z > 0, via the substitution t = e^theta and a trapezoid rule."""
    if z <= 0:
        raise DomainError("the integral representation needs Re z > 0")
    theta = np.arange(-theta_max, theta_max + step, step)
    integrand = np.exp(-z * np.cosh(theta) + s * theta)
    return complex(0.5 * step * np.sum(integrand))


def _coords(p):
    omega = complex(p.omega[0, 0])
    z = complex(p.z[0, 0]) if hasattr(p, "z") else 0j
    return omega.real, omega.imag, z.real, z.imag


def builtin_field(name: str, s: complex = 1.0, a: float = 1.0):
    """Fields keyed by name; ``s`` and ``a`` parametrize the power/Bessel
    families. Names: y^s, y^s*x, y^s*u, y^s*v, y^s*u*v, y^s*x*v, x, y, u, v,
    xv, uv, bessel, const."""
    simple = {
        "x": lambda x, y, u, v: x,
        "y": lambda x, y, u, v: y,
        "u": lambda x, y, u, v: u,
        "v": lambda x, y, u, v: v,
        "xv": lambda x, y, u, v: x * v,
        "uv": lambda x, y, u, v: u * v,
        "const": lambda x, y, u, v: 1.0,
        "y^s": lambda x, y, u, v: y**s,
        "y^s*x": lambda x, y, u, v: y**s * x,
        "y^s*u": lambda x, y, u, v: y**s * u,
        "y^s*v": lambda x, y, u, v: y**s * v,
        "y^s*u*v": lambda x, y, u, v: y**s * u * v,
        "y^s*x*v": lambda x, y, u, v: y**s * x * v,
    }
    if name in simple:
        fn = simple[name]
        return lambda p: complex(fn(*_coords(p)))
    if name == "bessel":
        if a == 0:
            raise DomainError("the Bessel eigenfunction needs a nonzero frequency")

        def field(p):
            x, y, _, _ = _coords(p)
            return np.sqrt(y) * bessel_k(s - 0.5, 2.0 * np.pi * abs(a) * y) \
                * np.exp(2j * np.pi * a * x)

        return field
    raise DomainError(f"unknown builtin field {name!r}")


def eigenfunction_table(s: complex):
    """(name, eigenvalue) rows of the degree-(1,1) Laplacian table at
    parameters A = B = 1."""
    lam_minus = s * (s - 1.0)
    lam_plus = s * (s + 1.0)
    return [
        ("y^s", lam_minus), ("y^s*x", lam_minus), ("y^s*u", lam_minus),
        ("y^s*v", lam_plus), ("y^s*u*v", lam_plus), ("y^s*x*v", lam_plus),
        ("x", 0.0), ("y", 0.0), ("u", 0.0), ("v", 0.0), ("xv", 0.0), ("uv", 0.0),
    ]
