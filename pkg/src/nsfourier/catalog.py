"""Rapidly decreasing test functions and a quadrature oracle for their transforms.

Transforms use the ``exp(-pi i x t)`` convention, under which the Gaussian
``exp(-pi x^2 / 2)`` maps to ``sqrt(2) exp(-pi t^2 / 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Optional

import numpy as np
from scipy import integrate as spi

from .bounds import DecayConstants, decay_constants, sup_weighted
from .errors import NonConvergenceError, OracleMismatchError

PI = math.pi
SQRT2 = math.sqrt(2.0)
SQRTPI = math.sqrt(PI)


@dataclass(frozen=True, eq=False)
class SchwartzFunction:
    name: str
    eval: Callable
    d1: Callable
    d2: Callable
    closed_form_transform: Optional[Callable] = field(default=None)
    real: bool = True

    def __call__(self, x):
        return self.eval(x)

    def __repr__(self):
        return f"SchwartzFunction({self.name!r})"

    @cached_property
    def decay(self) -> DecayConstants:
        return decay_constants(self)

    @cached_property
    def moment_sups(self) -> dict[int, float]:
        """``sup |x|^k |f|`` for the even powers used to size truncation."""
        return {k: sup_weighted(self.eval, k) for k in (2, 4, 8)}

    def truncation_radius(self, tol: float) -> float:
        """Smallest ``R`` with a certified ``int_{|x|>R} |f| < tol``.

        Uses ``|f(x)| <= C_k / |x|^k``, whose two-sided tail is
        ``2 C_k / ((k - 1) R^(k-1))``.
        """
        radii = []
        for k, ck in self.moment_sups.items():
            if ck == 0.0:
                return 1.0
            radii.append((2.0 * ck / ((k - 1) * tol)) ** (1.0 / (k - 1)))
        return max(1.0, min(radii))


def _gauss(a: float) -> Callable:
    return lambda x: np.exp(-a * np.square(x))


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def _build() -> dict[str, SchwartzFunction]:
    half_pi = PI / 2
    g = _gauss(half_pi)
    g1 = _gauss(1.0)
    gp = _gauss(PI)
    fns = [
        SchwartzFunction(
            "gaussian",
            g,
            lambda x: -PI * x * g(x),
            lambda x: (PI**2 * np.square(x) - PI) * g(x),
            lambda t: SQRT2 * np.exp(-half_pi * np.square(t)),
        ),
        SchwartzFunction(
            "gaussian_a1",
            g1,
            lambda x: -2.0 * x * g1(x),
            lambda x: (4.0 * np.square(x) - 2.0) * g1(x),
            lambda t: SQRTPI * np.exp(-(PI**2) * np.square(t) / 4.0),
        ),
        SchwartzFunction(
            "gaussian_api",
            gp,
            lambda x: -2.0 * PI * x * gp(x),
            lambda x: (4.0 * PI**2 * np.square(x) - 2.0 * PI) * gp(x),
            lambda t: np.exp(-PI * np.square(t) / 4.0),
        ),
        SchwartzFunction(
            "hermite1",
            lambda x: x * g(x),
            lambda x: (1.0 - PI * np.square(x)) * g(x),
            lambda x: (PI**2 * x**3 - 3.0 * PI * x) * g(x),
            lambda t: -1j * SQRT2 * t * np.exp(-half_pi * np.square(t)),
        ),
        SchwartzFunction(
            "x2_gaussian",
            lambda x: np.square(x) * g1(x),
            lambda x: (2.0 * x - 2.0 * x**3) * g1(x),
            lambda x: (4.0 * x**4 - 10.0 * np.square(x) + 2.0) * g1(x),
            lambda t: (0.5 - PI**2 * np.square(t) / 4.0) * SQRTPI * np.exp(-(PI**2) * np.square(t) / 4.0),
        ),
        SchwartzFunction("zero", _zero, _zero, _zero, lambda t: 0.0 * np.asarray(t, dtype=float)),
    ]
    return {f.name: f for f in fns}


_CATALOG = _build()


def catalog_list() -> list[SchwartzFunction]:
    return list(_CATALOG.values())


def get_function(name: str) -> SchwartzFunction:
    try:
        return _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; known: {', '.join(_CATALOG)}") from None


@lru_cache(maxsize=65536)
def _quad_transform(f: SchwartzFunction, t: float, tol: float) -> tuple[complex, float]:
    R = f.truncation_radius(tol / 2)

    def integrand(x):
        v = complex(f.eval(x)) * complex(math.cos(PI * x * t), -math.sin(PI * x * t))
        return np.array([v.real, v.imag])

    # breakpoints every unit keep each panel to a few oscillations
    pts = np.arange(-math.floor(R), math.floor(R) + 1, dtype=float)
    val, err, info = spi.quad_vec(
        integrand, -R, R, epsabs=tol / 4, epsrel=0.0, norm="max", limit=20000, points=pts, full_output=True
    )
    if not info.success or err > tol / 2:
        raise NonConvergenceError(
            f"transform quadrature for {f.name} at t={t} reached only {err:.3g} (wanted {tol / 2:.3g})",
            achieved=err,
        )
    return complex(val[0], val[1]), err


def reference_transform(f: SchwartzFunction, t: float, tol: float = 1e-10) -> complex:
    """``int f(x) exp(-pi i x t) dx`` to absolute accuracy ``tol``.

    When ``f`` has a closed-form transform the two must agree to ``2 tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    val, _ = _quad_transform(f, float(t), float(tol))
    if f.closed_form_transform is not None:
        exact = complex(f.closed_form_transform(t))
        if abs(exact - val) > 2 * tol:
            raise OracleMismatchError(
                f"{f.name}: quadrature {val} vs closed form {exact} at t={t} (|diff|={abs(exact - val):.3g})"
            )
    return val


def _quad_checked(fn, a, b, tol):
    out = spi.quad(fn, a, b, epsabs=tol, epsrel=1e-12, limit=1000, full_output=1)
    val, err = out[0], out[1]
    if len(out) > 3 or err > tol:
        msg = out[3] if len(out) > 3 else "error estimate above tolerance"
        raise NonConvergenceError(f"quadrature on [{a}, {b}] failed: {msg}", achieved=err)
    return val


def l1_discretization_error(f: SchwartzFunction, n: int, tol: float = 1e-10) -> float:
    """``int |f - f([nx]/n)|`` over ``[-n, n)`` plus ``int_{|x|>=n} |f|``.

    The interior is integrated cell-locally: with ``x = j/n + u/n``, all
    ``2n^2`` cells share the variable ``u in [0, 1)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    left = np.arange(-n * n, n * n) / n
    base = f.eval(left)

    def cells(u):
        return float(np.sum(np.abs(f.eval(left + u / n) - base))) / n

    interior = _quad_checked(cells, 0.0, 1.0, tol)
    absf = lambda x: abs(complex(f.eval(x)))  # noqa: E731
    exterior = _quad_checked(absf, float(n), math.inf, tol) + _quad_checked(absf, -math.inf, float(-n), tol)
    return interior + exterior


def catalog_manifest() -> list[tuple]:
    """Rows ``(name, B, D1, C2, M, has_closed_form)`` for every catalog entry."""
    rows = []
    for f in catalog_list():
        d = f.decay
        rows.append((f.name, d.B, d.D1, d.C2, d.M, f.closed_form_transform is not None))
    return rows
