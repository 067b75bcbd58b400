"""Forward differences, shifts and their summation-by-parts identities.

The derivative and shift are set to zero at the last grid point
``(n^2 - 1)/n``; the boundary functions ``C, D, C', D'`` collect what that
convention throws away, so that

    psi(t) * ghat(t)   = (g')^(t)  + E(t)
    psi(t)^2 * ghat(t) = (g'')^(t) + F(t)

hold exactly at every grid frequency ``t``.  ``(g')^`` always means the
transform of the discrete derivative.

Every ``check_*`` function returns a residual divided by
``max(1, magnitude of the terms involved)``, so the same tolerance applies at
every grid size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dft import Kernel, dft
from .grid import GridFunction, ScaledGrid, floor_project, integrate, l1_norm


def derivative(g: GridFunction) -> GridFunction:
    n = g.grid.n
    out = np.zeros_like(g.values)
    out[:-1] = n * (g.values[1:] - g.values[:-1])
    return GridFunction(g.grid, out)


def shift(g: GridFunction) -> GridFunction:
    out = np.zeros_like(g.values)
    out[:-1] = g.values[1:]
    return GridFunction(g.grid, out)


def _same_grid(g: GridFunction, h: GridFunction) -> None:
    if g.grid != h.grid:
        raise ValueError(f"grid mismatch: n={g.grid.n} vs n={h.grid.n}")


def _first(g: GridFunction) -> complex:
    return complex(g.values[0])


def _last(g: GridFunction) -> complex:
    return complex(g.values[-1])


def check_ftc(g: GridFunction) -> float:
    dg = derivative(g)
    lhs = integrate(dg)
    rhs = _last(g) - _first(g)
    scale = max(1.0, l1_norm(dg), abs(_last(g)) + abs(_first(g)))
    return abs(lhs - rhs) / scale


def check_product_rule(g: GridFunction, h: GridFunction) -> float:
    _same_grid(g, h)
    lhs = derivative(g * h).values
    a = derivative(g).values * shift(h).values
    b = g.values * derivative(h).values
    scale = max(1.0, float(np.max(np.abs(lhs), initial=0.0)), float(np.max(np.abs(a) + np.abs(b), initial=0.0)))
    return float(np.max(np.abs(lhs - (a + b)), initial=0.0)) / scale


def check_parts(g: GridFunction, h: GridFunction) -> float:
    _same_grid(g, h)
    gh = g * h
    left = derivative(g) * h
    right = shift(g) * derivative(h)
    boundary = _last(gh) - _first(gh)
    resid = integrate(left) + integrate(right) - boundary
    scale = max(1.0, l1_norm(left), l1_norm(right), abs(_last(gh)) + abs(_first(gh)))
    return abs(resid) / scale


@dataclass(frozen=True)
class PhaseFactors:
    """``phi(t) = n(exp(-pi i t/n) - 1)`` and ``psi(t) = n(exp(pi i t/n) - 1)``."""

    grid: ScaledGrid
    phi: GridFunction
    psi: GridFunction


def phase_factors(grid: ScaledGrid) -> PhaseFactors:
    n = grid.n
    theta = np.pi * (grid.indices / (n * n))
    # n(e^{i theta} - 1) = n(-2 sin^2(theta/2) + i sin theta), no cancellation near 0
    re = -2.0 * n * np.sin(theta / 2) ** 2
    im = n * np.sin(theta)
    return PhaseFactors(grid, GridFunction(grid, re - 1j * im), GridFunction(grid, re + 1j * im))


@dataclass(frozen=True)
class BoundaryData:
    grid: ScaledGrid
    C: GridFunction
    D: GridFunction
    Cp: GridFunction
    Dp: GridFunction
    E: GridFunction
    F: GridFunction


def boundary_data(g: GridFunction, factors: PhaseFactors | None = None) -> BoundaryData:
    grid = g.grid
    n = grid.n
    pf = factors or phase_factors(grid)
    k = grid.indices
    minus = Kernel(grid, -1)
    plus = Kernel(grid, 1)
    e_last = minus(grid.jmax, k)  # exp(-pi i ((n^2-1)/n) t)
    e_first = minus(grid.jmin, k)  # exp(-pi i (-n) t)
    e_step = plus(1, k)  # exp(pi i t/n)

    g_first, g_last = _first(g), _last(g)
    dg_first = _first(derivative(g))

    C = g_last * e_last - g_first * e_first
    D = -(1.0 / n) * g_first * e_step * e_first
    Cp = -dg_first * e_first
    Dp = -(1.0 / n) * dg_first * e_step * e_first
    phi, psi = pf.phi.values, pf.psi.values
    E = phi * D - C
    F = psi * phi * D - psi * C + phi * Dp - Cp
    wrap = lambda v: GridFunction(grid, v)  # noqa: E731
    return BoundaryData(grid, wrap(C), wrap(D), wrap(Cp), wrap(Dp), wrap(E), wrap(F))


@dataclass(frozen=True)
class IdentityTerms:
    """All quantities entering the two transform-derivative identities."""

    ghat: GridFunction
    d1hat: GridFunction
    d2hat: GridFunction
    factors: PhaseFactors
    boundary: BoundaryData

    def residuals(self) -> tuple[np.ndarray, np.ndarray]:
        """Scaled residual arrays over every grid ``t`` (entry at t=0 included)."""
        psi = self.factors.psi.values
        gh, d1, d2 = self.ghat.values, self.d1hat.values, self.d2hat.values
        E, F = self.boundary.E.values, self.boundary.F.values
        r1 = np.abs(psi * gh - d1 - E)
        s1 = np.maximum(1.0, np.abs(psi) * np.abs(gh) + np.abs(d1) + np.abs(E))
        r2 = np.abs(psi * psi * gh - d2 - F)
        s2 = np.maximum(1.0, np.abs(psi) ** 2 * np.abs(gh) + np.abs(d2) + np.abs(F))
        return r1 / s1, r2 / s2


def identity_terms(g: GridFunction, transform=dft) -> IdentityTerms:
    dg = derivative(g)
    return IdentityTerms(
        ghat=transform(g),
        d1hat=transform(dg),
        d2hat=transform(derivative(dg)),
        factors=phase_factors(g.grid),
        boundary=boundary_data(g),
    )


def check_dft_identity(g: GridFunction, t, terms: IdentityTerms | None = None) -> tuple[float, float]:
    """Scaled residuals of both identities at the nonzero grid frequency ``t``."""
    k = floor_project(t, g.grid)
    if k == 0:
        raise ValueError("identities are only claimed for t != 0 (psi(0) = 0)")
    terms = terms or identity_terms(g)
    r1, r2 = terms.residuals()
    pos = g.grid.position(k)
    return float(r1[pos]), float(r2[pos])
