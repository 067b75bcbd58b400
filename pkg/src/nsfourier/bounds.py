"""Decay constants of rapidly decreasing functions and the bounds built on them.

For a real ``g`` with ``B = sup|g|``, ``D1 = sup|x g|``, ``C2 = sup x^2|g|``
and ``M = ||g''||_1`` the sampled transforms obey, for every ``n >= 2``,

    |(g'')^_n(t) + F_n(t)| <= W = 16 D1 + M + 2B
    |ghat_n(t)|            <= W / (4 t^2)          (t != 0)

which gives the tail threshold ``N(eps) = W/(2 eps) + 1``.  Complex
functions are bounded part by part and the per-part ``W`` summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import integrate as spi
from scipy import optimize

from .dcalc import boundary_data, derivative, phase_factors
from .dft import dft_fast
from .errors import NonConvergenceError
from .grid import GridFunction, ScaledGrid, make_grid, sample

SEARCH_DOMAIN = (-16.0, 16.0)
SEARCH_STEP = 1e-3
M_TOL = 1e-9


@dataclass(frozen=True)
class DecayConstants:
    B: float
    D1: float
    C2: float
    M: float


def sup_weighted(
    fn: Callable, k: float, domain=SEARCH_DOMAIN, step: float = SEARCH_STEP
) -> float:
    """``sup |x|^k |fn(x)|`` by dense search plus bounded golden-section refinement."""
    lo, hi = domain
    xs = np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)
    weight = lambda x: np.abs(x) ** k * np.abs(fn(x))  # noqa: E731
    vals = np.broadcast_to(weight(xs), xs.shape)
    i = int(np.argmax(vals))
    best = float(vals[i])
    if best == 0.0:
        return 0.0
    edge = max(float(vals[0]), float(vals[-1]))
    if edge > 1e-8 * best:
        raise NonConvergenceError(
            f"|x|^{k}|f| has not decayed at the search boundary ({edge:.3g} vs sup {best:.3g})",
            achieved=edge,
        )
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    res = optimize.minimize_scalar(
        lambda x: -float(weight(x)), bounds=(a, b), method="bounded", options={"xatol": 1e-12}
    )
    if not res.success:
        raise NonConvergenceError(f"sup refinement failed: {res.message}")
    return max(best, -float(res.fun))


def l1_norm_continuous(fn: Callable, domain=SEARCH_DOMAIN, tol: float = M_TOL) -> float:
    """``int |fn|`` over ``domain`` by adaptive quadrature on unit panels."""
    lo, hi = domain
    edges = np.linspace(lo, hi, int(hi - lo) + 1)
    panel_tol = tol / (len(edges) - 1)
    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, e, *info = spi.quad(lambda x: abs(fn(x)), a, b, epsabs=panel_tol, epsrel=0.0, limit=200, full_output=1)
        total += val
        err += e
    if err > tol:
        raise NonConvergenceError(f"L1 quadrature error estimate {err:.3g} exceeds {tol:.3g}", achieved=err)
    return total


def decay_constants(f, domain=SEARCH_DOMAIN, step: float = SEARCH_STEP) -> DecayConstants:
    """Numerical decay constants of ``f`` (anything with ``eval`` and ``d2``)."""
    return DecayConstants(
        B=sup_weighted(f.eval, 0, domain, step),
        D1=sup_weighted(f.eval, 1, domain, step),
        C2=sup_weighted(f.eval, 2, domain, step),
        M=l1_norm_continuous(f.d2, domain),
    )


def uniform_bound_W(*parts: DecayConstants) -> float:
    """``16 D1 + M + 2B``, summed over the given parts (real, imaginary)."""
    return sum(16.0 * dc.D1 + dc.M + 2.0 * dc.B for dc in parts)


def tail_threshold(epsilon: float, W: float) -> float:
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return W / (2.0 * epsilon) + 1.0


def _grid_index(v: float, grid: ScaledGrid) -> int:
    scaled = v * grid.n
    j = round(scaled)
    if not math.isclose(scaled, j, rel_tol=1e-12, abs_tol=1e-12):
        raise ValueError(f"{v} is not representable on the grid n={grid.n}")
    if not grid.jmin <= j <= grid.jmax + 1:
        raise ValueError(f"{v} lies outside [-{grid.n}, {grid.n}]")
    return j


def tail_mass(g: GridFunction, L: float, Lp: float) -> float:
    """``(1/n) sum |g|`` over grid points between ``L`` and ``Lp`` (same sign).

    The interval is ``[min, max)`` of the two endpoints.
    """
    if not L * Lp > 0:
        raise ValueError(f"tail endpoints must share a sign, got L={L}, L'={Lp}")
    if abs(L) > abs(Lp):
        raise ValueError(f"need |L| <= |L'|, got L={L}, L'={Lp}")
    grid = g.grid
    lo, hi = sorted((_grid_index(L, grid), _grid_index(Lp, grid)))
    seg = g.values[lo - grid.jmin : hi - grid.jmin]
    return float(np.sum(np.abs(seg)) / grid.n)


def ext_tail_bound(f, n: int, N: int, C2: float | None = None, far: float = 64.0) -> tuple[float, float]:
    """Exterior mass of the step function beyond ``N`` against ``3 C2 / N``.

    ``measured = (1/n)(sum_{|j| >= Nn+1} |f(j/n)| + |f(N)|)``; the sum stops at
    ``|j/n| = max(far, 2N)``, past which catalog functions vanish in double
    precision.
    """
    if N < 2 or n < 1:
        raise ValueError("need N >= 2 and n >= 1")
    fn = getattr(f, "eval", f)
    if C2 is None:
        C2 = sup_weighted(fn, 2)
    jstop = int(math.ceil(max(far, 2 * N) * n))
    j = np.arange(N * n + 1, jstop + 1)
    x = j / n
    total = np.sum(np.abs(fn(x))) + np.sum(np.abs(fn(-x))) + abs(complex(fn(float(N))))
    return float(total / n), 3.0 * C2 / N


@dataclass(frozen=True)
class BoundRow:
    function: str
    n: int
    quantity: str
    measured: float
    bound: float
    passed: bool


def psi_lower_ratio(grid: ScaledGrid) -> float:
    """``min |psi(t)| / (2|t|)`` over nonzero grid ``t``; the bound says >= 1."""
    psi = np.abs(phase_factors(grid).psi.values)
    t = np.abs(grid.points)
    mask = t > 0
    return float(np.min(psi[mask] / (2.0 * t[mask]))) if mask.any() else math.inf


def second_derivative_sup(g: GridFunction) -> float:
    """``max_t |(g'')^(t) + F(t)|`` on the grid."""
    d2hat = dft_fast(derivative(derivative(g))).values
    F = boundary_data(g).F.values
    return float(np.max(np.abs(d2hat + F)))


def decay_ratio(ghat: GridFunction) -> float:
    """``max_{|t| >= 1} 4 t^2 |ghat(t)|``."""
    t = ghat.grid.points
    mask = np.abs(t) >= 1
    if not mask.any():
        return 0.0
    return float(np.max(4.0 * t[mask] ** 2 * np.abs(ghat.values[mask])))


def tail_sweep(ghat: GridFunction, threshold: float) -> float:
    """Largest ``tail_mass`` over all integer ``L`` with ``threshold < |L| <= n``.

    Both signs are covered; ``L' = +-n`` dominates every shorter interval, so
    it is the only upper endpoint checked.
    """
    grid = ghat.grid
    n = grid.n
    Lmin = math.floor(threshold) + 1
    if n <= threshold or Lmin > n:
        return 0.0
    worst = 0.0
    for L in range(Lmin, n + 1):
        if L < n:
            worst = max(worst, tail_mass(ghat, L, n))
        worst = max(worst, tail_mass(ghat, -L, -n))
    return worst


def bound_report(
    f,
    n_list: Iterable[int],
    eps_list: Iterable[float] = (0.5, 0.1, 0.02),
    N_list: Iterable[int] = (2, 4, 8),
    parts: tuple[DecayConstants, ...] | None = None,
) -> list[BoundRow]:
    """Evaluate every bound for ``f`` on each grid in ``n_list``."""
    if parts is None:
        parts = (f.decay,)
    W = uniform_bound_W(*parts)
    C2 = sum(p.C2 for p in parts)
    rows: list[BoundRow] = []
    for n in n_list:
        grid = make_grid(n)
        g = sample(f, grid)
        ghat = dft_fast(g)
        ratio = psi_lower_ratio(grid)
        rows.append(BoundRow(f.name, n, "psi_over_2t_min", ratio, 1.0, ratio >= 1.0))
        if n >= 2:
            sup2 = second_derivative_sup(g)
            rows.append(BoundRow(f.name, n, "d2hat_plus_F_max", sup2, W, sup2 <= W))
        dr = decay_ratio(ghat)
        rows.append(BoundRow(f.name, n, "4t2_ghat_max", dr, W, dr <= W))
        for eps in eps_list:
            thr = tail_threshold(eps, W)
            if n > thr:
                mass = tail_sweep(ghat, thr)
                rows.append(BoundRow(f.name, n, f"tail_mass[eps={eps:g}]", mass, eps, mass < eps))
        for N in N_list:
            measured, bound = ext_tail_bound(f, n, N, C2=C2)
            rows.append(BoundRow(f.name, n, f"ext_tail[N={N}]", measured, bound, measured <= bound))
    return rows
