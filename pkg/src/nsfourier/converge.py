"""Finite-n convergence experiments.

Each experiment returns ``ReportRow`` records.  For monotone metrics the
first ``n`` always passes and each later row carries ``bound =
previous * (1 + SLACK)``; a value of exactly zero counts as converged.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import integrate as spi

from .bounds import tail_mass, tail_threshold, uniform_bound_W
from .catalog import SchwartzFunction, l1_discretization_error, reference_transform
from .dft import Kernel, inverse, transform
from .errors import NonConvergenceError
from .grid import GridFunction, floor_project, make_grid, sample

SLACK = 0.01
ROUNDTRIP_TOL = 1e-11
CONTINUOUS_TOL = 1e-8
DEFAULT_N_LIST = (4, 8, 16, 32, 64)
DEFAULT_PROBES = tuple(Fraction(p) for p in ("0", "1/2", "-1/2", "1", "-1", "2", "-2"))
DEFAULT_EPS = (0.5, 0.1, 0.02)


@dataclass(frozen=True)
class ReportRow:
    function: str
    n: int
    metric: str
    value: float
    bound: Optional[float]
    passed: bool

    def sort_key(self):
        return (self.function, self.metric, self.n)


def canonical(rows: Iterable[ReportRow]) -> list[ReportRow]:
    return sorted(rows, key=ReportRow.sort_key)


def monotone_rows(function: str, metric: str, ns: Sequence[int], values: Sequence[float]) -> list[ReportRow]:
    rows = []
    prev = None
    for n, v in zip(ns, values):
        if prev is None:
            rows.append(ReportRow(function, n, metric, v, None, True))
        else:
            bound = prev * (1.0 + SLACK)
            rows.append(ReportRow(function, n, metric, v, bound, bool(v == 0.0 or v < bound)))
        prev = v
    return rows


def _label(p: Fraction) -> str:
    return str(Fraction(p))


def _check_probes(probes: Sequence[Fraction], n_list: Sequence[int], limit: Optional[float] = None):
    for p in probes:
        for n in n_list:
            if (Fraction(p) * n).denominator != 1:
                raise ValueError(f"probe {p} is not a grid point for n={n}")
        if limit is not None and abs(p) > limit:
            raise ValueError(f"probe {p} exceeds min(n_list)/2 = {limit}")


def parallel_map(fn, items, threads: int):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def spectrum_convergence(
    f: SchwartzFunction,
    n_list: Sequence[int] = DEFAULT_N_LIST,
    t_probes: Sequence[Fraction] = DEFAULT_PROBES,
    method: str = "naive",
    threads: int = 1,
) -> list[ReportRow]:
    """``|ghat_n(t) - ghat(t)|`` at fixed probes, expected to shrink with ``n``."""
    n_list = sorted(n_list)
    _check_probes(t_probes, n_list, limit=min(n_list) / 2)
    exact = {p: reference_transform(f, float(p), 1e-10) for p in t_probes}

    def cell(n):
        ghat = transform(sample(f, make_grid(n)), method)
        return [abs(ghat.at(p) - exact[p]) for p in t_probes]

    errors = parallel_map(cell, n_list, threads)
    rows = []
    for i, p in enumerate(t_probes):
        rows += monotone_rows(f.name, f"spectrum_err[t={_label(p)}]", n_list, [e[i] for e in errors])
    return rows


def _spectrum_for_inversion(f: SchwartzFunction, t: np.ndarray) -> np.ndarray:
    if f.closed_form_transform is not None:
        return np.asarray(f.closed_form_transform(t), dtype=np.complex128) * np.ones_like(t)
    return np.array([reference_transform(f, float(s), 1e-12) for s in t])


def continuous_inverse(f: SchwartzFunction, xs: Sequence[float], tol: float = 1e-10) -> np.ndarray:
    """``(1/2) int ghat(t) exp(pi i x t) dt`` with ``ghat`` from the quadrature oracle."""
    xs = np.asarray([float(x) for x in xs])
    inner_tol = 1e-12
    # grow the window until the spectrum is negligible at its edges
    T = 4.0
    while T < 1024 and max(abs(reference_transform(f, T, inner_tol)), abs(reference_transform(f, -T, inner_tol))) > 1e-15:
        T *= 2
    if T >= 1024:
        raise NonConvergenceError(f"spectrum of {f.name} not negligible by |t| = 1024")

    def integrand(t):
        v = reference_transform(f, t, inner_tol) * np.exp(1j * math.pi * xs * t)
        return np.concatenate([v.real, v.imag])

    pts = np.arange(-T, T + 1.0, 1.0)
    val, err, info = spi.quad_vec(
        integrand, -T, T, epsabs=tol, epsrel=0.0, norm="max", limit=20000, points=pts, full_output=True
    )
    if not info.success or err > 2 * tol:
        raise NonConvergenceError(f"inverse quadrature for {f.name} reached {err:.3g}", achieved=err)
    k = len(xs)
    return 0.5 * (val[:k] + 1j * val[k:])


def inversion_convergence(
    f: SchwartzFunction,
    n_list: Sequence[int] = DEFAULT_N_LIST,
    x_probes: Sequence[Fraction] = DEFAULT_PROBES,
    method: str = "naive",
    threads: int = 1,
) -> list[ReportRow]:
    """Three views of inversion at the probes ``x``.

    * ``roundtrip``: ``|f(x) - idft(dft(f_n))(x)|``, exact up to rounding.
    * ``continuous`` (reported at ``n = 0``): inversion of the true
      transform by quadrature.
    * ``discrete_spectrum``: the grid sum of the true transform, which
      should approach ``f(x)`` as ``n`` grows.
    """
    n_list = sorted(n_list)
    _check_probes(x_probes, n_list)
    fx = {p: complex(f.eval(float(p))) for p in x_probes}

    def cell(n):
        grid = make_grid(n)
        back = inverse(transform(sample(f, grid), method), method)
        spectrum = GridFunction(grid, _spectrum_for_inversion(f, grid.points))
        kernel = Kernel(grid, 1)
        out = []
        for p in x_probes:
            kern = kernel(floor_project(p, grid), grid.indices)
            approx = complex(np.sum(spectrum.values * kern) / (2 * n))
            out.append((abs(fx[p] - back.at(p)), abs(fx[p] - approx)))
        return out

    cells = parallel_map(cell, n_list, threads)
    rows = []
    for i, p in enumerate(x_probes):
        lab = _label(p)
        for n, c in zip(n_list, cells):
            rt = c[i][0]
            rows.append(ReportRow(f.name, n, f"roundtrip[x={lab}]", rt, ROUNDTRIP_TOL, rt <= ROUNDTRIP_TOL))
        rows += monotone_rows(f.name, f"discrete_spectrum[x={lab}]", n_list, [c[i][1] for c in cells])

    cont = continuous_inverse(f, x_probes)
    for p, v in zip(x_probes, cont):
        err = abs(fx[p] - v)
        rows.append(ReportRow(f.name, 0, f"continuous[x={_label(p)}]", float(err), CONTINUOUS_TOL, bool(err <= CONTINUOUS_TOL)))
    return rows


def tail_vanishing_experiment(
    f: SchwartzFunction,
    eps_list: Sequence[float] = DEFAULT_EPS,
    n_list: Sequence[int] = DEFAULT_N_LIST,
    method: str = "fast",
    threads: int = 1,
) -> list[ReportRow]:
    """Tail mass beyond the first integer past ``N(eps)``, for every ``n > N(eps)``."""
    W = uniform_bound_W(f.decay)
    thresholds = {eps: tail_threshold(eps, W) for eps in eps_list}
    n_list = sorted(n_list)

    def cell(n):
        ghat = transform(sample(f, make_grid(n)), method)
        out = []
        for eps, thr in thresholds.items():
            L = math.floor(thr) + 1
            if n > thr and L <= n:
                mass = 0.0 if L == n else max(tail_mass(ghat, L, n), tail_mass(ghat, -L, -n))
                out.append(ReportRow(f.name, n, f"tail_mass[eps={eps:g}]", mass, eps, mass < eps))
        return out

    return [row for rows in parallel_map(cell, n_list, threads) for row in rows]


def l1_decay_experiment(f: SchwartzFunction, n_list: Sequence[int] = DEFAULT_N_LIST, threads: int = 1) -> list[ReportRow]:
    n_list = sorted(n_list)
    values = parallel_map(lambda n: l1_discretization_error(f, n), n_list, threads)
    return monotone_rows(f.name, "l1_discretization", n_list, values)


def run_all(
    f: SchwartzFunction,
    n_list: Sequence[int] = DEFAULT_N_LIST,
    eps_list: Sequence[float] = DEFAULT_EPS,
    t_probes: Sequence[Fraction] = DEFAULT_PROBES,
    x_probes: Sequence[Fraction] = DEFAULT_PROBES,
    method: str = "naive",
    threads: int = 1,
) -> list[ReportRow]:
    rows = spectrum_convergence(f, n_list, t_probes, method, threads)
    rows += inversion_convergence(f, n_list, x_probes, method, threads)
    rows += tail_vanishing_experiment(f, eps_list, n_list, "fast", threads)
    rows += l1_decay_experiment(f, n_list, threads)
    return canonical(rows)
