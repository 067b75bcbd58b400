"""Randomised verification suites behind ``nsfourier verify``.

Every suite draws from ``numpy.random.default_rng([seed, suite_id, n])`` so
results depend only on the seed, never on scheduling.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from . import dcalc
from .bounds import bound_report
from .catalog import catalog_list, get_function
from .chargroup import CyclicZ, ScaledG, char_transform, character_table
from .converge import ReportRow, parallel_map, canonical
from .dft import dft, dft_fast, idft, inverse, transform
from .grid import GridFunction, make_grid, sample

INVERSION_TOL = 1e-11
GRAM_TOL = 1e-12
CALCULUS_TOL = 1e-12
IDENTITY_TOL = 1e-10
FAST_TOL = 1e-10
BRIDGE_TOL = 1e-11

DEFAULTS = {
    "inversion": tuple(range(1, 33)),
    "orthonormality": tuple(range(1, 12)),
    "calculus": tuple(range(1, 17)),
    "dft_identity": (2, 4, 8, 16),
    "bounds": (2, 4, 8, 16, 32, 64, 128),
    "oracle": (1, 2, 4, 8, 16, 32),
}
SUITE_IDS = {name: i for i, name in enumerate(DEFAULTS)}


def rng_for(seed: int, suite: str, n: int) -> np.random.Generator:
    return np.random.default_rng([seed, SUITE_IDS[suite], n])


def random_gridfunction(rng: np.random.Generator, n: int) -> GridFunction:
    grid = make_grid(n)
    return GridFunction(grid, rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size))


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def suite_inversion(n_list, seed, trials=100, method="naive", threads=1):
    def cell(n):
        rng = rng_for(seed, "inversion", n)
        worst = 0.0
        for _ in range(trials):
            g = random_gridfunction(rng, n)
            worst = max(worst, _rel(inverse(transform(g, method), method).values, g.values))
        return ReportRow("random", n, "inversion", worst, INVERSION_TOL, worst <= INVERSION_TOL)

    return parallel_map(cell, n_list, threads)


def gram_deviation(group) -> float:
    table = character_table(group)
    gram = table @ table.conj().T / group.order
    return float(np.max(np.abs(gram - np.eye(group.order))))


def suite_orthonormality(n_list, seed=0, threads=1, cyclic_max=256):
    groups = [CyclicZ(m) for m in range(1, cyclic_max + 1)] + [ScaledG(n * n, n) for n in n_list]

    def cell(group):
        dev = gram_deviation(group)
        return ReportRow(str(group), group.order, "gram_dev", dev, GRAM_TOL, dev <= GRAM_TOL)

    return parallel_map(cell, groups, threads)


def hand_calculus_rows() -> list[ReportRow]:
    grid = make_grid(1)
    g = GridFunction(grid, [2, 5])
    h = GridFunction(grid, [1, 3])
    rows = []
    for metric, val in (
        ("ftc", dcalc.check_ftc(g)),
        ("product_rule", dcalc.check_product_rule(g, h)),
        ("parts", dcalc.check_parts(g, h)),
    ):
        rows.append(ReportRow("hand", 1, metric, val, CALCULUS_TOL, val <= CALCULUS_TOL))
    return rows


def suite_calculus(n_list, seed, trials=100, threads=1):
    def cell(n):
        rng = rng_for(seed, "calculus", n)
        worst = {"ftc": 0.0, "product_rule": 0.0, "parts": 0.0}
        for _ in range(trials):
            g = random_gridfunction(rng, n)
            h = random_gridfunction(rng, n)
            worst["ftc"] = max(worst["ftc"], dcalc.check_ftc(g))
            worst["product_rule"] = max(worst["product_rule"], dcalc.check_product_rule(g, h))
            worst["parts"] = max(worst["parts"], dcalc.check_parts(g, h))
        return [ReportRow("random", n, k, v, CALCULUS_TOL, v <= CALCULUS_TOL) for k, v in worst.items()]

    rows = hand_calculus_rows()
    for cell_rows in parallel_map(cell, n_list, threads):
        rows += cell_rows
    return rows


def identity_worst(g: GridFunction) -> tuple[float, float]:
    """Largest scaled residual of both identities over nonzero grid ``t``."""
    r1, r2 = dcalc.identity_terms(g, transform=dft).residuals()
    mask = g.grid.indices != 0
    return float(np.max(r1[mask])), float(np.max(r2[mask]))


def suite_dft_identity(n_list, seed, trials=20, threads=1):
    gauss = get_function("gaussian")

    def cell(n):
        rng = rng_for(seed, "dft_identity", n)
        w1 = w2 = 0.0
        for _ in range(trials):
            a, b = identity_worst(random_gridfunction(rng, n))
            w1, w2 = max(w1, a), max(w2, b)
        g1, g2 = identity_worst(sample(gauss, make_grid(n)))
        return [
            ReportRow("random", n, "identity_first", w1, IDENTITY_TOL, w1 <= IDENTITY_TOL),
            ReportRow("random", n, "identity_second", w2, IDENTITY_TOL, w2 <= IDENTITY_TOL),
            ReportRow("gaussian", n, "identity_first", g1, IDENTITY_TOL, g1 <= IDENTITY_TOL),
            ReportRow("gaussian", n, "identity_second", g2, IDENTITY_TOL, g2 <= IDENTITY_TOL),
        ]

    return [row for rows in parallel_map(cell, n_list, threads) for row in rows]


def suite_bounds(n_list, seed=0, threads=1):
    fns = [f for f in catalog_list() if f.name != "zero"]

    def cell(f):
        return [
            ReportRow(r.function, r.n, r.quantity, r.measured, r.bound, r.passed)
            for r in bound_report(f, n_list)
        ]

    return [row for rows in parallel_map(cell, fns, threads) for row in rows]


def bridge_deviation(g: GridFunction) -> float:
    """``dft(g)`` against ``2n`` times the character transform on G_{n^2,n}."""
    n = g.grid.n
    via_chars = 2 * n * char_transform(ScaledG(n * n, n), g.values)
    return _rel(dft(g).values, via_chars)


def suite_oracle(n_list, seed, trials=50, threads=1, bridge_max_n=8):
    def cell(n):
        rng = rng_for(seed, "oracle", n)
        worst_fast = worst_inv = 0.0
        for _ in range(trials):
            g = random_gridfunction(rng, n)
            worst_fast = max(worst_fast, _rel(dft_fast(g).values, dft(g).values))
            worst_inv = max(worst_inv, _rel(inverse(g, "fast").values, idft(g).values))
        rows = [
            ReportRow("random", n, "fast_vs_naive", worst_fast, FAST_TOL, worst_fast <= FAST_TOL),
            ReportRow("random", n, "ifast_vs_inaive", worst_inv, FAST_TOL, worst_inv <= FAST_TOL),
        ]
        if n <= bridge_max_n:
            dev = max(bridge_deviation(random_gridfunction(rng, n)) for _ in range(trials))
            rows.append(ReportRow("random", n, "char_bridge", dev, BRIDGE_TOL, dev <= BRIDGE_TOL))
        return rows

    return [row for rows in parallel_map(cell, n_list, threads) for row in rows]


SUITES: dict[str, Callable] = {
    "inversion": suite_inversion,
    "orthonormality": suite_orthonormality,
    "calculus": suite_calculus,
    "dft_identity": suite_dft_identity,
    "bounds": suite_bounds,
    "oracle": suite_oracle,
}


def run_suites(names: Sequence[str], n_list: Sequence[int] | None, seed: int, threads: int = 1) -> list[ReportRow]:
    rows: list[ReportRow] = []
    for name in names:
        ns = tuple(n_list) if n_list else DEFAULTS[name]
        rows += [
            ReportRow(f"{name}:{r.function}", r.n, r.metric, r.value, r.bound, r.passed)
            for r in SUITES[name](ns, seed=seed, threads=threads)
        ]
    return canonical(rows)
