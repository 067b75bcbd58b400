"""Scaled grids, functions on them and the discrete integral.

A grid of parameter ``n`` holds the ``2 n**2`` points ``j / n`` for
``j = -n**2, ..., n**2 - 1``; every cell carries mass ``1 / n``.  Points are
addressed by their integer index ``j`` and turned into floats only at the API
edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Real
from typing import Callable

import numpy as np

MAX_N = 512


class SampleError(ValueError):
    """An evaluator failed, or returned a non-finite value, at a grid point."""


@dataclass(frozen=True)
class ScaledGrid:
    n: int

    @property
    def size(self) -> int:
        return 2 * self.n * self.n

    @property
    def weight(self) -> Fraction:
        return Fraction(1, self.n)

    @property
    def jmin(self) -> int:
        return -self.n * self.n

    @property
    def jmax(self) -> int:
        return self.n * self.n - 1

    @cached_property
    def indices(self) -> np.ndarray:
        idx = np.arange(self.jmin, self.jmax + 1, dtype=np.int64)
        idx.setflags(write=False)
        return idx

    @cached_property
    def points(self) -> np.ndarray:
        pts = self.indices / self.n
        pts.setflags(write=False)
        return pts

    def position(self, j: int) -> int:
        """Array offset of grid index ``j``."""
        if not self.jmin <= j <= self.jmax:
            raise IndexError(f"index {j} outside [{self.jmin}, {self.jmax}]")
        return j - self.jmin

    def point(self, j: int) -> Fraction:
        return Fraction(j, self.n)


def make_grid(n: int, max_n: int = MAX_N) -> ScaledGrid:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"grid parameter must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValueError(f"grid parameter must be >= 1, got {n}")
    if n > max_n:
        raise ValueError(f"grid parameter {n} exceeds configured maximum {max_n}")
    return ScaledGrid(n)


def floor_project(x: Real | Fraction, grid: ScaledGrid) -> int:
    """Index ``j`` of the cell ``[j/n, (j+1)/n)`` containing ``x``.

    Float inputs lying within rounding distance of a cell edge are snapped to
    that edge, so ``floor_project(grid.points[i], grid)`` recovers the index.
    """
    n = grid.n
    if isinstance(x, (Fraction, int, np.integer)):
        j = math.floor(Fraction(x) * n)
    else:
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"cannot project non-finite value {x}")
        scaled = x * n
        nearest = round(scaled)
        if math.isclose(scaled, nearest, rel_tol=1e-12, abs_tol=1e-12):
            j = int(nearest)
        else:
            j = math.floor(scaled)
    if not grid.jmin <= j <= grid.jmax:
        raise ValueError(f"x={x} outside [{-n}, {n}) for grid n={n}")
    return j


@dataclass(frozen=True, eq=False)
class GridFunction:
    grid: ScaledGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.size,):
            raise ValueError(
                f"expected {self.grid.size} values for n={self.grid.n}, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            bad = int(np.flatnonzero(~np.isfinite(vals))[0]) + self.grid.jmin
            raise ValueError(f"non-finite value at x={self.grid.point(bad)}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, grid: ScaledGrid) -> GridFunction:
        return cls(grid, np.zeros(grid.size, dtype=np.complex128))

    @classmethod
    def delta(cls, grid: ScaledGrid, j: int) -> GridFunction:
        vals = np.zeros(grid.size, dtype=np.complex128)
        vals[grid.position(j)] = 1.0
        return cls(grid, vals)

    def __getitem__(self, j: int) -> complex:
        """Value at grid index ``j`` (not array offset)."""
        return complex(self.values[self.grid.position(j)])

    def at(self, x) -> complex:
        return self[floor_project(x, self.grid)]

    def _coerce(self, other):
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                raise ValueError(f"grid mismatch: n={self.grid.n} vs n={other.grid.n}")
            return other.values
        return other

    def __add__(self, other):
        return GridFunction(self.grid, self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self.grid, self.values - self._coerce(other))

    def __mul__(self, other):
        return GridFunction(self.grid, self.values * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(self.grid, -self.values)

    def conj(self) -> GridFunction:
        return GridFunction(self.grid, self.values.conj())

    def __repr__(self):
        return f"GridFunction(n={self.grid.n}, size={self.grid.size})"


def sample(f: Callable, grid: ScaledGrid) -> GridFunction:
    """Evaluate ``f`` at every grid point.

    ``f`` may be a catalog ``SchwartzFunction`` or any callable accepting a
    numpy array of points.
    """
    fn = getattr(f, "eval", f)
    pts = grid.points
    try:
        vals = np.broadcast_to(np.asarray(fn(pts), dtype=np.complex128), pts.shape)
    except Exception:
        vals = None
    if vals is None or not np.all(np.isfinite(vals)):
        # locate the first offending point
        out = np.empty(pts.shape, dtype=np.complex128)
        for i, x in enumerate(pts):
            try:
                out[i] = complex(fn(x))
            except Exception as exc:
                raise SampleError(f"evaluator failed at x={grid.point(i + grid.jmin)}: {exc}") from exc
            if not np.isfinite(out[i]):
                raise SampleError(f"evaluator returned {out[i]} at x={grid.point(i + grid.jmin)}")
        vals = out
    return GridFunction(grid, vals)


def integrate(g: GridFunction) -> complex:
    """Discrete integral ``(1/n) * sum_j g(j/n)``.

    numpy's reduction along a contiguous axis is pairwise, which keeps the
    rounding error at O(log N) eps.
    """
    return complex(np.sum(g.values) / g.grid.n)


def l1_norm(g: GridFunction) -> float:
    return float(np.sum(np.abs(g.values)) / g.grid.n)
