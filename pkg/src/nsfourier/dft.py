"""The pi-scaled discrete Fourier transform on the scaled grid.

    ghat(k/n) = (1/n)     sum_j g(j/n) exp(-pi i j k / n^2)
    g(j/n)    = (1/(2n))  sum_k ghat(k/n) exp(+pi i j k / n^2)

The naive transform is the oracle of record; ``dft_fast``/``idft_fast``
reindex to a length ``2 n^2`` FFT and must agree with it to 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chargroup import unit_root
from .grid import GridFunction, ScaledGrid, floor_project

# rows per block in the naive transform; bounds the temporary to ~64 MB
_BLOCK_ELEMS = 1 << 22
# grids up to this size keep their full kernel matrix cached
_CACHE_SIZE_LIMIT = 2048


@lru_cache(maxsize=64)
def _roots(n: int, sign: int) -> np.ndarray:
    """Table of ``exp(sign * pi i r / n^2)`` for ``r = 0 .. 2n^2 - 1``."""
    q = n * n
    tab = np.asarray(unit_root(sign * np.arange(2 * q, dtype=np.int64), q))
    tab.setflags(write=False)
    return tab


def _kernel_block(grid: ScaledGrid, sign: int, rows: np.ndarray) -> np.ndarray:
    period = 2 * grid.n * grid.n
    phase = np.mod(np.outer(rows, grid.indices), period)
    return _roots(grid.n, sign)[phase]


@lru_cache(maxsize=8)
def _kernel_matrix(grid: ScaledGrid, sign: int) -> np.ndarray:
    mat = _kernel_block(grid, sign, grid.indices)
    mat.setflags(write=False)
    return mat


@dataclass(frozen=True)
class Kernel:
    """``(j, k) -> exp(sign * pi i j k / n^2)`` on grid indices."""

    grid: ScaledGrid
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def __call__(self, j, k):
        period = 2 * self.grid.n * self.grid.n
        r = np.mod(np.asarray(j, dtype=np.int64) * np.asarray(k, dtype=np.int64), period)
        vals = _roots(self.grid.n, self.sign)[r]
        return vals if np.ndim(r) else complex(vals)

    def matrix(self) -> np.ndarray:
        """Full ``(2n^2, 2n^2)`` matrix, rows indexed by ``k``."""
        if self.grid.size <= _CACHE_SIZE_LIMIT:
            return _kernel_matrix(self.grid, self.sign)
        return _kernel_block(self.grid, self.sign, self.grid.indices)


def kernel_eval(grid: ScaledGrid, sign: int, x, t) -> complex:
    """``exp(sign * pi i [nx]/n * [nt]/n)`` with ``[.]`` the floor."""
    j = floor_project(x, grid)
    k = floor_project(t, grid)
    return Kernel(grid, sign)(j, k)


def _naive(values: np.ndarray, grid: ScaledGrid, sign: int) -> np.ndarray:
    if grid.size <= _CACHE_SIZE_LIMIT:
        return np.sum(_kernel_matrix(grid, sign) * values, axis=1)
    out = np.empty(grid.size, dtype=np.complex128)
    step = max(1, _BLOCK_ELEMS // grid.size)
    idx = grid.indices
    for start in range(0, grid.size, step):
        block = _kernel_block(grid, sign, idx[start : start + step])
        out[start : start + step] = np.sum(block * values, axis=1)
    return out


def dft(g: GridFunction) -> GridFunction:
    grid = g.grid
    return GridFunction(grid, _naive(g.values, grid, -1) / grid.n)


def idft(ghat: GridFunction) -> GridFunction:
    grid = ghat.grid
    return GridFunction(grid, _naive(ghat.values, grid, 1) / (2 * grid.n))


def _alternating(size: int) -> np.ndarray:
    s = np.ones(size)
    s[1::2] = -1.0
    return s


def dft_fast(g: GridFunction) -> GridFunction:
    """FFT path for ``dft``.

    With ``a = j + n^2`` and ``b = k + n^2``,
    ``jk = ab - n^2 a - n^2 b + n^4``, so the kernel factors as
    ``(-1)^(a + b + n) * exp(-2 pi i ab / 2n^2)``.
    """
    grid = g.grid
    n = grid.n
    alt = _alternating(grid.size)
    out = np.fft.fft(g.values * alt) * alt
    if n % 2:
        out = -out
    return GridFunction(grid, out / n)


def idft_fast(ghat: GridFunction) -> GridFunction:
    grid = ghat.grid
    n = grid.n
    alt = _alternating(grid.size)
    # ifft carries 1/(2n^2); the transform wants 1/(2n)
    out = np.fft.ifft(ghat.values * alt) * alt * n
    if n % 2:
        out = -out
    return GridFunction(grid, out)


def transform(g: GridFunction, method: str = "naive") -> GridFunction:
    if method == "naive":
        return dft(g)
    if method == "fast":
        return dft_fast(g)
    raise ValueError(f"unknown transform method {method!r}")


def inverse(ghat: GridFunction, method: str = "naive") -> GridFunction:
    if method == "naive":
        return idft(ghat)
    if method == "fast":
        return idft_fast(ghat)
    raise ValueError(f"unknown transform method {method!r}")
