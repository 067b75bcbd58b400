"""Discrete Fourier analysis on the scaled grids ``G_{n^2,n}``."""

from .catalog import SchwartzFunction, catalog_list, get_function, reference_transform
from .chargroup import CyclicZ, FiniteGroup, ScaledG, ShiftG, character_table, characters
from .dcalc import boundary_data, derivative, identity_terms, shift
from .dft import dft, dft_fast, idft, idft_fast, inverse, transform
from .errors import NonConvergenceError, OracleMismatchError
from .grid import GridFunction, ScaledGrid, floor_project, integrate, make_grid, sample

__all__ = [
    "CyclicZ",
    "FiniteGroup",
    "GridFunction",
    "NonConvergenceError",
    "OracleMismatchError",
    "ScaledG",
    "ScaledGrid",
    "SchwartzFunction",
    "ShiftG",
    "boundary_data",
    "catalog_list",
    "character_table",
    "characters",
    "derivative",
    "dft",
    "dft_fast",
    "floor_project",
    "get_function",
    "identity_terms",
    "idft",
    "idft_fast",
    "integrate",
    "inverse",
    "make_grid",
    "reference_transform",
    "sample",
    "shift",
    "transform",
]
