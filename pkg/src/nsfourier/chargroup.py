"""Finite commutative groups, their characters, and Fourier analysis on them.

Three families are supported:

* ``CyclicZ(m)``: integers mod ``m``, elements ``0..m-1``.
* ``ShiftG(m)``: the order ``2m`` group on ``-m..m-1`` with wraparound
  addition.
* ``ScaledG(m, n)``: the points ``j/n`` for ``j = -m..m-1`` with the same
  addition, carried by the integer label ``j``.

Every character is ``exp(pi i * p / q)`` for an integer phase ``p`` reduced
mod ``2q`` before the exponential is taken, so values are unit modulus to
the last bit and no large-argument trig is ever evaluated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np


def unit_root(p, q: int) -> np.ndarray | complex:
    """``exp(pi i p / q)`` for integer ``p``, reduced exactly mod ``2q``."""
    r = np.mod(np.asarray(p, dtype=np.int64), 2 * q)
    r = np.where(r > q, r - 2 * q, r)
    theta = np.pi * (r / q)
    out = np.cos(theta) + 1j * np.sin(theta)
    # make the four quarter points exact
    out = np.where(r == 0, 1.0 + 0j, out)
    out = np.where(r == q, -1.0 + 0j, out)
    if q % 2 == 0:
        out = np.where(2 * r == q, 1j, out)
        out = np.where(2 * r == -q, -1j, out)
    return out if out.ndim else complex(out)


@dataclass(frozen=True)
class FiniteGroup:
    kind: str  # "cyclic" | "shift" | "scaled"
    m: int
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("cyclic", "shift", "scaled"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.m < 1 or self.n < 1:
            raise ValueError("group parameters must be positive")

    @property
    def order(self) -> int:
        return self.m if self.kind == "cyclic" else 2 * self.m

    @property
    def labels(self) -> np.ndarray:
        if self.kind == "cyclic":
            return np.arange(self.m, dtype=np.int64)
        return np.arange(-self.m, self.m, dtype=np.int64)

    def __iter__(self) -> Iterator[int]:
        return iter(int(x) for x in self.labels)

    def add(self, a: int, b: int) -> int:
        if self.kind == "cyclic":
            return (a + b) % self.m
        return (a + b + self.m) % (2 * self.m) - self.m

    def neg(self, a: int) -> int:
        return self.add(-a, 0)

    def element(self, label: int) -> int | Fraction:
        """Display value of an element: ``j/n`` for scaled groups, else ``j``."""
        if self.kind == "scaled":
            return Fraction(int(label), self.n)
        return int(label)

    def label_of(self, x) -> int:
        if self.kind == "scaled":
            j = Fraction(x) * self.n
            if j.denominator != 1:
                raise ValueError(f"{x} is not an element of G_{{{self.m},{self.n}}}")
            j = int(j)
        else:
            j = int(x)
        if j not in range(int(self.labels[0]), int(self.labels[-1]) + 1):
            raise ValueError(f"{x} is not an element of {self}")
        return j

    def __str__(self):
        if self.kind == "cyclic":
            return f"Z_{self.m}"
        if self.kind == "shift":
            return f"G_{2 * self.m}"
        return f"G_{self.m},{self.n}"


def CyclicZ(m: int) -> FiniteGroup:
    return FiniteGroup("cyclic", m)


def ShiftG(m: int) -> FiniteGroup:
    """The group written G_{2m} (order ``2m``)."""
    return FiniteGroup("shift", m)


def ScaledG(m: int, n: int) -> FiniteGroup:
    return FiniteGroup("scaled", m, n)


def parse_group(spec: str) -> FiniteGroup:
    """``z4`` -> Z_4, ``g8`` -> G_8 (order 8), ``g4,2`` -> G_{4,2}."""
    s = spec.strip().lower()
    if mt := re.fullmatch(r"z(\d+)", s):
        return CyclicZ(int(mt[1]))
    if mt := re.fullmatch(r"g(\d+)", s):
        order = int(mt[1])
        if order % 2:
            raise ValueError(f"G_k needs even order, got {order}")
        return ShiftG(order // 2)
    if mt := re.fullmatch(r"g(\d+),(\d+)", s):
        return ScaledG(int(mt[1]), int(mt[2]))
    raise ValueError(f"unrecognised group {spec!r} (expected z<m>, g<2m> or g<m>,<n>)")


def _phase(group: FiniteGroup, x, y):
    """Integer phase ``p`` and period ``q`` with ``gamma_y(x) = exp(pi i p/q)``."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if group.kind == "cyclic":
        # exp(2 pi i k x / m) = exp(pi i (2 k x) / m)
        return 2 * ((x * y) % group.m), group.m
    # shift: exp(pi i x y / m); scaled: exp(pi i n^2 (x/n)(y/n) / m) = exp(pi i j k / m)
    return (x * y) % (2 * group.m), group.m


@dataclass(frozen=True)
class Character:
    group: FiniteGroup
    label: int

    def __call__(self, x):
        p, q = _phase(self.group, x, self.label)
        return unit_root(p, q)

    def values(self) -> np.ndarray:
        return np.asarray(self(self.group.labels))


def characters(group: FiniteGroup) -> list[Character]:
    return [Character(group, int(y)) for y in group.labels]


def character_table(group: FiniteGroup) -> np.ndarray:
    """Row ``i`` holds the character with the ``i``-th label on all elements."""
    lab = group.labels
    p, q = _phase(group, lab[None, :], lab[:, None])
    return unit_root(p, q)


def _as_values(group: FiniteGroup, g) -> np.ndarray:
    if callable(g):
        g = [g(x) for x in group]
    arr = np.asarray(g, dtype=np.complex128)
    if arr.shape != (group.order,):
        raise ValueError(f"expected {group.order} values on {group}, got shape {arr.shape}")
    return arr


def inner_product(group: FiniteGroup, g, h) -> complex:
    """``<g, h>`` against the uniform probability measure on ``group``."""
    g = _as_values(group, g)
    h = _as_values(group, h)
    return complex(np.sum(g * h.conj()) / group.order)


def char_transform(group: FiniteGroup, g) -> np.ndarray:
    """``ghat[i] = <g, gamma_{label i}>``, by explicit character sums."""
    g = _as_values(group, g)
    return np.array([inner_product(group, g, chi.values()) for chi in characters(group)])


def char_invert(group: FiniteGroup, ghat) -> np.ndarray:
    """Recover ``g(x) = sum_y ghat(gamma_y) gamma_y(x)``."""
    ghat = _as_values(group, ghat)
    table = character_table(group)
    return np.sum(ghat[:, None] * table, axis=0)


def group_isomorphisms(m: int, n: int) -> tuple[Callable[[int], int], Callable]:
    """``phi: G_{2m} -> Z_{2m}`` and ``psi: G_{m,n} -> G_{2m}``.

    ``psi`` takes a rational element ``j/n`` (a ``Fraction`` or anything
    ``Fraction`` accepts) and returns the integer ``j``.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")

    def phi(x: int) -> int:
        if not -m <= x < m:
            raise ValueError(f"{x} not in G_{2 * m}")
        return (x + 2 * m) % (2 * m)

    def psi(x) -> int:
        j = Fraction(x) * n
        if j.denominator != 1 or not -m <= j < m:
            raise ValueError(f"{x} not in G_{{{m},{n}}}")
        return int(j)

    return phi, psi
