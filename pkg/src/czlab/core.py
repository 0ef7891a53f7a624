"""Arithmetic of the extended bicyclic semigroup on Z x Z.

The product is

    (i1, j1) * (i2, j2) = (i1 - j1 + i2, j2)   if j1 <= i2
                          (i1, j1 - i2 + j2)   if j1 >= i2

Both branches agree when ``j1 == i2``; writing ``M = max(j1, i2)`` the
product is ``(i1 - j1 + M, M - i2 + j2)``, which is what :func:`multiply`
computes so the tie is evaluated once.
"""

from __future__ import annotations

from .element import Element
from .regions import Cell, IntervalZ, Region

__all__ = [
    "Element",
    "multiply",
    "invert",
    "is_idempotent",
    "leq",
    "comparable",
    "up_set",
    "down_set",
    "strict_down",
    "updown",
    "solve_two_sided",
    "solve_right",
    "solve_left",
    "phi",
    "psi",
    "conjugate_map",
    "idempotents",
]


def multiply(a, b) -> Element:
    i1, j1 = a
    i2, j2 = b
    m = j1 if j1 >= i2 else i2
    return Element(i1 - j1 + m, m - i2 + j2)


def invert(a) -> Element:
    i, j = a
    return Element(j, i)


def is_idempotent(a) -> bool:
    return a[0] == a[1]


def leq(a, b) -> bool:
    """``a`` lies below ``b`` in the natural partial order."""
    return a[0] >= b[0] and a[0] - a[1] == b[0] - b[1]


def comparable(a, b) -> bool:
    return a[0] - a[1] == b[0] - b[1]


def up_set(a) -> Region:
    """``{(i - s, j - s) : s >= 0}``, the elements above ``a``."""
    i, j = a
    return Region.of(Cell(ix=IntervalZ.at_most(i), id=IntervalZ.point(i - j)))


def down_set(a) -> Region:
    i, j = a
    return Region.of(Cell(ix=IntervalZ.at_least(i), id=IntervalZ.point(i - j)))


def strict_down(a) -> Region:
    i, j = a
    return Region.of(Cell(ix=IntervalZ.at_least(i + 1), id=IntervalZ.point(i - j)))


def updown(a) -> Region:
    return up_set(a) | down_set(a)


def idempotents() -> Region:
    return Region.of(Cell(id=IntervalZ.point(0)))


def solve_two_sided(l, r, t) -> Region:
    """All ``z`` with ``l * z * r == t``."""
    return Region.singleton(t).preimage_right(r).preimage_left(l)


def solve_right(r, t) -> Region:
    """All ``z`` with ``z * r == t``."""
    return Region.singleton(t).preimage_right(r)


def solve_left(l, t) -> Region:
    """All ``z`` with ``l * z == t``."""
    return Region.singleton(t).preimage_left(l)


def phi(a) -> Element:
    return multiply(a, invert(a))


def psi(a) -> Element:
    return multiply(invert(a), a)


def conjugate_map(i: int, j: int, m: int, n: int, a) -> Element:
    """``(i, m) * a * (n, j)``; carries ``down_set((m, n))`` onto ``down_set((i, j))``."""
    return multiply(multiply((i, m), a), (n, j))

