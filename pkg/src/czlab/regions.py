"""Exact algebra of integer-plane regions.

A :class:`Cell` is the set of integer points ``(x, y)`` satisfying three
interval constraints, on ``x``, on ``y`` and on the difference ``d = x - y``.
A :class:`Region` is a finite union of cells.  The class is closed under the
boolean operations and under the images and preimages of the semigroup
translations, and under the elementwise product of two regions.

All decisions are exact.  Cells are kept in *tight* form (every interval
bound is attained by some point of the cell), which is the closure of a
three-node difference-bound matrix and makes emptiness, containment and the
interval projections read-offs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

import numpy as np

from .element import Element

INF = math.inf
Bound = Union[int, float]

DEFAULT_MAX_POINTS = 10**7


class ResourceCapError(RuntimeError):
    """A finite enumeration would exceed the configured point cap."""


def max_points() -> int:
    raw = os.environ.get("CZLAB_MAX_POINTS")
    if raw is None:
        return DEFAULT_MAX_POINTS
    return int(raw)


def _fmt(b: Bound) -> str:
    if b == INF:
        return "+inf"
    if b == -INF:
        return "-inf"
    return str(int(b))


class IntervalZ(NamedTuple):
    """Integer interval ``[lo, hi]``; ``lo`` may be ``-inf`` and ``hi`` ``+inf``."""

    lo: Bound = -INF
    hi: Bound = INF

    @classmethod
    def point(cls, v: int) -> IntervalZ:
        return cls(v, v)

    @classmethod
    def at_most(cls, v: Bound) -> IntervalZ:
        return cls(-INF, v)

    @classmethod
    def at_least(cls, v: Bound) -> IntervalZ:
        return cls(v, INF)

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_full(self) -> bool:
        return self.lo == -INF and self.hi == INF

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __and__(self, other: IntervalZ) -> IntervalZ:
        return IntervalZ(max(self.lo, other.lo), min(self.hi, other.hi))

    def issubset(self, other: IntervalZ) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def shift(self, c: int) -> IntervalZ:
        return IntervalZ(self.lo + c, self.hi + c)

    def __neg__(self) -> IntervalZ:
        return IntervalZ(-self.hi, -self.lo)

    def __add__(self, other: IntervalZ) -> IntervalZ:
        return IntervalZ(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: IntervalZ) -> IntervalZ:
        return IntervalZ(self.lo - other.hi, self.hi - other.lo)

    def complement(self) -> list[IntervalZ]:
        """Integer complement as at most two half-lines."""
        if self.is_empty:
            return [IntervalZ()]
        out = []
        if self.lo != -INF:
            out.append(IntervalZ(-INF, self.lo - 1))
        if self.hi != INF:
            out.append(IntervalZ(self.hi + 1, INF))
        return out

    def __str__(self) -> str:
        return f"[{_fmt(self.lo)},{_fmt(self.hi)}]"


FULL_INTERVAL = IntervalZ()


class Cell(NamedTuple):
    """``{(x, y) : x in ix, y in iy, x - y in id}``."""

    ix: IntervalZ = FULL_INTERVAL
    iy: IntervalZ = FULL_INTERVAL
    id: IntervalZ = FULL_INTERVAL

    @classmethod
    def make(cls, x=None, y=None, d=None) -> Cell:
        """Build from ``(lo, hi)`` pairs; ``None`` in either slot is unbounded."""

        def iv(bounds):
            if bounds is None:
                return FULL_INTERVAL
            if isinstance(bounds, IntervalZ):
                return bounds
            lo, hi = bounds
            return IntervalZ(-INF if lo is None else lo, INF if hi is None else hi)

        return cls(iv(x), iv(y), iv(d))

    @classmethod
    def point(cls, p) -> Cell:
        x, y = p
        return cls(IntervalZ.point(x), IntervalZ.point(y), IntervalZ.point(x - y))

    def tight(self) -> Cell | None:
        """Closed form of the cell, or ``None`` when it is empty."""
        ix, iy, idf = self.ix, self.iy, self.id
        if ix.lo > ix.hi or iy.lo > iy.hi:
            return None
        dlo = max(idf.lo, ix.lo - iy.hi)
        dhi = min(idf.hi, ix.hi - iy.lo)
        if dlo > dhi:
            return None
        xlo = max(ix.lo, iy.lo + idf.lo)
        xhi = min(ix.hi, iy.hi + idf.hi)
        ylo = max(iy.lo, ix.lo - idf.hi)
        yhi = min(iy.hi, ix.hi - idf.lo)
        return Cell(IntervalZ(xlo, xhi), IntervalZ(ylo, yhi), IntervalZ(dlo, dhi))

    def meet(self, other: Cell) -> Cell | None:
        """``(self & other).tight()`` without the intermediate cell."""
        a, b = self.ix, other.ix
        xlo = a.lo if a.lo >= b.lo else b.lo
        xhi = a.hi if a.hi <= b.hi else b.hi
        a, b = self.iy, other.iy
        ylo = a.lo if a.lo >= b.lo else b.lo
        yhi = a.hi if a.hi <= b.hi else b.hi
        if xlo > xhi or ylo > yhi:
            return None
        a, b = self.id, other.id
        dlo = max(a.lo, b.lo, xlo - yhi)
        dhi = min(a.hi, b.hi, xhi - ylo)
        if dlo > dhi:
            return None
        return Cell(
            IntervalZ(max(xlo, ylo + dlo), min(xhi, yhi + dhi)),
            IntervalZ(max(ylo, xlo - dhi), min(yhi, xhi - dlo)),
            IntervalZ(dlo, dhi),
        )

    @property
    def is_empty(self) -> bool:
        return self.tight() is None

    def contains(self, x: int, y: int) -> bool:
        return x in self.ix and y in self.iy and (x - y) in self.id

    def __and__(self, other: Cell) -> Cell:
        return Cell(self.ix & other.ix, self.iy & other.iy, self.id & other.id)

    def issubset(self, other: Cell) -> bool:
        # exact only when self is tight: projections of a tight cell are its intervals
        return (
            self.ix.issubset(other.ix)
            and self.iy.issubset(other.iy)
            and self.id.issubset(other.id)
        )

    def complement_cells(self) -> list[Cell]:
        """Disjoint cells whose union is the complement of this cell."""
        out = [Cell(ix=c) for c in self.ix.complement()]
        out += [Cell(ix=self.ix, iy=c) for c in self.iy.complement()]
        out += [Cell(self.ix, self.iy, c) for c in self.id.complement()]
        return out

    def inverted(self) -> Cell:
        return Cell(self.iy, self.ix, -self.id)

    def sample(self) -> Element:
        """Some point of a tight cell."""

        def pick(iv: IntervalZ, pref: int = 0) -> int:
            return int(min(max(pref, iv.lo), iv.hi))

        x = pick(self.ix)
        col = self.iy & IntervalZ(x - self.id.hi, x - self.id.lo)
        return Element(x, pick(col, x))

    def constants(self) -> list[int]:
        vals = [self.ix.lo, self.ix.hi, self.iy.lo, self.iy.hi, self.id.lo, self.id.hi]
        return [int(v) for v in vals if abs(v) != INF]

    def __str__(self) -> str:
        return f"{{x in {self.ix}; y in {self.iy}; d in {self.id}}}"


FULL_CELL = Cell()


@dataclass(frozen=True, slots=True)
class Box:
    """Finite rectangle ``[xlo, xhi] x [ylo, yhi]``."""

    xlo: int
    xhi: int
    ylo: int
    yhi: int

    @classmethod
    def square(cls, lo: int, hi: int | None = None) -> Box:
        if hi is None:
            lo, hi = -lo, lo
        return cls(lo, hi, lo, hi)

    @classmethod
    def parse(cls, text: str) -> Box:
        """Parse ``XLO..XHI,YLO..YHI`` (a single range means a square)."""
        parts = text.split(",")
        if len(parts) == 1:
            parts = parts * 2
        if len(parts) != 2:
            raise ValueError(f"malformed window {text!r}")
        bounds = []
        for part in parts:
            lo, sep, hi = part.strip().partition("..")
            if not sep:
                raise ValueError(f"malformed window {text!r}")
            bounds += [int(lo), int(hi)]
        box = cls(*bounds)
        if box.xlo > box.xhi or box.ylo > box.yhi:
            raise ValueError(f"empty window {text!r}")
        return box

    @property
    def size(self) -> int:
        return max(0, self.xhi - self.xlo + 1) * max(0, self.yhi - self.ylo + 1)

    def cell(self) -> Cell:
        return Cell(IntervalZ(self.xlo, self.xhi), IntervalZ(self.ylo, self.yhi))

    def points(self) -> Iterator[Element]:
        for x in range(self.xlo, self.xhi + 1):
            for y in range(self.ylo, self.yhi + 1):
                yield Element(x, y)

    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        xs, ys = np.meshgrid(
            np.arange(self.xlo, self.xhi + 1, dtype=np.int64),
            np.arange(self.ylo, self.yhi + 1, dtype=np.int64),
            indexing="ij",
        )
        return xs.ravel(), ys.ravel()

    def __contains__(self, p) -> bool:
        x, y = p
        return self.xlo <= x <= self.xhi and self.ylo <= y <= self.yhi

    def __str__(self) -> str:
        return f"{self.xlo}..{self.xhi},{self.ylo}..{self.yhi}"


# --- functionals for sup_along -------------------------------------------


@dataclass(frozen=True)
class MinXY:
    """``sup min(x, y)`` over the region."""

    def cell_sup(self, c: Cell) -> Bound:
        return min(c.ix.hi, c.iy.hi)


@dataclass(frozen=True)
class DiffWithinYLe:
    """``sup (x - y)`` over the part of the region with ``y <= c``."""

    c: int

    def cell_sup(self, c: Cell) -> Bound:
        t = (c & Cell(iy=IntervalZ.at_most(self.c))).tight()
        return -INF if t is None else t.id.hi


@dataclass(frozen=True)
class TAlongDownRay:
    """``sup t`` with ``(i + t, j + t)`` in the region."""

    i: int
    j: int

    def cell_sup(self, c: Cell) -> Bound:
        if (self.i - self.j) not in c.id:
            return -INF
        lo = max(c.ix.lo - self.i, c.iy.lo - self.j)
        hi = min(c.ix.hi - self.i, c.iy.hi - self.j)
        return hi if lo <= hi else -INF


MIN_XY = MinXY()


# --- regions ---------------------------------------------------------------


def _normalize(cells: Iterable[Cell]) -> tuple[Cell, ...]:
    tight = []
    for c in cells:
        t = c.tight()
        if t is not None:
            tight.append(t)
    kept: list[Cell] = []
    for idx, c in enumerate(tight):
        subsumed = False
        for jdx, other in enumerate(tight):
            if jdx == idx or not c.issubset(other):
                continue
            # of two identical cells keep the first
            if jdx < idx or not other.issubset(c):
                subsumed = True
                break
        if not subsumed:
            kept.append(c)
    return tuple(kept)


class Region:
    """Finite union of cells; immutable.

    ``==`` is semantic equality (decided through two subset tests), so
    regions are not hashable.
    """

    __slots__ = ("cells",)

    def __init__(self, cells: Iterable[Cell] = ()):
        object.__setattr__(self, "cells", _normalize(cells))

    def __setattr__(self, name, value):
        raise AttributeError("Region is immutable")

    __hash__ = None  # type: ignore[assignment]

    # constructors
    @classmethod
    def _normal(cls, cells: tuple[Cell, ...]) -> Region:
        # caller guarantees the cells are already normalized
        r = object.__new__(cls)
        object.__setattr__(r, "cells", cells)
        return r

    @classmethod
    def empty(cls) -> Region:
        return cls(())

    @classmethod
    def full(cls) -> Region:
        return cls((FULL_CELL,))

    @classmethod
    def singleton(cls, p) -> Region:
        return cls((Cell.point(p),))

    @classmethod
    def points(cls, pts: Iterable) -> Region:
        return cls(Cell.point(p) for p in pts)

    @classmethod
    def of(cls, *cells: Cell) -> Region:
        return cls(cells)

    # queries
    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def member(self, p) -> bool:
        x, y = p
        return any(c.contains(x, y) for c in self.cells)

    __contains__ = member

    def is_empty(self) -> bool:
        return not self.cells

    def is_subset(self, other: Region) -> bool:
        for a in self.cells:
            if any(a.issubset(b) for b in other.cells):
                continue
            if _cell_minus(a, other.cells, stop_on_first=True):
                return False
        return True

    __le__ = is_subset

    def equals(self, other: Region) -> bool:
        return self.is_subset(other) and other.is_subset(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Region):
            return NotImplemented
        return self.equals(other)

    def sample_point(self) -> Element | None:
        """A concrete member of the region, or ``None`` when it is empty."""
        return self.cells[0].sample() if self.cells else None

    def constants(self) -> list[int]:
        return [v for c in self.cells for v in c.constants()]

    # boolean algebra
    def union(self, other: Region) -> Region:
        return Region(self.cells + other.cells)

    __or__ = union

    def intersect(self, other: Region) -> Region:
        return Region(t for a in self.cells for b in other.cells if (t := a.meet(b)) is not None)

    __and__ = intersect

    def complement(self) -> Region:
        # acc stays pairwise disjoint, so tightening alone keeps it normal
        acc: list[Cell] = [FULL_CELL]
        for c in self.cells:
            pieces = c.complement_cells()
            acc = [t for a in acc for p in pieces if (t := a.meet(p)) is not None]
            if not acc:
                break
        return Region._normal(tuple(acc))

    __invert__ = complement

    def difference(self, other: Region) -> Region:
        out: list[Cell] = []
        for a in self.cells:
            out += _cell_minus(a, other.cells)
        return Region(out)

    __sub__ = difference

    # semigroup translations
    def translate_right(self, g) -> Region:
        """``{z * g : z in R}``."""
        k, l = g
        out = []
        for c in self.cells:
            lower = (c & Cell(iy=IntervalZ.at_most(k))).tight()
            if lower is not None:
                out.append(Cell(lower.id.shift(k), IntervalZ.point(l), lower.id.shift(k - l)))
            upper = (c & Cell(iy=IntervalZ.at_least(k))).tight()
            if upper is not None:
                out.append(Cell(upper.ix, upper.iy.shift(l - k), upper.id.shift(k - l)))
        return Region(out)

    def translate_left(self, g) -> Region:
        """``{g * z : z in R}``."""
        k, l = g
        out = []
        for c in self.cells:
            right = (c & Cell(ix=IntervalZ.at_least(l))).tight()
            if right is not None:
                out.append(Cell(right.ix.shift(k - l), right.iy, right.id.shift(k - l)))
            left = (c & Cell(ix=IntervalZ.at_most(l))).tight()
            if left is not None:
                out.append(Cell(IntervalZ.point(k), (-left.id).shift(l), left.id.shift(k - l)))
        return Region(out)

    def preimage_right(self, g) -> Region:
        """``{z : z * g in R}``."""
        k, l = g
        out = []
        for c in self.cells:
            if l in c.iy:
                out.append(Cell(iy=IntervalZ.at_most(k), id=c.ix.shift(-k) & c.id.shift(l - k)))
            out.append(
                Cell(c.ix, c.iy.shift(k - l) & IntervalZ.at_least(k), c.id.shift(l - k))
            )
        return Region(out)

    def preimage_left(self, g) -> Region:
        """``{z : g * z in R}``."""
        k, l = g
        out = []
        for c in self.cells:
            out.append(
                Cell(c.ix.shift(l - k) & IntervalZ.at_least(l), c.iy, c.id.shift(l - k))
            )
            if k in c.ix:
                out.append(Cell(ix=IntervalZ.at_most(l), id=(-c.iy).shift(l) & c.id.shift(l - k)))
        return Region(out)

    def product(self, other: Region) -> Region:
        """``{a * b : a in R1, b in R2}``."""
        out = []
        for c1 in self.cells:
            for c2 in other.cells:
                out += _cell_product(c1, c2)
        return Region(out)

    __mul__ = product

    def inverted(self) -> Region:
        """Image under ``(x, y) -> (y, x)``."""
        return Region(c.inverted() for c in self.cells)

    # direction queries
    def sup_along(self, functional) -> Bound:
        return max((functional.cell_sup(c) for c in self.cells), default=-INF)

    # finite views
    def enumerate(self, box: Box, cap: int | None = None) -> list[Element]:
        """``R`` intersected with ``box``, lexicographically ordered."""
        cap = max_points() if cap is None else cap
        if box.size > cap:
            raise ResourceCapError(f"window {box} has {box.size} points, cap is {cap}")
        bc = box.cell()
        found: set[Element] = set()
        for c in self.cells:
            t = (c & bc).tight()
            if t is None:
                continue
            for x in range(int(t.ix.lo), int(t.ix.hi) + 1):
                col = t.iy & IntervalZ(x - t.id.hi, x - t.id.lo)
                for y in range(int(col.lo), int(col.hi) + 1):
                    found.add(Element(x, y))
        return sorted(found)

    def mask(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Vectorised membership for integer coordinate arrays."""
        out = np.zeros(xs.shape, dtype=bool)
        ds = xs - ys
        for c in self.cells:
            out |= (
                (xs >= c.ix.lo) & (xs <= c.ix.hi)
                & (ys >= c.iy.lo) & (ys <= c.iy.hi)
                & (ds >= c.id.lo) & (ds <= c.id.hi)
            )
        return out

    def __str__(self) -> str:
        if not self.cells:
            return "empty"
        return " | ".join(str(c) for c in self.cells)

    def __repr__(self) -> str:
        return f"Region({self})"


def _cell_minus(a: Cell, others: Sequence[Cell], stop_on_first: bool = False) -> list[Cell]:
    """Cells covering ``a`` minus the union of ``others``.

    With ``stop_on_first`` the routine returns as soon as a nonempty remainder
    is certain, which is all a subset test needs.
    """
    acc = [a]
    for b in others:
        nxt: list[Cell] = []
        pieces = None
        for c in acc:
            if (c & b).tight() is None:
                nxt.append(c)
                continue
            if pieces is None:
                pieces = b.complement_cells()
            for p in pieces:
                t = (c & p).tight()
                if t is not None:
                    nxt.append(t)
        acc = nxt
        if not acc:
            return []
    return acc if not stop_on_first else acc[:1]


def _cell_product(c1: Cell, c2: Cell) -> list[Cell]:
    """Exact product of two tight cells as at most two cells.

    Branch ``y1 <= x2`` yields ``(d1 + x2, y2)``; branch ``y1 >= x2`` yields
    ``(x1, y1 - d2)``.  In each branch the coupling inequality reduces, by
    one-dimensional Helly, to a bound on one operand plus one half-line on
    the output.
    """
    out = []
    c2a = (c2 & Cell(ix=IntervalZ.at_least(c1.iy.lo))).tight()
    if c2a is not None:
        out.append(
            Cell(
                (c2a.ix + c1.id) & IntervalZ.at_least(c1.ix.lo),
                c2a.iy,
                c2a.id + c1.id,
            )
        )
    c1b = (c1 & Cell(iy=IntervalZ.at_least(c2.ix.lo))).tight()
    if c1b is not None:
        out.append(
            Cell(
                c1b.ix,
                (c1b.iy - c2.id) & IntervalZ.at_least(c2.iy.lo),
                c1b.id + c2.id,
            )
        )
    return out


# module-level spellings of the region operations


def member(r: Region, p) -> bool:
    return r.member(p)


def union(a: Region, b: Region) -> Region:
    return a.union(b)


def intersect(a: Region, b: Region) -> Region:
    return a.intersect(b)


def complement(r: Region) -> Region:
    return r.complement()


def difference(a: Region, b: Region) -> Region:
    return a.difference(b)


def is_empty(r: Region) -> bool:
    return r.is_empty()


def is_subset(a: Region, b: Region) -> bool:
    return a.is_subset(b)


def equals(a: Region, b: Region) -> bool:
    return a.equals(b)


def translate_right(r: Region, g) -> Region:
    return r.translate_right(g)


def translate_left(g, r: Region) -> Region:
    return r.translate_left(g)


def preimage_right(r: Region, g) -> Region:
    return r.preimage_right(g)


def preimage_left(g, r: Region) -> Region:
    return r.preimage_left(g)


def product(a: Region, b: Region) -> Region:
    return a.product(b)


def sup_along(r: Region, functional) -> Bound:
    return r.sup_along(functional)


def enumerate_region(r: Region, box: Box, cap: int | None = None) -> list[Element]:
    return r.enumerate(box, cap)
