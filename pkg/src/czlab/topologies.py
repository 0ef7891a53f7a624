"""Topologies on Z x Z presented by monotone neighborhood bases.

Every family here has basic neighborhoods of the form ``{p} | tail(p, n)``
where the tails decrease in ``n`` and are either empty (isolated ``p``) or
escape to infinity in a fixed direction.  That shape lets each family
answer "does ``tail(p, n)`` meet ``S``" with one ``sup_along`` call, and all
the quantified queries below reduce to it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from .core import multiply, strict_down
from .element import Element, as_element
from .regions import (
    INF,
    MIN_XY,
    Bound,
    Box,
    Cell,
    DiffWithinYLe,
    IntervalZ,
    Region,
    TAlongDownRay,
)


class Side(enum.Enum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"

    @classmethod
    def parse(cls, text: str) -> Side:
        try:
            return cls(text.upper())
        except ValueError:
            raise ValueError(f"side must be LEFT or RIGHT, got {text!r}") from None


class NbhdFamily:
    """A topology given by ``basic(p, n)`` for ``n >= min_index``."""

    name: str = ""
    min_index: int = 1

    def basic(self, p, n: int) -> Region:
        p = as_element(p)
        if self.is_isolated(p):
            return Region.singleton(p)
        return Region.singleton(p) | self.tail(p, n)

    def tail(self, p: Element, n: int) -> Region:
        raise NotImplementedError

    def is_isolated(self, p) -> bool:
        raise NotImplementedError

    def tail_reach(self, p: Element, s: Region) -> Bound:
        """Largest ``n`` with ``tail(p, n)`` meeting ``s`` (``+inf``: every ``n``)."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class Tau1(NbhdFamily):
    """``U_n(p) = {p} | {(s, t) : s, t >= n}``."""

    name = "tau1"

    def tail(self, p, n):
        return Region.of(Cell(IntervalZ.at_least(n), IntervalZ.at_least(n)))

    def is_isolated(self, p):
        return False

    def tail_reach(self, p, s):
        return s.sup_along(MIN_XY)


class Tau2(NbhdFamily):
    """``V_n(p) = {p} | strict_down(p + (n, n))``."""

    name = "tau2"

    def tail(self, p, n):
        return strict_down((p.i + n, p.j + n))

    def is_isolated(self, p):
        return False

    def tail_reach(self, p, s):
        # tail(p, n) is the ray p + (t, t) for t >= n + 1
        return s.sup_along(TAlongDownRay(p.i, p.j)) - 1


class TauB(NbhdFamily):
    """Singletons at ``i <= 0``; wedges ``{y <= j, x - y >= i - j + n}`` at ``i >= 1``."""

    name = "tauB"

    def tail(self, p, n):
        return Region.of(
            Cell(iy=IntervalZ.at_most(p.j), id=IntervalZ.at_least(p.i - p.j + n))
        )

    def is_isolated(self, p):
        return p[0] <= 0

    def tail_reach(self, p, s):
        if self.is_isolated(p):
            return -INF
        return s.sup_along(DiffWithinYLe(p.j)) - (p.i - p.j)


class TauBDual(NbhdFamily):
    """Image of :class:`TauB` under inversion ``(i, j) -> (j, i)``."""

    name = "tauBd"
    _base = TauB()

    def tail(self, p, n):
        return self._base.tail(Element(p.j, p.i), n).inverted()

    def is_isolated(self, p):
        return p[1] <= 0

    def tail_reach(self, p, s):
        if self.is_isolated(p):
            return -INF
        return self._base.tail_reach(Element(p.j, p.i), s.inverted())


FAMILIES: dict[str, NbhdFamily] = {f.name: f for f in (Tau1(), Tau2(), TauB(), TauBDual())}


def get_family(name) -> NbhdFamily:
    if isinstance(name, NbhdFamily):
        return name
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(
            f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}"
        ) from None


# --- exact queries ----------------------------------------------------------


def is_isolated(fam, p, cross_check: bool = False) -> bool:
    """Closed-form isolation; ``cross_check`` also compares ``basic(p, n)`` with ``{p}``."""
    fam = get_family(fam)
    p = as_element(p)
    closed = fam.is_isolated(p)
    if cross_check:
        single = Region.singleton(p)
        by_equality = any(
            fam.basic(p, n) == single for n in range(fam.min_index, fam.min_index + 5)
        )
        if by_equality != closed:
            raise AssertionError(f"{fam.name}: isolation of {p} disagrees with its base")
    return closed


def exists_n_subset(fam, p, s: Region) -> int | None:
    """Least ``n`` with ``basic(p, n)`` inside ``s``, or ``None`` if there is none."""
    fam = get_family(fam)
    p = as_element(p)
    if not s.member(p):
        return None
    return _least_index_avoiding(fam, p, s.complement())


def _least_index_avoiding(fam: NbhdFamily, p: Element, bad: Region) -> int | None:
    # assumes p is not in bad
    if fam.is_isolated(p):
        return fam.min_index
    reach = fam.tail_reach(p, bad)
    if reach == INF:
        return None
    if reach == -INF:
        return fam.min_index
    return max(fam.min_index, int(reach) + 1)


def forall_n_meets(fam, p, s: Region) -> bool:
    """Whether every basic neighborhood of ``p`` meets ``s``."""
    fam = get_family(fam)
    p = as_element(p)
    if s.member(p):
        return True
    if fam.is_isolated(p):
        return False
    return fam.tail_reach(p, s) == INF


def separates(fam, p, q) -> int | None:
    """Least ``n`` with ``q`` outside ``basic(p, n)``; ``None`` means unresolved."""
    p, q = as_element(p), as_element(q)
    if p == q:
        raise ValueError("separation needs two distinct points")
    return _least_index_avoiding(get_family(fam), p, Region.singleton(q))


def isolated_in_window(fam, box: Box) -> list[Element]:
    fam = get_family(fam)
    return [p for p in box.points() if fam.is_isolated(p)]


# --- shift continuity -------------------------------------------------------


def shift_image(side: Side, g, region: Region) -> Region:
    if side is Side.LEFT:
        return region.translate_left(g)
    return region.translate_right(g)


def shift_preimage(side: Side, g, region: Region) -> Region:
    if side is Side.LEFT:
        return region.preimage_left(g)
    return region.preimage_right(g)


def shift_point(side: Side, g, p) -> Element:
    return multiply(g, p) if side is Side.LEFT else multiply(p, g)


@dataclass(frozen=True)
class ContinuityVerdict:
    kind: str  # "continuous" | "discontinuous" | "unresolved"
    family: str
    side: Side
    g: Element
    p: Element
    q: Element
    bound: int
    levels: tuple[int, ...] = ()
    witness_level: int | None = None
    witness_region: Region | None = field(default=None, compare=False)

    @property
    def continuous(self) -> bool:
        return self.kind == "continuous"

    @property
    def discontinuous(self) -> bool:
        return self.kind == "discontinuous"

    def __str__(self) -> str:
        head = f"{self.family} {self.side.value} shift by {self.g} at {self.p} (image {self.q})"
        if self.kind == "continuous":
            pairs = ", ".join(f"n({k})={n}" for k, n in enumerate(self.levels, 1))
            return f"{head}: Continuous-up-to({self.bound}) with {pairs}"
        if self.kind == "discontinuous":
            return (
                f"{head}: Discontinuous(k*={self.witness_level}); every basic "
                f"neighborhood of {self.p} meets {self.witness_region}"
            )
        return f"{head}: Unresolved({self.bound})"


def shift_continuity(fam, side, g, p, bound: int) -> ContinuityVerdict:
    """Decide continuity of the shift at ``p`` for target levels ``1..bound``.

    A level ``k`` is discontinuous exactly when every basic neighborhood of
    ``p`` meets the preimage of the complement of ``basic(q, k)``; that
    tail-intersection fact is the certificate carried by the verdict.
    """
    if bound < 1:
        raise ValueError("level bound K must be >= 1")
    fam = get_family(fam)
    side = side if isinstance(side, Side) else Side.parse(side)
    g, p = as_element(g), as_element(p)
    q = shift_point(side, g, p)
    levels = []
    for k in range(fam.min_index, fam.min_index + bound):
        target = fam.basic(q, k)
        bad = shift_preimage(side, g, target.complement())
        if forall_n_meets(fam, p, bad):
            return ContinuityVerdict(
                "discontinuous", fam.name, side, g, p, q, bound,
                tuple(levels), k, bad,
            )
        # the preimage of the target is the complement of bad
        n = _least_index_avoiding(fam, p, bad)
        if n is None:
            return ContinuityVerdict("unresolved", fam.name, side, g, p, q, bound, tuple(levels))
        levels.append(n)
    return ContinuityVerdict("continuous", fam.name, side, g, p, q, bound, tuple(levels))


def schema_holds(fam, side, g, p, bound: int, schema: Callable[[int], int] = lambda k: k) -> bool:
    """Whether ``shift(basic(p, schema(k))) <= basic(q, k)`` for ``k = 1..bound``."""
    fam = get_family(fam)
    side = side if isinstance(side, Side) else Side.parse(side)
    q = shift_point(side, g, p)
    return all(
        shift_image(side, g, fam.basic(p, schema(k))).is_subset(fam.basic(q, k))
        for k in range(fam.min_index, fam.min_index + bound)
    )
