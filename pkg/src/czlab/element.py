"""The carrier value of the extended bicyclic semigroup."""

from __future__ import annotations

from typing import NamedTuple


class Element(NamedTuple):
    """A point ``(i, j)`` of Z x Z."""

    i: int
    j: int

    @property
    def diff(self) -> int:
        return self.i - self.j

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, tuple) or len(other) != 2:
            return NotImplemented
        from .core import multiply

        return multiply(self, other)

    def __rmul__(self, other):  # type: ignore[override]
        if not isinstance(other, tuple) or len(other) != 2:
            return NotImplemented
        from .core import multiply

        return multiply(other, self)

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


def as_element(p) -> Element:
    if isinstance(p, Element):
        return p
    i, j = p
    return Element(int(i), int(j))
