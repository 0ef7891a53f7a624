"""Exact verification laboratory for the extended bicyclic semigroup Z x Z."""

from .core import (
    Element,
    comparable,
    conjugate_map,
    down_set,
    invert,
    is_idempotent,
    leq,
    multiply,
    phi,
    psi,
    solve_left,
    solve_right,
    solve_two_sided,
    strict_down,
    up_set,
    updown,
)
from .regions import Box, Cell, IntervalZ, Region

__version__ = "0.1.0"
