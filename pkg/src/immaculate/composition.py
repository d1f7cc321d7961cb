"""Compositions, their diagrams, hook sets, and the hook-length count formula.

A composition is an ordered sequence of positive integers; unlike a partition
the parts need not decrease.  Its diagram is the left-justified array of cells
with ``parts[i-1]`` cells in row i, rows numbered top to bottom and columns
left to right, both starting at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

from .errors import InternalCheckError, ParseError


class Cell(NamedTuple):
    """1-based (row, column) coordinates of a diagram cell.

    Tuple comparison on Cell is ordinary lexicographic order, which is *not*
    the traversal order used by the bijection; see Composition.cell_order().
    """

    row: int
    col: int


def _cell_sort_key(cell: Cell) -> tuple[int, int]:
    # Traversal order: right-most column first, within a column bottom-up.
    return (-cell.col, -cell.row)


@dataclass(frozen=True)
class Composition:
    """An ordered tuple of positive integers, used as the shape of a diagram."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise ValueError(f"composition parts must be positive integers, got {p!r}")
        object.__setattr__(self, "parts", parts)

    @cached_property
    def n(self) -> int:
        """Total number of cells (the size being composed)."""
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __contains__(self, cell) -> bool:
        row, col = cell
        return 1 <= row <= len(self.parts) and 1 <= col <= self.parts[row - 1]

    def require_cell(self, cell) -> Cell:
        """Return cell as a Cell, raising ValueError if it lies outside the diagram."""
        c = Cell(*cell)
        if c not in self:
            raise ValueError(f"cell {tuple(c)} is outside the diagram of {self}")
        return c

    @cached_property
    def _cells(self) -> tuple[Cell, ...]:
        return tuple(
            Cell(i, j) for i, part in enumerate(self.parts, 1) for j in range(1, part + 1)
        )

    def cells(self) -> tuple[Cell, ...]:
        """All cells in row-major order (row 1 left to right, then row 2, ...)."""
        return self._cells

    @cached_property
    def _cell_order(self) -> tuple[Cell, ...]:
        return tuple(sorted(self._cells, key=_cell_sort_key))

    def cell_order(self) -> tuple[Cell, ...]:
        """All cells in traversal order: columns right to left, bottom-up inside.

        The first cell is the bottom cell of the right-most column and the
        last is always (1, 1).  This is the total order the bijection walks.
        """
        return self._cell_order

    def order_rank(self, cell) -> int:
        """1-based position of cell in cell_order()."""
        c = self.require_cell(cell)
        return self._rank_map[c]

    @cached_property
    def _rank_map(self) -> dict[Cell, int]:
        return {c: k for k, c in enumerate(self._cell_order, 1)}

    def hook_cells(self, cell) -> tuple[Cell, ...]:
        """The hook of a cell, listed in row-major order.

        For a cell off the first column the hook is the rest of its row from
        the cell onward.  For a first-column cell (i, 1) it is every cell of
        rows i, i+1, ..., so first-column hooks reach across all lower rows.
        """
        i, j = self.require_cell(cell)
        if j > 1:
            return tuple(Cell(i, jj) for jj in range(j, self.parts[i - 1] + 1))
        return tuple(
            Cell(ii, jj)
            for ii in range(i, len(self.parts) + 1)
            for jj in range(1, self.parts[ii - 1] + 1)
        )

    def hook_length(self, cell) -> int:
        """Number of cells in the hook of cell (closed form, no enumeration)."""
        i, j = self.require_cell(cell)
        if j > 1:
            return self.parts[i - 1] - j + 1
        return sum(self.parts[i - 1 :])

    def hook_lengths(self) -> tuple[tuple[int, ...], ...]:
        """Grid of hook lengths, one tuple per row of the diagram."""
        return tuple(
            tuple(self.hook_length(Cell(i, j)) for j in range(1, part + 1))
            for i, part in enumerate(self.parts, 1)
        )

    @cached_property
    def _hook_product(self) -> int:
        prod = 1
        for row in self.hook_lengths():
            for h in row:
                prod *= h
        return prod

    def hook_product(self) -> int:
        """Product of all hook lengths of the diagram."""
        return self._hook_product


def parse_composition(text: str) -> Composition:
    """Parse "4,1,2,3" (an optional surrounding "(...)" is accepted too)."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ParseError(f"empty composition: {text!r}")
    parts = []
    for piece in s.split(","):
        piece = piece.strip()
        try:
            value = int(piece)
        except ValueError:
            raise ParseError(f"bad composition part {piece!r} in {text!r}") from None
        parts.append(value)
    try:
        return Composition(tuple(parts))
    except ValueError as exc:
        raise ParseError(f"bad composition {text!r}: {exc}") from None


def format_composition(alpha: Composition) -> str:
    """Inverse of parse_composition, e.g. "4,1,2,3"."""
    return str(alpha)


def compositions(n: int) -> Iterator[Composition]:
    """All 2**(n-1) compositions of n, in lexicographic order of their parts."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")

    def rec(remaining: int, prefix: tuple[int, ...]) -> Iterator[Composition]:
        if remaining == 0:
            yield Composition(prefix)
            return
        for first in range(1, remaining + 1):
            yield from rec(remaining - first, prefix + (first,))

    return rec(n, ())


def count_formula(alpha: Composition) -> int:
    """Number of standard immaculate tableaux of shape alpha: n! / prod(hooks).

    Evaluated in exact integer arithmetic; the division is asserted to be
    exact, which is itself a nontrivial fact about these hook lengths.
    """
    q, r = divmod(math.factorial(alpha.n), alpha.hook_product())
    if r != 0:
        raise InternalCheckError(
            f"hook product {alpha.hook_product()} does not divide {alpha.n}! for shape {alpha}"
        )
    return q
