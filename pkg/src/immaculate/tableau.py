"""Fillings of composition diagrams and the immaculate/standard predicates."""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

from .composition import Cell, Composition
from .errors import ParseError

# Entry value reported for cells outside the diagram.  Using a real infinity
# makes every comparison against missing neighbours come out the right way
# without case analysis.
INFINITY = math.inf


def parse_grid_text(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse rows of whitespace-separated integers, one diagram row per line."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise ParseError(f"bad entry on line {lineno}: {line.strip()!r}") from None
    if not rows:
        raise ParseError("no rows found")
    return tuple(rows)


def format_grid_text(rows: Iterable[Iterable[int]]) -> str:
    """Render rows as lines of space-separated integers (no trailing newline)."""
    return "\n".join(" ".join(str(v) for v in row) for row in rows)


def _validate_rows(rows) -> tuple[tuple[int, ...], ...]:
    out = []
    for i, row in enumerate(rows, 1):
        row = tuple(row)
        if not row:
            raise ValueError(f"row {i} is empty")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"entries must be positive integers, got {v!r} in row {i}")
        out.append(row)
    if not out:
        raise ValueError("a tableau needs at least one row")
    return tuple(out)


class Tableau:
    """An immutable filling of a composition diagram with positive integers.

    ``rows[i-1][j-1]`` holds the entry of cell (i, j); the shape is read off
    the row lengths.  All transformations elsewhere in the package build new
    tableaux instead of mutating.
    """

    __slots__ = ("rows", "shape")

    rows: tuple[tuple[int, ...], ...]
    shape: Composition

    def __init__(self, rows: Iterable[Iterable[int]]):
        object.__setattr__(self, "rows", _validate_rows(rows))
        object.__setattr__(self, "shape", Composition(tuple(len(r) for r in self.rows)))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.rows))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(map(list, self.rows))!r})"

    def __str__(self) -> str:
        return self.to_text()

    @property
    def n(self) -> int:
        return self.shape.n

    def entry_at(self, cell) -> int | float:
        """Entry of cell, or INFINITY when cell lies outside the diagram."""
        row, col = cell
        if (row, col) in self.shape:
            return self.rows[row - 1][col - 1]
        return INFINITY

    def is_stable(self, cell) -> bool:
        """Local order condition at cell, with INFINITY for missing neighbours.

        Off the first column the entry only needs to be <= its right
        neighbour.  On the first column it must additionally be strictly
        below the entry underneath: <= to the right, < downward.
        """
        row, col = self.shape.require_cell(cell)
        e = self.rows[row - 1][col - 1]
        right = self.entry_at((row, col + 1))
        if col > 1:
            return e <= right
        return e <= right and e < self.entry_at((row + 1, 1))

    def content(self) -> tuple[int, ...]:
        """Multiplicity vector: entry k occurs content()[k-1] times.

        The length is the largest entry, so trailing zeros never appear but
        interior zeros can (and make the filling non-immaculate).
        """
        counts = [0] * max(max(row) for row in self.rows)
        for row in self.rows:
            for v in row:
                counts[v - 1] += 1
        return tuple(counts)

    def is_immaculate(self) -> bool:
        """True when every cell is stable and the content has no gaps."""
        return 0 not in self.content() and all(
            self.is_stable(c) for c in self.shape.cells()
        )

    def is_standard(self) -> bool:
        """True when the entries are exactly 1..n, each once (no order demanded)."""
        return self.content() == (1,) * self.n

    def is_standard_immaculate(self) -> bool:
        return self.is_standard() and all(self.is_stable(c) for c in self.shape.cells())

    def is_prefix_standard(self, cell, inclusive: bool = True) -> bool:
        """Stability restricted to the traversal-order prefix ending at cell.

        Only cells up to cell in cell_order() are considered, and neighbours
        beyond the prefix count as INFINITY, mirroring how partially built
        tableaux are judged mid-bijection.  With inclusive=False the prefix
        stops just before cell.
        """
        order = self.shape.cell_order()
        cutoff = self.shape.order_rank(cell)
        if not inclusive:
            cutoff -= 1
        prefix = set(order[:cutoff])

        def look(c: Cell) -> int | float:
            # prefix only ever contains diagram cells, so this also covers
            # neighbours that fall outside the diagram entirely
            return self.rows[c.row - 1][c.col - 1] if c in prefix else INFINITY

        for c in order[:cutoff]:
            e = self.rows[c.row - 1][c.col - 1]
            if e > look(Cell(c.row, c.col + 1)):
                return False
            if c.col == 1 and e >= look(Cell(c.row + 1, 1)):
                return False
        return True

    def flat(self) -> tuple[int, ...]:
        """All entries in row-major order (the layout the kernels use)."""
        return tuple(v for row in self.rows for v in row)

    @classmethod
    def from_flat(cls, shape: Composition, entries: Sequence[int]) -> "Tableau":
        if len(entries) != shape.n:
            raise ValueError(f"need {shape.n} entries for shape {shape}, got {len(entries)}")
        rows = []
        pos = 0
        for part in shape.parts:
            rows.append(tuple(entries[pos : pos + part]))
            pos += part
        return cls(rows)

    def to_text(self) -> str:
        return format_grid_text(self.rows)

    @classmethod
    def from_text(cls, text: str) -> "Tableau":
        try:
            return cls(parse_grid_text(text))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from None

    def to_json_obj(self) -> dict:
        return {"shape": list(self.shape.parts), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json_obj(cls, obj) -> "Tableau":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ParseError("tableau JSON must be an object with a 'rows' key")
        try:
            t = cls(obj["rows"])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad tableau rows: {exc}") from None
        if "shape" in obj and tuple(obj["shape"]) != t.shape.parts:
            raise ParseError(
                f"declared shape {obj['shape']} does not match rows of shape {t.shape}"
            )
        return t

    @classmethod
    def parse(cls, text: str) -> "Tableau":
        """Parse either the text format or the JSON format, by first character."""
        if text.lstrip().startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON: {exc}") from None
            return cls.from_json_obj(obj)
        return cls.from_text(text)
