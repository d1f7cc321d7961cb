"""The hook-walk shift map, the modified jeu de taquin, and their inverse.

Two mutually inverse transformations live here.  ``unstraighten`` turns a
(standard immaculate tableau, hook tableau) pair into an arbitrary standard
filling by a sequence of circular right shifts along hook paths; together the
pairs index exactly the n! fillings, which is what makes the hook-length
count formula work.  ``straighten`` recovers the pair by repeatedly sliding
entries with a modified jeu de taquin and recording where each slide stopped.

Both directions return a Trace recording every intermediate state and path,
and accept check=True to re-verify the structural invariants at every step.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence

from .composition import Cell, Composition
from .errors import InternalCheckError, InvalidInputError, ParseError
from .tableau import INFINITY, Tableau, format_grid_text, parse_grid_text

Path = tuple[Cell, ...]


class HookTableau:
    """A grid assigning every cell a value between 1 and its hook length.

    The bounds are enforced at construction, so holding a HookTableau is
    proof of validity.  Note the bottom cell of the right-most column has
    hook length 1, forcing its value to 1.
    """

    __slots__ = ("rows", "shape")

    rows: tuple[tuple[int, ...], ...]
    shape: Composition

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows or any(not r for r in rows):
            raise ValueError("hook tableau rows must be non-empty")
        shape = Composition(tuple(len(r) for r in rows))
        for i, row in enumerate(rows, 1):
            for j, v in enumerate(row, 1):
                if not isinstance(v, int) or isinstance(v, bool):
                    raise InvalidInputError(f"hook value at cell ({i}, {j}) must be an integer, got {v!r}")
                h = shape.hook_length(Cell(i, j))
                if not 1 <= v <= h:
                    raise InvalidInputError(
                        f"hook value {v} at cell ({i}, {j}) is outside 1..{h} for shape {shape}"
                    )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "shape", shape)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, HookTableau) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.rows))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(map(list, self.rows))!r})"

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def all_ones(cls, shape: Composition) -> "HookTableau":
        return cls(tuple((1,) * p for p in shape.parts))

    def value_at(self, cell) -> int:
        row, col = self.shape.require_cell(cell)
        return self.rows[row - 1][col - 1]

    def to_text(self) -> str:
        return format_grid_text(self.rows)

    @classmethod
    def from_text(cls, text: str) -> "HookTableau":
        return cls(parse_grid_text(text))

    def to_json_obj(self) -> dict:
        return {"shape": list(self.shape.parts), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json_obj(cls, obj) -> "HookTableau":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ParseError("hook tableau JSON must be an object with a 'rows' key")
        ht = cls(obj["rows"])
        if "shape" in obj and tuple(obj["shape"]) != ht.shape.parts:
            raise ParseError(
                f"declared shape {obj['shape']} does not match rows of shape {ht.shape}"
            )
        return ht


@dataclass(frozen=True)
class Pair:
    """A standard immaculate tableau together with a hook tableau of the same shape."""

    tableau: Tableau
    hooks: HookTableau

    def __post_init__(self) -> None:
        if self.tableau.shape != self.hooks.shape:
            raise InvalidInputError(
                f"tableau shape {self.tableau.shape} differs from hook tableau shape {self.hooks.shape}"
            )
        if not self.tableau.is_standard_immaculate():
            raise InvalidInputError("the tableau component of a pair must be standard immaculate")

    @property
    def shape(self) -> Composition:
        return self.tableau.shape

    def to_text(self) -> str:
        """Two blocks separated by a blank line: tableau first, hook values second."""
        return self.tableau.to_text() + "\n\n" + self.hooks.to_text()

    @classmethod
    def from_text(cls, text: str) -> "Pair":
        blocks = [b for b in re.split(r"\n[ \t]*\n", text.strip()) if b.strip()]
        if len(blocks) != 2:
            raise ParseError(
                f"expected two blocks separated by a blank line, found {len(blocks)}"
            )
        return cls(Tableau.from_text(blocks[0]), HookTableau.from_text(blocks[1]))

    def to_json_obj(self) -> dict:
        return {"P": self.tableau.to_json_obj(), "J": self.hooks.to_json_obj()}

    @classmethod
    def from_json_obj(cls, obj) -> "Pair":
        if not isinstance(obj, dict) or "P" not in obj or "J" not in obj:
            raise ParseError("pair JSON must be an object with 'P' and 'J' keys")
        return cls(Tableau.from_json_obj(obj["P"]), HookTableau.from_json_obj(obj["J"]))

    @classmethod
    def parse(cls, text: str) -> "Pair":
        if text.lstrip().startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON: {exc}") from None
            return cls.from_json_obj(obj)
        return cls.from_text(text)


@dataclass(frozen=True)
class Trace:
    """Every intermediate state of one run of straighten or unstraighten.

    states[k] holds (filling, hook values) after k steps, so states[0] is the
    input and states[-1] the output; paths[k] is the cell path step k+1 moved
    entries along.  A shape with n cells always yields n states and n-1 paths.
    """

    states: tuple[tuple[Tableau, HookTableau], ...]
    paths: tuple[Path, ...]

    def to_json_obj(self) -> dict:
        return {
            "shape": list(self.states[0][0].shape.parts),
            "states": [
                {"tableau": [list(r) for r in t.rows], "hooks": [list(r) for r in h.rows]}
                for t, h in self.states
            ],
            "paths": [[[c.row, c.col] for c in path] for path in self.paths],
        }


def hook_path(shape: Composition, start, index: int) -> Path:
    """Cells from start up to the index-th cell of start's hook, inclusive.

    Within a row this is just a rightward run.  From a first-column cell the
    hook continues through lower rows, so the path first walks down column 1
    and then right along the target's row.
    """
    start = shape.require_cell(start)
    h = shape.hook_length(start)
    if not 1 <= index <= h:
        raise ValueError(f"hook index {index} out of range 1..{h} for cell {tuple(start)}")
    target = shape.hook_cells(start)[index - 1]
    if target.row == start.row:
        return tuple(Cell(start.row, j) for j in range(start.col, target.col + 1))
    down = tuple(Cell(i, 1) for i in range(start.row, target.row + 1))
    return down + tuple(Cell(target.row, j) for j in range(2, target.col + 1))


def _path_cells_valid(shape: Composition, path: Sequence) -> tuple[Cell, ...]:
    if not path:
        raise ValueError("empty path")
    return tuple(shape.require_cell(c) for c in path)


def _check_path_shape(shape: Composition, path: Path) -> None:
    """Raise unless path is a column-1 descent followed by a single-row run."""
    seen_right = False
    for a, b in zip(path, path[1:]):
        if b == (a.row, a.col + 1):
            seen_right = True
        elif b == (a.row + 1, 1) and a.col == 1 and not seen_right:
            pass
        else:
            raise InternalCheckError(f"path step {tuple(a)} -> {tuple(b)} breaks the hook-path form")


def hook_index_of_path(shape: Composition, path: Sequence, check: bool = False) -> int:
    """Position of path's end within the hook of path's start (1-based).

    Uses the closed form: a same-row path of length m has index m, and a path
    descending from (i, 1) to (i', j') has index parts[i-1] + ... + parts[i'-2] + j'.
    With check=True the answer is cross-checked against the listed hook cells.
    """
    cells = _path_cells_valid(shape, path)
    start, end = cells[0], cells[-1]
    if end.row == start.row:
        if end.col < start.col:
            raise ValueError(f"path ends left of its start: {tuple(start)} -> {tuple(end)}")
        index = end.col - start.col + 1
    elif start.col == 1 and end.row > start.row:
        index = sum(shape.parts[start.row - 1 : end.row - 1]) + end.col
    else:
        raise ValueError(f"no hook runs from {tuple(start)} to {tuple(end)}")
    if check:
        _check_path_shape(shape, cells)
        listed = shape.hook_cells(start)
        if listed[index - 1] != end:
            raise InternalCheckError(
                f"closed-form hook index {index} disagrees with listed hook cells at {tuple(start)}"
            )
    return index


def circular_right_shift(t: Tableau, path: Sequence) -> Tableau:
    """New tableau with entries along path rotated one step toward the path's end.

    The entry of the last path cell wraps around to the first.  Cells off the
    path are untouched; a single-cell path is a no-op.
    """
    cells = _path_cells_valid(t.shape, path)
    grid = [list(r) for r in t.rows]
    _rotate_right(grid, cells)
    return Tableau(grid)


def circular_left_shift(t: Tableau, path: Sequence) -> Tableau:
    """Inverse of circular_right_shift on the same path."""
    cells = _path_cells_valid(t.shape, path)
    grid = [list(r) for r in t.rows]
    _rotate_left(grid, cells)
    return Tableau(grid)


def _rotate_right(grid: list[list[int]], cells: Sequence[Cell]) -> None:
    last = grid[cells[-1].row - 1][cells[-1].col - 1]
    for k in range(len(cells) - 1, 0, -1):
        a, b = cells[k - 1], cells[k]
        grid[b.row - 1][b.col - 1] = grid[a.row - 1][a.col - 1]
    grid[cells[0].row - 1][cells[0].col - 1] = last


def _rotate_left(grid: list[list[int]], cells: Sequence[Cell]) -> None:
    first = grid[cells[0].row - 1][cells[0].col - 1]
    for k in range(len(cells) - 1):
        a, b = cells[k], cells[k + 1]
        grid[a.row - 1][a.col - 1] = grid[b.row - 1][b.col - 1]
    grid[cells[-1].row - 1][cells[-1].col - 1] = first


def _slide_grid(grid: list[list[int]], shape: Composition, start: Cell) -> list[Cell]:
    """Slide the entry at start until it sits stably; mutates grid.

    One move swaps the wandering entry with its right neighbour, except on
    the first column where the smaller of the right and lower neighbours is
    chosen (missing neighbours count as INFINITY).  Returns the cells visited.
    """
    path = [start]
    i, j = start
    while True:
        e = grid[i - 1][j - 1]
        right = grid[i - 1][j] if j < shape.parts[i - 1] else INFINITY
        if j > 1:
            if e <= right:
                break
            grid[i - 1][j - 1], grid[i - 1][j] = right, e
            j += 1
        else:
            below = grid[i][0] if i < len(shape.parts) else INFINITY
            if e <= right and e < below:
                break
            if right == below:
                raise InternalCheckError(
                    f"tied neighbours {right} while sliding at cell ({i}, {j})"
                )
            if right < below:
                grid[i - 1][0], grid[i - 1][1] = right, e
                j = 2
            else:
                grid[i - 1][0], grid[i][0] = below, e
                i += 1
        path.append(Cell(i, j))
    return path


def _check_slide(before: Tableau, path: Path, after: Tableau) -> None:
    _check_path_shape(before.shape, path)
    if circular_left_shift(before, path) != after:
        raise InternalCheckError(
            f"slide along {[tuple(c) for c in path]} is not the circular left shift of that path"
        )


def jdt_slide(t: Tableau, value: int, check: bool = False) -> tuple[Tableau, Path]:
    """Modified jeu de taquin: slide the cell holding value until stable.

    t must be a standard filling (entries exactly 1..n).  Returns the new
    tableau and the path of cells the value visited; a value that is already
    stable stays put and yields a single-cell path.
    """
    if not t.is_standard():
        raise InvalidInputError("jeu de taquin needs a filling with entries exactly 1..n")
    if not 1 <= value <= t.n:
        raise ValueError(f"value {value} does not occur (entries run 1..{t.n})")
    start = next(
        Cell(i, j)
        for i, row in enumerate(t.rows, 1)
        for j, v in enumerate(row, 1)
        if v == value
    )
    grid = [list(r) for r in t.rows]
    path = tuple(_slide_grid(grid, t.shape, start))
    result = Tableau(grid)
    if check:
        _check_slide(t, path, result)
    return result, path


def unstraighten(pair: Pair, check: bool = False) -> tuple[Tableau, Trace]:
    """Expand a pair into a standard filling by hook-path right shifts.

    Walks the cells in reverse traversal order; at each cell the hook value
    says how far along the cell's hook to rotate entries, and the consumed
    hook value is reset to 1.  The final filling together with the Trace
    determines the input, which is what straighten exploits.
    """
    shape = pair.shape
    n = shape.n
    order = shape.cell_order()
    grid = [list(r) for r in pair.tableau.rows]
    hooks = [list(r) for r in pair.hooks.rows]
    states: list[tuple[Tableau, HookTableau]] = [(pair.tableau, pair.hooks)]
    paths: list[Path] = []
    for k in range(1, n):
        cell = order[n - k]
        if check and not states[-1][0].is_prefix_standard(cell, inclusive=True):
            raise InternalCheckError(
                f"state {k} lost prefix standardness at cell {tuple(cell)}"
            )
        v = hooks[cell.row - 1][cell.col - 1]
        hooks[cell.row - 1][cell.col - 1] = 1
        path = hook_path(shape, cell, v)
        _rotate_right(grid, path)
        states.append((Tableau(grid), HookTableau(hooks)))
        paths.append(path)
    if check:
        if any(v != 1 for row in hooks for v in row):
            raise InternalCheckError("hook values not exhausted after the final step")
        if not states[-1][0].is_prefix_standard(order[0], inclusive=True):
            raise InternalCheckError("final state lost prefix standardness at the first cell")
    return states[-1][0], Trace(tuple(states), tuple(paths))


def straighten(t: Tableau, check: bool = False) -> tuple[Pair, Trace]:
    """Contract a standard filling to its (standard immaculate, hook values) pair.

    Walks the cells in traversal order, sliding each cell's entry stable with
    the modified jeu de taquin and recording, as the cell's hook value, how
    far along the original cell's hook the entry travelled.  Inverse of
    unstraighten; the traces of the two runs mirror each other.
    """
    if not t.is_standard():
        raise InvalidInputError("straighten needs a filling with entries exactly 1..n")
    shape = t.shape
    n = shape.n
    order = shape.cell_order()
    grid = [list(r) for r in t.rows]
    hooks = [[1] * p for p in shape.parts]
    states: list[tuple[Tableau, HookTableau]] = [(t, HookTableau.all_ones(shape))]
    paths: list[Path] = []
    for k in range(1, n):
        cell = order[k]
        path = tuple(_slide_grid(grid, shape, cell))
        hooks[cell.row - 1][cell.col - 1] = hook_index_of_path(shape, path, check=check)
        frozen = Tableau(grid)
        if check:
            _check_slide(states[-1][0], path, frozen)
            if not frozen.is_prefix_standard(cell, inclusive=True):
                raise InternalCheckError(
                    f"state {k + 1} is not prefix standard at cell {tuple(cell)}"
                )
        states.append((frozen, HookTableau(hooks)))
        paths.append(path)
    try:
        pair = Pair(states[-1][0], states[-1][1])
    except InvalidInputError as exc:
        raise InternalCheckError(f"straighten produced an invalid pair: {exc}") from exc
    return pair, Trace(tuple(states), tuple(paths))
