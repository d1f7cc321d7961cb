"""End-to-end acceptance checks, one test per numbered criterion.

Run with -v for one line per criterion, or with -s to also get the printed
ACCEPTANCE summary lines.  Everything here is redundant with the unit tests
on purpose: this module is the single place that demonstrates the package
does what it promises, at the sizes it promises.
"""

import math
import time
from contextlib import contextmanager

from immaculate.bijection import HookTableau, Pair, jdt_slide, straighten, unstraighten
from immaculate.cli import main
from immaculate.composition import Cell, Composition, compositions, count_formula
from immaculate.enumeration import (
    count_brute,
    count_recursive,
    enumerate_standard_immaculate,
    verify_bijection,
)
from immaculate.bijection import hook_index_of_path, hook_path
from immaculate.tableau import Tableau

# The fully worked (4,1,4,2,1) expansion: starting pair, all twelve states,
# all eleven paths, and the final filling.
WIDE = Composition((4, 1, 4, 2, 1))
WIDE_P = Tableau([[1, 5, 8, 9], [2], [3, 4, 11, 12], [6, 10], [7]])
WIDE_J = HookTableau([[8, 2, 1, 1], [3], [6, 3, 1, 1], [1, 1], [1]])
WIDE_T = Tableau([[11, 8, 5, 9], [3], [10, 12, 2, 4], [1, 6], [7]])
WIDE_PATHS = [
    [(1, 1), (2, 1), (3, 1), (3, 2), (3, 3)],
    [(2, 1), (3, 1), (3, 2)],
    [(3, 1), (4, 1), (4, 2)],
    [(4, 1)],
    [(5, 1)],
    [(1, 2), (1, 3)],
    [(3, 2), (3, 3), (3, 4)],
    [(4, 2)],
    [(1, 3)],
    [(3, 3)],
    [(1, 4)],
]
WIDE_STATES = [
    ([[1, 5, 8, 9], [2], [3, 4, 11, 12], [6, 10], [7]],
     [[8, 2, 1, 1], [3], [6, 3, 1, 1], [1, 1], [1]]),
    ([[11, 5, 8, 9], [1], [2, 3, 4, 12], [6, 10], [7]],
     [[1, 2, 1, 1], [3], [6, 3, 1, 1], [1, 1], [1]]),
    ([[11, 5, 8, 9], [3], [1, 2, 4, 12], [6, 10], [7]],
     [[1, 2, 1, 1], [1], [6, 3, 1, 1], [1, 1], [1]]),
    ([[11, 5, 8, 9], [3], [10, 2, 4, 12], [1, 6], [7]],
     [[1, 2, 1, 1], [1], [1, 3, 1, 1], [1, 1], [1]]),
    ([[11, 5, 8, 9], [3], [10, 2, 4, 12], [1, 6], [7]],
     [[1, 2, 1, 1], [1], [1, 3, 1, 1], [1, 1], [1]]),
    ([[11, 5, 8, 9], [3], [10, 2, 4, 12], [1, 6], [7]],
     [[1, 2, 1, 1], [1], [1, 3, 1, 1], [1, 1], [1]]),
    ([[11, 8, 5, 9], [3], [10, 2, 4, 12], [1, 6], [7]],
     [[1, 1, 1, 1], [1], [1, 3, 1, 1], [1, 1], [1]]),
    ([[11, 8, 5, 9], [3], [10, 12, 2, 4], [1, 6], [7]],
     [[1, 1, 1, 1], [1], [1, 1, 1, 1], [1, 1], [1]]),
    ([[11, 8, 5, 9], [3], [10, 12, 2, 4], [1, 6], [7]],
     [[1, 1, 1, 1], [1], [1, 1, 1, 1], [1, 1], [1]]),
    ([[11, 8, 5, 9], [3], [10, 12, 2, 4], [1, 6], [7]],
     [[1, 1, 1, 1], [1], [1, 1, 1, 1], [1, 1], [1]]),
    ([[11, 8, 5, 9], [3], [10, 12, 2, 4], [1, 6], [7]],
     [[1, 1, 1, 1], [1], [1, 1, 1, 1], [1, 1], [1]]),
    ([[11, 8, 5, 9], [3], [10, 12, 2, 4], [1, 6], [7]],
     [[1, 1, 1, 1], [1], [1, 1, 1, 1], [1, 1], [1]]),
]

FIGURE_FOUR = {
    Tableau([[1, 2], [3], [4, 5]]),
    Tableau([[1, 3], [2], [4, 5]]),
    Tableau([[1, 4], [2], [3, 5]]),
    Tableau([[1, 5], [2], [3, 4]]),
}


@contextmanager
def criterion(num: int, what: str):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num}: FAIL - {what}")
        raise
    print(f"ACCEPTANCE {num}: PASS - {what} ({time.perf_counter() - t0:.2f}s)")


def test_criterion_1_hook_grids(capsys):
    with criterion(1, "hook length grids"):
        assert main(["hooks", "2,1,2"]) == 0
        assert capsys.readouterr().out == "5 1\n3\n2 1\n"
        grid = Composition((4, 1, 2, 3)).hook_lengths()
        assert grid == ((10, 3, 2, 1), (6,), (5, 1), (3, 2, 1))
        assert grid[0][1] == 3  # cell (1,2)
        assert grid[1][0] == 6  # cell (2,1)


def test_criterion_2_small_count_and_enumeration():
    with criterion(2, "count and enumeration on (2,1,2)"):
        alpha = Composition((2, 1, 2))
        assert count_formula(alpha) == 4
        assert set(enumerate_standard_immaculate(alpha)) == FIGURE_FOUR


def test_criterion_3_count_identity_through_n8():
    with criterion(3, "three counting routes agree for every shape, n = 1..8"):
        shapes = 0
        for n in range(1, 9):
            facts = math.factorial(n)
            for alpha in compositions(n):
                f = count_formula(alpha)
                assert f == count_recursive(alpha)
                assert f == count_brute(alpha)
                assert f * alpha.hook_product() == facts
                shapes += 1
        assert shapes == 255


def test_criterion_4_exhaustive_bijectivity_through_n6():
    with criterion(4, "exhaustive roundtrips with assertions, every shape, n = 1..6"):
        shapes = 0
        for n in range(1, 7):
            facts = math.factorial(n)
            for alpha in compositions(n):
                report = verify_bijection(alpha, mode="exhaustive")
                assert report.ok, report.summary()
                assert report.x_size == facts and report.x_checked == facts
                assert report.y_size == facts and report.y_checked == facts
                assert report.roundtrip_failures == []
                assert report.assertion_failures == []
                shapes += 1
        assert shapes == 63


def test_criterion_5_worked_example_state_by_state():
    with criterion(5, "the (4,1,4,2,1) expansion, all states and paths"):
        result, up = unstraighten(Pair(WIDE_P, WIDE_J), check=True)
        assert result == WIDE_T
        assert len(up.states) == 12 and len(up.paths) == 11
        for k, (rows_t, rows_j) in enumerate(WIDE_STATES):
            assert up.states[k] == (Tableau(rows_t), HookTableau(rows_j))
        assert [list(map(tuple, p)) for p in up.paths] == WIDE_PATHS
        assert up.paths[0] == (Cell(1, 1), Cell(2, 1), Cell(3, 1), Cell(3, 2), Cell(3, 3))

        pair, down = straighten(WIDE_T, check=True)
        assert pair == Pair(WIDE_P, WIDE_J)
        assert down.states == tuple(reversed(up.states))
        assert down.paths == tuple(reversed(up.paths))

        # the contraction's slide of entry 10 is the worked jeu de taquin move,
        # and the state it slides in stays prefix-standard through c_8 = (5,1)
        mid = Tableau([[11, 5, 8, 9], [3], [10, 2, 4, 12], [1, 6], [7]])
        _, path = jdt_slide(mid, 10, check=True)
        assert path == (Cell(3, 1), Cell(4, 1), Cell(4, 2))
        assert down.paths[8] == path
        assert mid.is_prefix_standard(Cell(5, 1))


def test_criterion_6_seeded_roundtrips_at_n20():
    with criterion(6, "1000 seeded roundtrips per side on an n = 20 shape"):
        alpha = Composition((4, 1, 4, 2, 1, 3, 2, 1, 1, 1))
        assert count_formula(alpha) == count_recursive(alpha) == 296281440
        report = verify_bijection(alpha, mode="sampled", sample_size=1000, seed=0)
        assert report.ok, report.summary()
        assert report.x_checked == 1000 and report.y_checked == 1000
        assert report.roundtrip_failures == []
        assert report.assertion_failures == []
        # a second large shape, counted both ways as an extra cross-check
        other = Composition((5, 1, 6, 4, 3, 1))
        assert count_formula(other) == count_recursive(other) == 523783260


def test_criterion_7_path_encoding_inverts_through_n8():
    with criterion(7, "hook index of the hook path is the identity, n = 1..8"):
        checked = 0
        for n in range(1, 9):
            for alpha in compositions(n):
                for cell in alpha.cells():
                    for v in range(1, alpha.hook_length(cell) + 1):
                        path = hook_path(alpha, cell, v)
                        assert hook_index_of_path(alpha, path, check=True) == v
                        checked += 1
        assert checked > 0
