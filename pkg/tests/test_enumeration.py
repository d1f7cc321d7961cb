import itertools
import json
import math
import random

import pytest

from immaculate.bijection import HookTableau, Pair, straighten, unstraighten
from immaculate.composition import Composition, compositions, count_formula
from immaculate.enumeration import (
    VerificationReport,
    all_hook_tableaux,
    all_standard_fillings,
    brute_force_standard_immaculate,
    count_brute,
    count_recursive,
    enumerate_standard_immaculate,
    random_hook_tableau,
    random_standard_filling,
    random_standard_immaculate,
    unrank_permutation,
    verify_bijection,
)
from immaculate.errors import GuardExceededError
from immaculate.tableau import Tableau


class TestAllStandardFillings:
    def test_counts_and_order(self):
        alpha = Composition((2, 1, 2))
        fillings = list(all_standard_fillings(alpha))
        assert len(fillings) == 120
        assert len(set(fillings)) == 120
        assert fillings[0] == Tableau([[1, 2], [3], [4, 5]])
        assert fillings[-1] == Tableau([[5, 4], [3], [2, 1]])

    def test_single_cell(self):
        assert list(all_standard_fillings(Composition((1,)))) == [Tableau([[1]])]


class TestBruteForce:
    def test_known_set(self):
        found = brute_force_standard_immaculate(Composition((2, 1, 2)))
        assert [t.rows for t in found] == [
            ((1, 2), (3,), (4, 5)),
            ((1, 3), (2,), (4, 5)),
            ((1, 4), (2,), (3, 5)),
            ((1, 5), (2,), (3, 4)),
        ]

    def test_guard(self):
        with pytest.raises(GuardExceededError, match="enumerate_standard_immaculate"):
            brute_force_standard_immaculate(Composition((11,)))
        # override allows it
        assert len(brute_force_standard_immaculate(Composition((11,)), guard=11)) == 1

    def test_count_brute_guard(self):
        with pytest.raises(GuardExceededError):
            count_brute(Composition((6, 6)))
        assert count_brute(Composition((3, 2))) == 6


class TestRecursiveEnumeration:
    def test_matches_brute_force_everywhere(self):
        for n in range(1, 7):
            for alpha in compositions(n):
                fast = list(enumerate_standard_immaculate(alpha))
                assert len(fast) == len(set(fast))
                assert set(fast) == set(brute_force_standard_immaculate(alpha))

    def test_streaming_does_not_share_state(self):
        # consuming lazily must give the same objects as list() up front
        alpha = Composition((3, 1, 2))
        eager = [t.rows for t in enumerate_standard_immaculate(alpha)]
        lazy = []
        for t in enumerate_standard_immaculate(alpha):
            lazy.append(t.rows)
        assert eager == lazy

    def test_single_column_and_single_row(self):
        assert list(enumerate_standard_immaculate(Composition((1, 1, 1)))) == [
            Tableau([[1], [2], [3]])
        ]
        assert list(enumerate_standard_immaculate(Composition((4,)))) == [
            Tableau([[1, 2, 3, 4]])
        ]

    def test_count_recursive_agrees(self):
        for n in range(1, 8):
            for alpha in compositions(n):
                assert count_recursive(alpha) == count_formula(alpha)


class TestAllHookTableaux:
    def test_cardinality(self):
        alpha = Composition((2, 1, 2))
        all_j = list(all_hook_tableaux(alpha))
        assert len(all_j) == alpha.hook_product() == 30
        assert len(set(all_j)) == 30

    def test_order_last_cell_fastest(self):
        alpha = Composition((2, 1))
        rows = [j.rows for j in all_hook_tableaux(alpha)]
        assert rows == [
            ((1, 1), (1,)), ((2, 1), (1,)), ((3, 1), (1,)),
        ]

    def test_single_cell(self):
        assert [j.rows for j in all_hook_tableaux(Composition((1,)))] == [((1,),)]

    def test_pairs_with_tableaux_cover_all_fillings(self):
        # |X| = n!: every filling arises from exactly one (tableau, hooks) pair
        alpha = Composition((1, 2, 1))
        seen = set()
        for p in enumerate_standard_immaculate(alpha):
            for j in all_hook_tableaux(alpha):
                t, _ = unstraighten(Pair(p, j))
                seen.add(t)
        assert len(seen) == math.factorial(4)


class TestUnrankPermutation:
    def test_matches_itertools(self):
        for n in range(1, 6):
            for rank, perm in enumerate(itertools.permutations(range(1, n + 1))):
                assert unrank_permutation(n, rank) == perm

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            unrank_permutation(3, 6)
        with pytest.raises(ValueError):
            unrank_permutation(3, -1)


class TestSampling:
    def test_deterministic_per_seed(self):
        alpha = Composition((4, 1, 4, 2, 1))
        a = [random_standard_immaculate(alpha, random.Random(5)).rows for _ in range(3)]
        b = [random_standard_immaculate(alpha, random.Random(5)).rows for _ in range(3)]
        assert a == b

    def test_sampled_objects_are_valid(self):
        rng = random.Random(0)
        alpha = Composition((3, 1, 2))
        for _ in range(50):
            assert random_standard_immaculate(alpha, rng).is_standard_immaculate()
            random_hook_tableau(alpha, rng)  # constructor enforces bounds
            assert random_standard_filling(alpha, rng).is_standard()

    def test_uniform_coverage_small(self):
        # 4 tableaux, 400 draws: every one should show up many times
        alpha = Composition((2, 1, 2))
        rng = random.Random(123)
        counts = {}
        for _ in range(400):
            t = random_standard_immaculate(alpha, rng)
            counts[t.rows] = counts.get(t.rows, 0) + 1
        assert len(counts) == 4
        assert all(c > 50 for c in counts.values())


class TestVerifyExhaustive:
    def test_small_shape_fully(self):
        report = verify_bijection(Composition((2, 1, 2)))
        assert report.ok
        assert report.count_formula == report.count_bruteforce == report.count_recursive == 4
        assert report.x_size == report.y_size == 120
        assert report.x_checked == 120 and report.y_checked == 120
        assert report.roundtrip_failures == [] and report.assertion_failures == []

    def test_all_shapes_through_six(self):
        for n in range(1, 7):
            for alpha in compositions(n):
                report = verify_bijection(alpha)
                assert report.ok, report.summary()
                assert report.x_size == math.factorial(n)
                assert report.y_size == math.factorial(n)

    def test_parallel_matches_serial(self):
        alpha = Composition((3, 1, 2))
        serial = verify_bijection(alpha, jobs=1).to_json_obj()
        parallel = verify_bijection(alpha, jobs=3).to_json_obj()
        for key in ("elapsed_s", "jobs"):
            serial.pop(key), parallel.pop(key)
        assert serial == parallel

    def test_guard(self):
        with pytest.raises(GuardExceededError, match="sampled"):
            verify_bijection(Composition((9,)))
        with pytest.raises(ValueError):
            verify_bijection(Composition((2, 1)), mode="fast")

    def test_backend_override(self):
        report = verify_bijection(Composition((2, 1, 1)), backend="pure")
        assert report.ok and report.backend == "pure"


class TestVerifySampled:
    def test_reproducible(self):
        alpha = Composition((4, 1, 4, 2, 1))
        a = verify_bijection(alpha, mode="sampled", sample_size=60, seed=9).to_json_obj()
        b = verify_bijection(alpha, mode="sampled", sample_size=60, seed=9).to_json_obj()
        a.pop("elapsed_s"), b.pop("elapsed_s")
        assert a == b

    def test_large_shape(self):
        report = verify_bijection(
            Composition((5, 1, 6, 4, 3, 1)), mode="sampled", sample_size=150, seed=2
        )
        assert report.ok
        assert report.x_size is None and report.count_bruteforce is None
        assert report.x_checked == report.y_checked == 150

    def test_report_json_fields_stable(self):
        report = verify_bijection(Composition((2, 1)), mode="sampled", sample_size=5, seed=0)
        obj = report.to_json_obj()
        assert set(obj) == {
            "shape", "mode", "ok", "count_formula", "count_recursive",
            "count_bruteforce", "x_size", "y_size", "x_checked", "y_checked",
            "roundtrip_failures", "assertion_failures", "seed", "sample_size",
            "jobs", "backend", "elapsed_s",
        }
        json.dumps(obj)


class TestReportJudgement:
    def _report(self, **overrides):
        base = dict(
            shape=(2, 1, 2), mode="exhaustive", count_formula=4, count_recursive=4,
            count_bruteforce=4, x_size=120, y_size=120, x_checked=120, y_checked=120,
            roundtrip_failures=[], assertion_failures=[], seed=None, sample_size=None,
            jobs=1, backend="pure", elapsed_s=0.0,
        )
        base.update(overrides)
        return VerificationReport(**base)

    def test_ok_requires_agreeing_counts(self):
        assert self._report().ok
        assert not self._report(count_bruteforce=5).ok
        assert not self._report(count_recursive=3).ok
        assert not self._report(x_size=119, x_checked=119).ok

    def test_ok_requires_no_failures(self):
        bad = {"side": "x", "index": 0, "stage": "roundtrip", "message": "boom"}
        assert not self._report(roundtrip_failures=[bad]).ok
        assert not self._report(assertion_failures=[bad]).ok

    def test_ok_requires_complete_exhaustive_scan(self):
        assert not self._report(x_checked=60).ok

    def test_summary_mentions_failures(self):
        bad = {"side": "y", "index": 3, "stage": "check", "message": "boom"}
        line = self._report(assertion_failures=[bad]).summary()
        assert "FAILED" in line and "failures=1" in line
