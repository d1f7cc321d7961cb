"""Counting, enumeration, sampling, and the bijection verification harness.

The count of standard immaculate tableaux can be obtained three independent
ways: the hook-length formula, a recursion on where the largest entry sits,
and brute-force filtering of all n! fillings.  verify_bijection cross-checks
all three and roundtrips the straightening bijection over its whole domain
(or a seeded random sample of it), which together re-proves the formula for
the given shape.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from ._kernels import BACKEND, get_backend
from .bijection import HookTableau
from .composition import Composition, count_formula
from .errors import GuardExceededError, InternalCheckError
from .tableau import Tableau

# Factorial growth makes these defaults generous already: 10! fillings for
# the brute-force filter, and 2 * 8! roundtrips per shape when exhaustive.
BRUTE_GUARD = 10
EXHAUSTIVE_GUARD = 8


def _require_within(n: int, guard: int, doing: str, advice: str) -> None:
    if n > guard:
        raise GuardExceededError(
            f"{doing} needs n <= {guard} but the shape has {n} cells; {advice}"
        )


def all_standard_fillings(alpha: Composition) -> Iterator[Tableau]:
    """All n! fillings with entries 1..n, streamed in lexicographic flat order."""
    for perm in itertools.permutations(range(1, alpha.n + 1)):
        yield Tableau.from_flat(alpha, perm)


def brute_force_standard_immaculate(
    alpha: Composition, guard: int = BRUTE_GUARD
) -> list[Tableau]:
    """Filter all n! fillings for standard immaculateness, in generation order.

    Guarded by shape size; for bigger shapes use enumerate_standard_immaculate,
    which never touches non-immaculate fillings.
    """
    _require_within(alpha.n, guard, "brute-force filtering",
                    "use enumerate_standard_immaculate instead or raise guard=")
    ops = get_backend().ShapeOps(alpha.parts)
    return [
        Tableau.from_flat(alpha, perm)
        for perm in itertools.permutations(range(1, alpha.n + 1))
        if ops.is_standard_immaculate(perm)
    ]


def count_brute(alpha: Composition, guard: int = BRUTE_GUARD) -> int:
    """Count standard immaculate tableaux by scanning all n! fillings."""
    _require_within(alpha.n, guard, "brute-force counting",
                    "use count_recursive or the formula instead, or raise guard=")
    return get_backend().ShapeOps(alpha.parts).count_standard()


# -- recursion on the largest entry ----------------------------------------
#
# In a standard immaculate tableau the entry n admits no neighbour
# constraints pointing away from it, so it sits either at the right end of a
# row with at least two cells, or alone in a trailing one-cell row.  Deleting
# it leaves a standard immaculate tableau of the reduced shape, and every
# reduced tableau extends back uniquely.


def _reductions(parts: tuple[int, ...]) -> Iterator[tuple[int, tuple[int, ...]]]:
    """(row index to extend, reduced shape) options; row index -1 adds a new row."""
    for i, p in enumerate(parts):
        if p >= 2:
            yield i, parts[:i] + (p - 1,) + parts[i + 1 :]
    if parts[-1] == 1 and len(parts) > 1:
        yield -1, parts[:-1]


@lru_cache(maxsize=None)
def _count_rec(parts: tuple[int, ...]) -> int:
    if parts == (1,):
        return 1
    return sum(_count_rec(reduced) for _, reduced in _reductions(parts))


def count_recursive(alpha: Composition) -> int:
    """Count standard immaculate tableaux by the largest-entry recursion."""
    return _count_rec(alpha.parts)


def _enum_rows(parts: tuple[int, ...], n: int) -> Iterator[list[list[int]]]:
    # yields one shared mutable rows object; callers must snapshot before
    # advancing the generator (Tableau construction copies)
    if parts == (1,):
        yield [[1]]
        return
    for i, reduced in _reductions(parts):
        for rows in _enum_rows(reduced, n - 1):
            if i >= 0:
                rows[i].append(n)
                yield rows
                rows[i].pop()
            else:
                rows.append([n])
                yield rows
                rows.pop()


def enumerate_standard_immaculate(alpha: Composition) -> Iterator[Tableau]:
    """Stream every standard immaculate tableau of the shape exactly once.

    Runs the largest-entry recursion forward, so memory stays proportional to
    n and no time is wasted on fillings that fail the stability conditions.
    """
    for rows in _enum_rows(alpha.parts, alpha.n):
        yield Tableau(rows)


def all_hook_tableaux(alpha: Composition) -> Iterator[HookTableau]:
    """Stream all hook tableaux of the shape, last flat cell varying fastest.

    The stream order matches the index convention of the pair scans: the
    j-th emitted hook tableau is the mixed-radix expansion of j.
    """
    ranges = [range(1, alpha.hook_length(c) + 1) for c in alpha.cells()]
    for values in itertools.product(*ranges):
        rows = []
        pos = 0
        for part in alpha.parts:
            rows.append(values[pos : pos + part])
            pos += part
        yield HookTableau(rows)


def unrank_permutation(n: int, rank: int) -> tuple[int, ...]:
    """The rank-th permutation of 1..n in lexicographic order (0-based rank)."""
    if not 0 <= rank < math.factorial(n):
        raise ValueError(f"rank {rank} out of range for n={n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n, 0, -1):
        f = math.factorial(i - 1)
        idx, rank = divmod(rank, f)
        out.append(pool.pop(idx))
    return tuple(out)


def _unrank_hook_values(hooklen: Sequence[int], rem: int) -> list[int]:
    vals = [0] * len(hooklen)
    for pos in range(len(hooklen) - 1, -1, -1):
        rem, d = divmod(rem, hooklen[pos])
        vals[pos] = d + 1
    return vals


# -- random sampling --------------------------------------------------------


def random_standard_filling(alpha: Composition, rng: random.Random) -> Tableau:
    vals = list(range(1, alpha.n + 1))
    rng.shuffle(vals)
    return Tableau.from_flat(alpha, vals)


def random_hook_tableau(alpha: Composition, rng: random.Random) -> HookTableau:
    return HookTableau(
        [
            [rng.randint(1, alpha.hook_length((i, j))) for j in range(1, part + 1)]
            for i, part in enumerate(alpha.parts, 1)
        ]
    )


def random_standard_immaculate(alpha: Composition, rng: random.Random) -> Tableau:
    """Uniformly random standard immaculate tableau of the shape.

    Walks the largest-entry recursion downward, choosing each reduction with
    probability proportional to the count below it, so every tableau comes
    out with probability exactly 1 / count.
    """

    def rec(parts: tuple[int, ...], n: int) -> list[list[int]]:
        if parts == (1,):
            return [[1]]
        options = list(_reductions(parts))
        r = rng.randrange(_count_rec(parts))
        for i, reduced in options:
            w = _count_rec(reduced)
            if r < w:
                rows = rec(reduced, n - 1)
                if i >= 0:
                    rows[i].append(n)
                else:
                    rows.append([n])
                return rows
            r -= w
        raise AssertionError("reduction weights did not sum to the count")

    return Tableau(rec(alpha.parts, alpha.n))


# -- verification harness ----------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of one verify_bijection run; ok summarises everything."""

    shape: tuple[int, ...]
    mode: str
    count_formula: int
    count_recursive: int
    count_bruteforce: int | None
    x_size: int | None
    y_size: int | None
    x_checked: int
    y_checked: int
    roundtrip_failures: list[dict]
    assertion_failures: list[dict]
    seed: int | None
    sample_size: int | None
    jobs: int
    backend: str
    elapsed_s: float

    @property
    def counts_agree(self) -> bool:
        alpha = Composition(self.shape)
        facts = math.factorial(alpha.n)
        if self.count_formula != self.count_recursive:
            return False
        if self.count_formula * alpha.hook_product() != facts:
            return False
        if self.count_bruteforce is not None and self.count_bruteforce != self.count_formula:
            return False
        if self.x_size is not None and self.x_size != facts:
            return False
        if self.y_size is not None and self.y_size != facts:
            return False
        return True

    @property
    def ok(self) -> bool:
        complete = self.mode != "exhaustive" or (
            self.x_checked == self.x_size and self.y_checked == self.y_size
        )
        return (
            complete
            and self.counts_agree
            and not self.roundtrip_failures
            and not self.assertion_failures
        )

    def to_json_obj(self) -> dict:
        return {
            "shape": list(self.shape),
            "mode": self.mode,
            "ok": self.ok,
            "count_formula": self.count_formula,
            "count_recursive": self.count_recursive,
            "count_bruteforce": self.count_bruteforce,
            "x_size": self.x_size,
            "y_size": self.y_size,
            "x_checked": self.x_checked,
            "y_checked": self.y_checked,
            "roundtrip_failures": self.roundtrip_failures,
            "assertion_failures": self.assertion_failures,
            "seed": self.seed,
            "sample_size": self.sample_size,
            "jobs": self.jobs,
            "backend": self.backend,
            "elapsed_s": self.elapsed_s,
        }

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        counts = f"count={self.count_formula}"
        if self.count_bruteforce is not None:
            counts += f" brute={self.count_bruteforce}"
        counts += f" recursive={self.count_recursive}"
        sides = f"x_checked={self.x_checked} y_checked={self.y_checked}"
        bad = len(self.roundtrip_failures) + len(self.assertion_failures)
        tail = "" if bad == 0 else f" failures={bad}"
        return (
            f"{status} shape={','.join(map(str, self.shape))} mode={self.mode} "
            f"{counts} {sides}{tail} ({self.elapsed_s:.2f}s)"
        )


def _scan_task(args):
    parts, kind, start, stop, p_table, backend_name = args
    ops = get_backend(backend_name).ShapeOps(parts)
    if kind == "x":
        standard, failures = ops.scan_fillings(start, stop, True)
        return kind, standard, failures
    return kind, 0, ops.scan_pairs(p_table, start, stop, True)


def _chunks(total: int, pieces: int) -> list[tuple[int, int]]:
    step = -(-total // pieces) if pieces > 0 else total
    out = []
    lo = 0
    while lo < total:
        hi = min(lo + step, total)
        out.append((lo, hi))
        lo = hi
    return out


def _reshape(alpha: Composition, flat: Sequence[int]) -> list[list[int]]:
    rows = []
    pos = 0
    for part in alpha.parts:
        rows.append(list(flat[pos : pos + part]))
        pos += part
    return rows


def _split_failures(alpha, raw, side, p_table, hook_prod):
    """Attach the offending object to each raw (index, stage, message) entry."""
    hooklen = [alpha.hook_length(c) for c in alpha.cells()]
    roundtrip, assertion = [], []
    for index, stage, message in sorted(raw):
        entry = {"side": side, "index": index, "stage": stage, "message": message}
        if side == "x":
            entry["tableau"] = _reshape(alpha, unrank_permutation(alpha.n, index))
        else:
            p_idx, rem = divmod(index, hook_prod)
            entry["pair"] = {
                "P": _reshape(alpha, p_table[p_idx]),
                "J": _reshape(alpha, _unrank_hook_values(hooklen, rem)),
            }
        (assertion if stage == "check" else roundtrip).append(entry)
    return roundtrip, assertion


def verify_bijection(
    alpha: Composition,
    mode: str = "exhaustive",
    sample_size: int = 1000,
    seed: int = 0,
    jobs: int = 1,
    guard: int = EXHAUSTIVE_GUARD,
    backend: str | None = None,
) -> VerificationReport:
    """Cross-check the count formula and roundtrip the bijection on one shape.

    Exhaustive mode roundtrips every filling (straighten then unstraighten)
    and every pair (the other way around), with every structural invariant
    asserted at each step; jobs > 1 splits the index ranges over worker
    processes.  Sampled mode draws sample_size objects per side from the
    seeded Mersenne Twister stream instead, so runs are reproducible; jobs is
    ignored there.  Counting always happens in all available ways.
    """
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    backend_name = backend or BACKEND
    kernels = get_backend(backend_name)
    t0 = time.perf_counter()
    n = alpha.n
    cf = count_formula(alpha)
    cr = count_recursive(alpha)
    ops = kernels.ShapeOps(alpha.parts)

    if mode == "exhaustive":
        _require_within(n, guard, "exhaustive verification",
                        "use mode='sampled' or raise guard=")
        x_size = math.factorial(n)
        p_table = [t.flat() for t in enumerate_standard_immaculate(alpha)]
        y_size = len(p_table) * ops.hook_prod
        x_raw: list = []
        y_raw: list = []
        standard_total = 0
        if jobs <= 1:
            standard_total, x_raw = ops.scan_fillings(0, x_size, True)
            y_raw = ops.scan_pairs(p_table, 0, y_size, True)
        else:
            tasks = [
                (alpha.parts, "x", lo, hi, None, backend_name)
                for lo, hi in _chunks(x_size, jobs)
            ] + [
                (alpha.parts, "y", lo, hi, p_table, backend_name)
                for lo, hi in _chunks(y_size, jobs)
            ]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for kind, standard, failures in pool.map(_scan_task, tasks):
                    if kind == "x":
                        standard_total += standard
                        x_raw.extend(failures)
                    else:
                        y_raw.extend(failures)
        x_round, x_assert = _split_failures(alpha, x_raw, "x", None, None)
        y_round, y_assert = _split_failures(alpha, y_raw, "y", p_table, ops.hook_prod)
        return VerificationReport(
            shape=alpha.parts,
            mode=mode,
            count_formula=cf,
            count_recursive=cr,
            count_bruteforce=standard_total,
            x_size=x_size,
            y_size=y_size,
            x_checked=x_size,
            y_checked=y_size,
            roundtrip_failures=x_round + y_round,
            assertion_failures=x_assert + y_assert,
            seed=None,
            sample_size=None,
            jobs=jobs,
            backend=backend_name,
            elapsed_s=time.perf_counter() - t0,
        )

    rng = random.Random(seed)
    roundtrip: list[dict] = []
    assertion: list[dict] = []
    for i in range(sample_size):
        t = random_standard_filling(alpha, rng)
        flat = list(t.flat())
        entry = {"side": "x", "index": i, "tableau": [list(r) for r in t.rows]}
        try:
            p, j = ops.straighten(flat, check=True)
            back = ops.unstraighten(p, j, check=True)
        except InternalCheckError as exc:
            assertion.append({**entry, "stage": "check", "message": str(exc)})
            continue
        if back != flat:
            roundtrip.append(
                {**entry, "stage": "roundtrip",
                 "message": "straighten then unstraighten changed the filling"}
            )
    for i in range(sample_size):
        p = random_standard_immaculate(alpha, rng)
        j = random_hook_tableau(alpha, rng)
        flat_p = list(p.flat())
        flat_j = [v for row in j.rows for v in row]
        entry = {
            "side": "y",
            "index": i,
            "pair": {"P": [list(r) for r in p.rows], "J": [list(r) for r in j.rows]},
        }
        try:
            t = ops.unstraighten(flat_p, flat_j, check=True)
            p2, j2 = ops.straighten(t, check=True)
        except InternalCheckError as exc:
            assertion.append({**entry, "stage": "check", "message": str(exc)})
            continue
        if p2 != flat_p or j2 != flat_j:
            roundtrip.append(
                {**entry, "stage": "roundtrip",
                 "message": "unstraighten then straighten changed the pair"}
            )
    return VerificationReport(
        shape=alpha.parts,
        mode=mode,
        count_formula=cf,
        count_recursive=cr,
        count_bruteforce=None,
        x_size=None,
        y_size=None,
        x_checked=sample_size,
        y_checked=sample_size,
        roundtrip_failures=roundtrip,
        assertion_failures=assertion,
        seed=seed,
        sample_size=sample_size,
        jobs=1,
        backend=backend_name,
        elapsed_s=time.perf_counter() - t0,
    )
