# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the exact behaviour of ``_pure`` on C arrays.

Positions are 0-based flat row-major indices; hooks are contiguous flat runs,
so the v-th hook cell of position p is p + v - 1.  Kept in lockstep with the
pure module; the parity tests compare the two exhaustively.
"""

from libc.stdlib cimport free, malloc

from ..errors import InternalCheckError

BACKEND = "compiled"


cdef long long LL_MAX = 0x7FFFFFFFFFFFFFFF


cdef class ShapeOps:
    """Precomputed flat geometry for one composition plus the hot operations."""

    cdef readonly tuple parts
    cdef readonly int size
    cdef readonly object hook_prod
    cdef readonly object n_factorial
    cdef int k
    cdef int npairs
    cdef bint prod_fits
    cdef long long prod_ll
    cdef int* row_start
    cdef int* rowof
    cdef int* colof
    cdef int* right
    cdef int* below
    cdef int* order
    cdef int* rank
    cdef int* hooklen
    cdef int* pa
    cdef int* pb

    def __cinit__(self, parts):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"bad composition parts: {parts!r}")
        self.parts = parts
        self.k = len(parts)
        cdef int n = 0
        for p in parts:
            n += p
        self.size = n
        self.row_start = <int*> malloc((self.k + 1) * sizeof(int))
        self.rowof = <int*> malloc(n * sizeof(int))
        self.colof = <int*> malloc(n * sizeof(int))
        self.right = <int*> malloc(n * sizeof(int))
        self.below = <int*> malloc(n * sizeof(int))
        self.order = <int*> malloc(n * sizeof(int))
        self.rank = <int*> malloc(n * sizeof(int))
        self.hooklen = <int*> malloc(n * sizeof(int))
        self.pa = <int*> malloc(2 * n * sizeof(int))
        self.pb = <int*> malloc(2 * n * sizeof(int))
        if (self.row_start == NULL or self.rowof == NULL or self.colof == NULL
                or self.right == NULL or self.below == NULL or self.order == NULL
                or self.rank == NULL or self.hooklen == NULL
                or self.pa == NULL or self.pb == NULL):
            raise MemoryError()
        cdef int r, c, pos
        self.row_start[0] = 0
        for r in range(self.k):
            self.row_start[r + 1] = self.row_start[r] + parts[r]
        keyed = []
        pos = 0
        for r in range(self.k):
            for c in range(parts[r]):
                self.rowof[pos] = r
                self.colof[pos] = c
                self.right[pos] = pos + 1 if c + 1 < parts[r] else -1
                self.below[pos] = self.row_start[r + 1] if (c == 0 and r + 1 < self.k) else -1
                self.hooklen[pos] = (n - pos) if c == 0 else (self.row_start[r + 1] - pos)
                keyed.append((-c, -r, pos))
                pos += 1
        keyed.sort()
        for r in range(n):
            self.order[r] = keyed[r][2]
            self.rank[keyed[r][2]] = r
        prod = 1
        for pos in range(n):
            prod *= self.hooklen[pos]
        self.hook_prod = prod
        fact = 1
        for pos in range(2, n + 1):
            fact *= pos
        self.n_factorial = fact
        self.prod_fits = prod <= LL_MAX
        self.prod_ll = prod if self.prod_fits else 0
        self.npairs = 0
        for pos in range(n):
            if self.right[pos] >= 0:
                self.pa[self.npairs] = pos
                self.pb[self.npairs] = self.right[pos]
                self.npairs += 1
            if self.below[pos] >= 0:
                self.pa[self.npairs] = pos
                self.pb[self.npairs] = self.below[pos]
                self.npairs += 1

    def __dealloc__(self):
        free(self.row_start)
        free(self.rowof)
        free(self.colof)
        free(self.right)
        free(self.below)
        free(self.order)
        free(self.rank)
        free(self.hooklen)
        free(self.pa)
        free(self.pb)

    # -- internals ------------------------------------------------------

    cdef bint _is_standard(self, int* t) noexcept:
        cdef int m
        for m in range(self.npairs):
            if t[self.pa[m]] > t[self.pb[m]]:
                return False
        return True

    cdef bint _prefix_standard(self, int* t, int count) noexcept:
        cdef int m, pos, e, r, b
        for m in range(count):
            pos = self.order[m]
            e = t[pos]
            r = self.right[pos]
            if r >= 0 and self.rank[r] < count and e > t[r]:
                return False
            if self.colof[pos] == 0:
                b = self.below[pos]
                if b >= 0 and self.rank[b] < count and e >= t[b]:
                    return False
        return True

    cdef int _slide(self, int* t, int pos, int* path) except -1:
        cdef int plen = 1
        cdef int e, r, b
        path[0] = pos
        while True:
            e = t[pos]
            r = self.right[pos]
            if self.colof[pos] > 0:
                if r < 0 or e <= t[r]:
                    break
                t[pos] = t[r]
                t[r] = e
                pos = r
            else:
                b = self.below[pos]
                if (r < 0 or e <= t[r]) and (b < 0 or e < t[b]):
                    break
                if r >= 0 and b >= 0 and t[r] == t[b]:
                    raise InternalCheckError(f"tied neighbours while sliding at position {pos}")
                if b < 0 or (r >= 0 and t[r] < t[b]):
                    t[pos] = t[r]
                    t[r] = e
                    pos = r
                else:
                    t[pos] = t[b]
                    t[b] = e
                    pos = b
            path[plen] = pos
            plen += 1
        return plen

    cdef int _build_path(self, int start, int v, int* path) noexcept:
        cdef int target = start + v - 1
        cdef int plen = 0
        cdef int r, q
        if self.rowof[target] == self.rowof[start]:
            for q in range(start, target + 1):
                path[plen] = q
                plen += 1
            return plen
        for r in range(self.rowof[start], self.rowof[target] + 1):
            path[plen] = self.row_start[r]
            plen += 1
        for q in range(self.row_start[self.rowof[target]] + 1, target + 1):
            path[plen] = q
            plen += 1
        return plen

    cdef int _hook_index(self, int start, int end) noexcept:
        cdef int rs = self.rowof[start]
        cdef int re = self.rowof[end]
        if rs == re:
            return self.colof[end] - self.colof[start] + 1
        return self.row_start[re] - self.row_start[rs] + self.colof[end] + 1

    cdef void _rot_right(self, int* t, int* path, int plen) noexcept:
        cdef int last = t[path[plen - 1]]
        cdef int m
        for m in range(plen - 1, 0, -1):
            t[path[m]] = t[path[m - 1]]
        t[path[0]] = last

    cdef void _rot_left(self, int* t, int* path, int plen) noexcept:
        cdef int first = t[path[0]]
        cdef int m
        for m in range(plen - 1):
            t[path[m]] = t[path[m + 1]]
        t[path[plen - 1]] = first

    cdef int _straighten_c(self, int* t, int* s, bint check, int* path, int* scratch) except -1:
        # scratch must hold 2n ints when check is set: a pre-slide copy of t
        # and a rotate buffer
        cdef int n = self.size
        cdef int kk, pos, plen, v, m
        cdef int* before = scratch
        cdef int* rotated = scratch + n
        for kk in range(1, n):
            pos = self.order[kk]
            if check:
                for m in range(n):
                    before[m] = t[m]
            plen = self._slide(t, pos, path)
            v = path[plen - 1] - path[0] + 1
            s[pos] = v
            if check:
                if self._hook_index(path[0], path[plen - 1]) != v:
                    raise InternalCheckError("hook index closed form disagrees with flat run")
                if not self._path_matches_hook(pos, v, path, plen):
                    raise InternalCheckError("slide path is not the hook path of its endpoints")
                for m in range(n):
                    rotated[m] = before[m]
                self._rot_left(rotated, path, plen)
                for m in range(n):
                    if rotated[m] != t[m]:
                        raise InternalCheckError("slide result is not the circular left shift")
                if not self._prefix_standard(t, kk + 1):
                    raise InternalCheckError(f"prefix standardness lost after step {kk}")
        return 0

    cdef bint _path_matches_hook(self, int start, int v, int* path, int plen) noexcept:
        # compare against the regenerated hook path without allocating
        cdef int target = start + v - 1
        cdef int m
        if path[0] != start or path[plen - 1] != target:
            return False
        if self.rowof[target] == self.rowof[start]:
            if plen != v:
                return False
            for m in range(plen):
                if path[m] != start + m:
                    return False
            return True
        cdef int down = self.rowof[target] - self.rowof[start] + 1
        cdef int across = target - self.row_start[self.rowof[target]]
        if plen != down + across:
            return False
        for m in range(down):
            if path[m] != self.row_start[self.rowof[start] + m]:
                return False
        for m in range(across):
            if path[down + m] != self.row_start[self.rowof[target]] + 1 + m:
                return False
        return True

    cdef int _unstraighten_c(self, int* t, int* j, bint check, int* path) except -1:
        cdef int n = self.size
        cdef int kk, pos, v, plen
        for kk in range(1, n):
            pos = self.order[n - kk]
            if check and not self._prefix_standard(t, n + 1 - kk):
                raise InternalCheckError(f"prefix standardness lost before step {kk}")
            v = j[pos]
            j[pos] = 1
            if v > 1:
                plen = self._build_path(pos, v, path)
                self._rot_right(t, path, plen)
        if check:
            for kk in range(n):
                if j[kk] != 1:
                    raise InternalCheckError("hook values not exhausted")
        return 0

    cdef bint _next_perm(self, int* a) noexcept:
        cdef int n = self.size
        cdef int i = n - 2
        cdef int jj, tmp, lo, hi
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return False
        jj = n - 1
        while a[jj] <= a[i]:
            jj -= 1
        tmp = a[i]; a[i] = a[jj]; a[jj] = tmp
        lo = i + 1; hi = n - 1
        while lo < hi:
            tmp = a[lo]; a[lo] = a[hi]; a[hi] = tmp
            lo += 1; hi -= 1
        return True

    cdef int _perm_unrank(self, long long rank, int* out) except -1:
        # lexicographic unranking via the factorial number system; the
        # factorials fit in long long because scans guard n well below 21
        cdef int n = self.size
        cdef int i, m, idx
        cdef long long f
        cdef long long* fact = <long long*> malloc(n * sizeof(long long))
        cdef int* pool = <int*> malloc(n * sizeof(int))
        if fact == NULL or pool == NULL:
            free(fact); free(pool)
            raise MemoryError()
        fact[0] = 1
        for i in range(1, n):
            fact[i] = fact[i - 1] * i
        for i in range(n):
            pool[i] = i + 1
        for i in range(n):
            f = fact[n - 1 - i]
            idx = <int> (rank // f)
            rank = rank % f
            out[i] = pool[idx]
            for m in range(idx, n - 1 - i):
                pool[m] = pool[m + 1]
        free(fact)
        free(pool)
        return 0

    # -- public API (mirrors _pure) ---------------------------------------

    def is_standard_immaculate(self, entries):
        """Stability of a flat filling whose entries are a permutation of 1..n."""
        cdef int n = self.size
        if len(entries) != n:
            raise ValueError(f"need {n} entries, got {len(entries)}")
        cdef int* t = <int*> malloc(n * sizeof(int))
        if t == NULL:
            raise MemoryError()
        cdef int i
        try:
            for i in range(n):
                t[i] = entries[i]
            return bool(self._is_standard(t))
        finally:
            free(t)

    def straighten(self, entries, check=False):
        """Flat filling -> (flat standard immaculate filling, flat hook values)."""
        cdef int n = self.size
        if len(entries) != n:
            raise ValueError(f"need {n} entries, got {len(entries)}")
        cdef int* buf = <int*> malloc(5 * n * sizeof(int))
        if buf == NULL:
            raise MemoryError()
        cdef int* t = buf
        cdef int* s = buf + n
        cdef int* path = buf + 2 * n
        cdef int* scratch = buf + 3 * n
        cdef int i
        cdef bint chk = bool(check)
        try:
            for i in range(n):
                t[i] = entries[i]
            for i in range(n):
                s[i] = 1
            self._straighten_c(t, s, chk, path, scratch)
            if chk and not self._is_standard(t):
                raise InternalCheckError("straighten result is not standard immaculate")
            return [t[i] for i in range(n)], [s[i] for i in range(n)]
        finally:
            free(buf)

    def unstraighten(self, p_entries, hook_values, check=False):
        """(flat standard immaculate filling, flat hook values) -> flat filling."""
        cdef int n = self.size
        if len(p_entries) != n or len(hook_values) != n:
            raise ValueError(f"need {n} entries and {n} hook values")
        cdef int* buf = <int*> malloc(3 * n * sizeof(int))
        if buf == NULL:
            raise MemoryError()
        cdef int* t = buf
        cdef int* j = buf + n
        cdef int* path = buf + 2 * n
        cdef int i
        try:
            for i in range(n):
                t[i] = p_entries[i]
                j[i] = hook_values[i]
            self._unstraighten_c(t, j, bool(check), path)
            return [t[i] for i in range(n)]
        finally:
            free(buf)

    def count_standard(self):
        """Brute-force count of standard immaculate fillings over all n! fillings."""
        cdef int n = self.size
        cdef int* a = <int*> malloc(n * sizeof(int))
        if a == NULL:
            raise MemoryError()
        cdef long long count = 0
        cdef int i
        try:
            for i in range(n):
                a[i] = i + 1
            while True:
                if self._is_standard(a):
                    count += 1
                if not self._next_perm(a):
                    break
            return int(count)
        finally:
            free(a)

    def scan_fillings(self, start, stop, check=True):
        """Roundtrip-check fillings with lexicographic ranks in [start, stop).

        Returns (standard_count, failures); failures holds (rank, stage,
        message) tuples, and standard_count tallies the standard immaculate
        fillings seen.
        """
        cdef int n = self.size
        if not 0 <= start <= stop <= self.n_factorial:
            raise ValueError(f"bad scan range [{start}, {stop}) for {n}! fillings")
        cdef long long lo = start
        cdef long long hi = stop
        cdef int* buf = <int*> malloc(6 * n * sizeof(int))
        if buf == NULL:
            raise MemoryError()
        cdef int* perm = buf
        cdef int* t = buf + n
        cdef int* s = buf + 2 * n
        cdef int* path = buf + 3 * n
        cdef int* scratch = buf + 4 * n
        cdef long long standard = 0
        cdef long long rank = lo
        cdef bint chk = bool(check)
        cdef int i
        cdef bint bad
        failures = []
        try:
            if lo < hi:
                self._perm_unrank(lo, perm)
            while rank < hi:
                if self._is_standard(perm):
                    standard += 1
                for i in range(n):
                    t[i] = perm[i]
                    s[i] = 1
                try:
                    self._straighten_c(t, s, chk, path, scratch)
                    self._unstraighten_c(t, s, chk, path)
                except InternalCheckError as exc:
                    failures.append((int(rank), "check", str(exc)))
                else:
                    bad = False
                    for i in range(n):
                        if t[i] != perm[i]:
                            bad = True
                            break
                    if bad:
                        failures.append(
                            (int(rank), "roundtrip", "straighten then unstraighten changed the filling")
                        )
                rank += 1
                if rank < hi:
                    self._next_perm(perm)
            return int(standard), failures
        finally:
            free(buf)

    def scan_pairs(self, p_table, start, stop, check=True):
        """Roundtrip-check pairs with combined indices in [start, stop).

        Index r encodes row p_table[r // hook_prod] with the (r % hook_prod)-th
        hook-value assignment, last flat cell varying fastest.
        """
        cdef int n = self.size
        if not self.prod_fits:
            raise OverflowError("hook product too large for compiled scan")
        cdef long long H = self.prod_ll
        cdef long long lo = start
        cdef long long hi = stop
        cdef long long nrows = len(p_table)
        if lo < 0 or hi < lo or hi > nrows * H:
            raise ValueError(f"bad scan range [{start}, {stop})")
        cdef int* table = <int*> malloc(max(nrows * n, 1) * sizeof(int))
        cdef int* buf = <int*> malloc(7 * n * sizeof(int))
        if table == NULL or buf == NULL:
            free(table); free(buf)
            raise MemoryError()
        cdef int* j = buf
        cdef int* t = buf + n
        cdef int* jj = buf + 2 * n
        cdef int* s = buf + 3 * n
        cdef int* path = buf + 4 * n
        cdef int* scratch = buf + 5 * n
        cdef long long r, p_idx, rem
        cdef int i, pos
        cdef bint chk = bool(check)
        cdef bint bad
        failures = []
        try:
            for r in range(nrows):
                row = p_table[r]
                for i in range(n):
                    table[r * n + i] = row[i]
            for r in range(lo, hi):
                p_idx = r // H
                rem = r % H
                for pos in range(n - 1, -1, -1):
                    j[pos] = <int> (rem % self.hooklen[pos]) + 1
                    rem = rem // self.hooklen[pos]
                for i in range(n):
                    t[i] = table[p_idx * n + i]
                    jj[i] = j[i]
                    s[i] = 1
                try:
                    self._unstraighten_c(t, jj, chk, path)
                    self._straighten_c(t, s, chk, path, scratch)
                except InternalCheckError as exc:
                    failures.append((int(r), "check", str(exc)))
                    continue
                bad = False
                for i in range(n):
                    if t[i] != table[p_idx * n + i] or s[i] != j[i]:
                        bad = True
                        break
                if bad:
                    failures.append(
                        (int(r), "roundtrip", "unstraighten then straighten changed the pair")
                    )
            return failures
        finally:
            free(table)
            free(buf)
