"""Exact integer row-reduction kernels.

All routines work on integer matrices given as sequences of rows and are
exact.  The fast path runs vectorized on int64 numpy arrays with
conservative overflow guards; whenever an operation could leave the safe
range it is redone from scratch on arbitrary-precision Python integers.
Results are always returned as plain lists of Python ints.
"""

from __future__ import annotations

import numpy as np

# Keep |entries| strictly below this between row operations.  2**61 leaves
# one bit of headroom under int64 for the guarded updates.
_LIMIT = 1 << 61


class _Overflow(Exception):
    """An int64 row operation could exceed the safe bound."""


def _as_i64(rows, ncols):
    """Return an (m, ncols) int64 array for `rows`, or None if too large."""
    m = len(rows)
    if m == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    try:
        arr = np.array([list(r) for r in rows], dtype=np.int64)
    except OverflowError:
        return None
    if arr.shape != (m, ncols):
        raise ValueError("ragged matrix: expected %d columns" % ncols)
    if arr.size and int(np.abs(arr).max()) >= _LIMIT >> 2:
        return None
    return arr


def _guard(block_max, q_max, row_max):
    if block_max + q_max * row_max >= _LIMIT:
        raise _Overflow


def _absmax(a):
    return int(np.abs(a).max(initial=0))


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def _hnf_np(a):
    """Row HNF of int64 array `a`; returns (H, U) with U @ a == H."""
    m, n = a.shape
    aug = np.hstack([a, np.eye(m, dtype=np.int64)])
    r = 0
    for j in range(n):
        if r == m:
            break
        col = aug[r:, j]
        while True:
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                break
            k = int(nz[np.argmin(np.abs(col[nz]))])
            if k:
                aug[[r, r + k]] = aug[[r + k, r]]
            if aug[r, j] < 0:
                np.negative(aug[r], out=aug[r])
            piv = int(aug[r, j])
            below = aug[r + 1:, j]
            if not below.any():
                break
            q = below // piv
            _guard(_absmax(aug[r + 1:]), _absmax(q), _absmax(aug[r]))
            aug[r + 1:] -= q[:, None] * aug[r]
        if r < m and aug[r, j]:
            piv = int(aug[r, j])
            if r:
                q = aug[:r, j] // piv
                if q.any():
                    _guard(_absmax(aug[:r]), _absmax(q), _absmax(aug[r]))
                    aug[:r] -= q[:, None] * aug[r]
            r += 1
    return aug[:, :n], aug[:, n:]


def _hnf_py(rows, ncols):
    """Pure-Python mirror of _hnf_np for arbitrary precision."""
    m = len(rows)
    aug = [list(map(int, row)) + [0] * i + [1] + [0] * (m - i - 1)
           for i, row in enumerate(rows)]
    r = 0
    for j in range(ncols):
        if r == m:
            break
        while True:
            best = -1
            bestv = 0
            for i in range(r, m):
                v = aug[i][j]
                if v and (best < 0 or abs(v) < abs(bestv)):
                    best, bestv = i, v
            if best < 0:
                break
            if best != r:
                aug[r], aug[best] = aug[best], aug[r]
            if aug[r][j] < 0:
                aug[r] = [-x for x in aug[r]]
            piv = aug[r][j]
            rowr = aug[r]
            clean = True
            for i in range(r + 1, m):
                v = aug[i][j]
                if v:
                    q = v // piv
                    if q:
                        aug[i] = [x - q * y for x, y in zip(aug[i], rowr)]
                    if aug[i][j]:
                        clean = False
            if clean:
                break
        if r < m and aug[r][j]:
            piv = aug[r][j]
            rowr = aug[r]
            for i in range(r):
                q = aug[i][j] // piv
                if q:
                    aug[i] = [x - q * y for x, y in zip(aug[i], rowr)]
            r += 1
    return [row[:ncols] for row in aug], [row[ncols:] for row in aug]


def hnf_rows(rows, ncols):
    """Row Hermite normal form with transform.

    Returns (H, U) as lists of rows of Python ints, with U * rows == H,
    U unimodular, H in row HNF (positive pivots with strictly increasing
    pivot columns, entries above each pivot reduced into [0, pivot),
    zero rows at the bottom).
    """
    arr = _as_i64(rows, ncols)
    if arr is not None:
        try:
            h, u = _hnf_np(arr.copy())
            return h.tolist(), u.tolist()
        except _Overflow:
            pass
    return _hnf_py(rows, ncols)


def pivot_columns(h_rows):
    """Pivot column of each nonzero row of a row-HNF matrix."""
    pivots = []
    for row in h_rows:
        for j, v in enumerate(row):
            if v:
                pivots.append(j)
                break
    return pivots


def kernel_rows(rows, ncols):
    """Basis of the left kernel {x : x * rows == 0}, one basis vector per row.

    The result is automatically a basis of the full (saturated) kernel
    lattice because it consists of rows of a unimodular transform.
    """
    h, u = hnf_rows(rows, ncols)
    return [u[i] for i, row in enumerate(h) if not any(row)]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _snf_np(a, want):
    m, n = a.shape
    u = np.eye(m, dtype=np.int64) if want else None
    v = np.eye(n, dtype=np.int64) if want else None

    def rowop(q, src):
        # rows -= q * row src, applied to every row with q != 0
        rows = np.nonzero(q)[0]
        if rows.size == 0:
            return
        _guard(_absmax(a[rows]), _absmax(q), _absmax(a[src]))
        a[rows] -= q[rows, None] * a[src]
        if want:
            _guard(_absmax(u[rows]), _absmax(q), _absmax(u[src]))
            u[rows] -= q[rows, None] * u[src]

    def colop(q, src):
        cols = np.nonzero(q)[0]
        if cols.size == 0:
            return
        _guard(_absmax(a[:, cols]), _absmax(q), _absmax(a[:, src]))
        a[:, cols] -= np.outer(a[:, src], q[cols])
        if want:
            _guard(_absmax(v[:, cols]), _absmax(q), _absmax(v[:, src]))
            v[:, cols] -= np.outer(v[:, src], q[cols])

    def eliminate(t, row_limit=None, col_limit=None):
        # clear row t and column t outside (t, t), keeping the pivot minimal;
        # the optional limits restrict the pivot search window (used by the
        # divisibility repair, where everything outside a 2x2 block is zero)
        while True:
            sub = a[t:row_limit, t:col_limit]
            nz = np.nonzero(sub)
            if nz[0].size == 0:
                return False
            vals = np.abs(sub[nz])
            k = int(np.argmin(vals))
            i, j = int(nz[0][k]) + t, int(nz[1][k]) + t
            if i != t:
                a[[t, i]] = a[[i, t]]
                if want:
                    u[[t, i]] = u[[i, t]]
            if j != t:
                a[:, [t, j]] = a[:, [j, t]]
                if want:
                    v[:, [t, j]] = v[:, [j, t]]
            if a[t, t] < 0:
                np.negative(a[t], out=a[t])
                if want:
                    np.negative(u[t], out=u[t])
            piv = int(a[t, t])
            col = a[:, t].copy()
            col[t] = 0
            if col.any():
                q = col // piv
                q[t] = 0
                rowop(q, t)
                continue
            row = a[t, :].copy()
            row[t] = 0
            if row.any():
                q = row // piv
                q[t] = 0
                colop(q, t)
                continue
            return True

    t = 0
    limit = min(m, n)
    while t < limit and eliminate(t):
        t += 1
    k = t

    # enforce the divisibility chain d1 | d2 | ... | dk; each repair stays
    # inside the 2x2 block (everything else in those rows/columns is zero)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            di, dj = int(a[i, i]), int(a[i + 1, i + 1])
            if dj % di:
                _guard(_absmax(a[i]), 1, _absmax(a[i + 1]))
                a[i] += a[i + 1]
                if want:
                    u[i] += u[i + 1]
                eliminate(i, i + 2, i + 2)
                eliminate(i + 1, i + 2, i + 2)
                changed = True
    return a, u, v


def _snf_py(rows, ncols, want):
    m = len(rows)
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)] if want else None
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if want else None

    def eliminate(t, row_limit=None, col_limit=None):
        rl = m if row_limit is None else row_limit
        cl = ncols if col_limit is None else col_limit
        while True:
            besti = bestj = -1
            bestv = 0
            for i in range(t, rl):
                for j in range(t, cl):
                    w = a[i][j]
                    if w and (besti < 0 or abs(w) < abs(bestv)):
                        besti, bestj, bestv = i, j, w
            if besti < 0:
                return False
            if besti != t:
                a[t], a[besti] = a[besti], a[t]
                if want:
                    u[t], u[besti] = u[besti], u[t]
            if bestj != t:
                for row in a:
                    row[t], row[bestj] = row[bestj], row[t]
                if want:
                    for row in v:
                        row[t], row[bestj] = row[bestj], row[t]
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                if want:
                    u[t] = [-x for x in u[t]]
            piv = a[t][t]
            dirty = False
            for i in range(m):
                if i != t and a[i][t]:
                    q = a[i][t] // piv
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                        if want:
                            u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if a[i][t]:
                        dirty = True
            if dirty:
                continue
            for j in range(ncols):
                if j != t and a[t][j]:
                    q = a[t][j] // piv
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        if want:
                            for row in v:
                                row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                return True

    t = 0
    limit = min(m, ncols)
    while t < limit and eliminate(t):
        t += 1
    k = t
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if dj % di:
                a[i] = [x + y for x, y in zip(a[i], a[i + 1])]
                if want:
                    u[i] = [x + y for x, y in zip(u[i], u[i + 1])]
                eliminate(i, i + 2, i + 2)
                eliminate(i + 1, i + 2, i + 2)
                changed = True
    return a, u, v


def snf_rows(rows, ncols, want_transforms=True):
    """Smith normal form.

    Returns (S, U, V) as lists of rows with U * rows * V == S, S diagonal
    with d1 | d2 | ... and U, V unimodular.  With want_transforms=False the
    transforms are skipped and (S, None, None) is returned.
    """
    arr = _as_i64(rows, ncols)
    if arr is not None:
        try:
            s, u, v = _snf_np(arr.copy(), want_transforms)
            return (s.tolist(),
                    u.tolist() if u is not None else None,
                    v.tolist() if v is not None else None)
        except _Overflow:
            pass
    s, u, v = _snf_py(rows, ncols, want_transforms)
    return s, u, v


def snf_diagonal(rows, ncols):
    """Nonzero diagonal of the Smith normal form, as a list."""
    s, _, _ = snf_rows(rows, ncols, want_transforms=False)
    diag = []
    for i in range(min(len(s), ncols)):
        d = s[i][i]
        if d:
            diag.append(abs(int(d)))
    return diag


# ---------------------------------------------------------------------------
# Canonical reduction against a row lattice
# ---------------------------------------------------------------------------

class RowSolver:
    """Canonical reduction of vectors against the row span of a matrix.

    Factors the matrix once (row HNF); `reduce` then writes any vector v as
    (sum of coefficients * original rows) + residue with the residue the
    canonical coset representative (entries at pivot columns lie in
    [0, pivot)).  Membership in the row lattice is residue == 0.
    """

    def __init__(self, rows, ncols):
        self.ncols = ncols
        self.nrows = len(rows)
        h, u = hnf_rows(rows, ncols)
        keep = [i for i, row in enumerate(h) if any(row)]
        self.h = [h[i] for i in keep]
        self.u = [u[i] for i in keep]
        self.pivots = pivot_columns(self.h)
        self.rank = len(keep)
        self._h_arr = _as_i64(self.h, ncols)
        self._u_arr = _as_i64(self.u, self.nrows) if self.nrows else np.zeros((self.rank, 0), dtype=np.int64)
        if self.rank and (self._h_arr is None or self._u_arr is None):
            self._h_arr = None
            self._u_arr = None

    def reduce(self, vec):
        """Return (residue, coeffs): vec == coeffs * rows + residue."""
        res = list(map(int, vec))
        if len(res) != self.ncols:
            raise ValueError("vector length mismatch")
        t = []
        for i, p in enumerate(self.pivots):
            piv = self.h[i][p]
            q = res[p] // piv
            t.append(q)
            if q:
                hrow = self.h[i]
                res = [x - q * y for x, y in zip(res, hrow)]
        coeffs = [0] * self.nrows
        for q, urow in zip(t, self.u):
            if q:
                coeffs = [c + q * w for c, w in zip(coeffs, urow)]
        return res, coeffs

    def contains(self, vec):
        """Coefficients of vec over the original rows, or None."""
        res, coeffs = self.reduce(vec)
        if any(res):
            return None
        return coeffs

    def residue(self, vec):
        """Canonical representative of vec modulo the row lattice."""
        return self.reduce(vec)[0]

    def coeffs_many(self, vecs):
        """Express many vectors at once; raises if any lies outside."""
        if not vecs:
            return []
        arr = _as_i64(vecs, self.ncols)
        if arr is not None and self._h_arr is not None:
            try:
                return self._coeffs_many_np(arr)
            except _Overflow:
                pass
        out = []
        for vec in vecs:
            coeffs = self.contains(vec)
            if coeffs is None:
                raise ValueError("vector outside the row lattice")
            out.append(coeffs)
        return out

    def _coeffs_many_np(self, arr):
        res = arr.copy()
        t = np.zeros((arr.shape[0], self.rank), dtype=np.int64)
        for i, p in enumerate(self.pivots):
            piv = int(self._h_arr[i, p])
            q = res[:, p] // piv
            if q.any():
                _guard(_absmax(res), _absmax(q), _absmax(self._h_arr[i]))
                res -= q[:, None] * self._h_arr[i][None, :]
            t[:, i] = q
        if res.any():
            raise ValueError("vector outside the row lattice")
        _guard(0, _absmax(t), _absmax(self._u_arr) * max(1, self.rank))
        return (t @ self._u_arr).tolist()


def solve_columns(a_rows, ncols, b):
    """One integer solution x of A x = b, or None (A given by rows)."""
    # x solves A x = b  iff  b lies in the row span of A^T with coefficients x.
    if a_rows:
        at = [list(col) for col in zip(*a_rows)]
    else:
        at = [[] for _ in range(ncols)]
    solver = RowSolver(at, len(a_rows))
    return solver.contains(list(b))
