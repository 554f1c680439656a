"""Sparse exact linear algebra over an exact field (Scalar or Fraction).

Entries must support +, -, *, /, ==, and truthiness (zero is falsy).  The
matrices here are small-to-medium dense-ish objects used by the module
builders and intertwiner solvers; the large truncated-ideal eliminations in
the presentation engine have their own specialized kernel.
"""

from __future__ import annotations

from fractions import Fraction


class Mat:
    """Sparse matrix as dict-of-rows {i: {j: value}} with an explicit one."""

    __slots__ = ("nr", "nc", "rows", "one")

    def __init__(self, nr, nc, one, rows=None):
        self.nr = nr
        self.nc = nc
        self.one = one
        self.rows = rows if rows is not None else {}

    @classmethod
    def identity(cls, n, one):
        return cls(n, n, one, {i: {i: one} for i in range(n)})

    @classmethod
    def from_dense(cls, data, one):
        nr = len(data)
        nc = len(data[0]) if nr else 0
        rows = {}
        for i, r in enumerate(data):
            row = {j: v for j, v in enumerate(r) if v}
            if row:
                rows[i] = row
        return cls(nr, nc, one, rows)

    @classmethod
    def from_entries(cls, nr, nc, entries, one):
        rows = {}
        for (i, j), v in entries.items():
            if v:
                rows.setdefault(i, {})[j] = v
        return cls(nr, nc, one, rows)

    def get(self, i, j):
        row = self.rows.get(i)
        if row is None:
            return None
        return row.get(j)

    def set(self, i, j, v):
        if v:
            self.rows.setdefault(i, {})[j] = v
        else:
            row = self.rows.get(i)
            if row and j in row:
                del row[j]
                if not row:
                    del self.rows[i]

    def entry(self, i, j, zero):
        v = self.get(i, j)
        return zero if v is None else v

    def to_dense(self, zero):
        out = [[zero] * self.nc for _ in range(self.nr)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def copy(self):
        return Mat(self.nr, self.nc, self.one, {i: dict(r) for i, r in self.rows.items()})

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def is_zero(self):
        return not self.rows

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.nr == other.nr and self.nc == other.nc and self.rows == other.rows

    def __hash__(self):
        return hash((self.nr, self.nc, frozenset((i, frozenset(r.items())) for i, r in self.rows.items())))

    def __neg__(self):
        return Mat(self.nr, self.nc, self.one,
                   {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def __add__(self, other):
        assert self.nr == other.nr and self.nc == other.nc
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            row = rows.setdefault(i, {})
            for j, v in r.items():
                w = row.get(j)
                s = v if w is None else w + v
                if s:
                    row[j] = s
                elif j in row:
                    del row[j]
            if not row:
                del rows[i]
        return Mat(self.nr, self.nc, self.one, rows)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        assert self.nc == other.nr, f"shape mismatch {self.nc} vs {other.nr}"
        rows = {}
        orows = other.rows
        for i, r in self.rows.items():
            acc = {}
            for k, a in r.items():
                br = orows.get(k)
                if br is None:
                    continue
                for j, b in br.items():
                    w = acc.get(j)
                    p = a * b
                    s = p if w is None else w + p
                    if s:
                        acc[j] = s
                    elif j in acc:
                        del acc[j]
            if acc:
                rows[i] = acc
        return Mat(self.nr, other.nc, self.one, rows)

    def scale(self, c):
        if not c:
            return Mat(self.nr, self.nc, self.one)
        return Mat(self.nr, self.nc, self.one,
                   {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def transpose(self):
        rows = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Mat(self.nc, self.nr, self.one, rows)

    def kron(self, other):
        """Tensor (Kronecker) product, row-major index convention."""
        rows = {}
        for i1, r1 in self.rows.items():
            for i2, r2 in other.rows.items():
                row = {}
                for j1, v1 in r1.items():
                    for j2, v2 in r2.items():
                        row[j1 * other.nc + j2] = v1 * v2
                rows[i1 * other.nr + i2] = row
        return Mat(self.nr * other.nr, self.nc * other.nc, self.one, rows)

    def map_entries(self, fn):
        rows = {}
        for i, r in self.rows.items():
            row = {}
            for j, v in r.items():
                w = fn(v)
                if w:
                    row[j] = w
            if row:
                rows[i] = row
        return rows_to_mat(self.nr, self.nc, self.one, rows)

    def col_vector(self, j):
        return [self.get(i, j) for i in range(self.nr)]


def rows_to_mat(nr, nc, one, rows):
    return Mat(nr, nc, one, {i: r for i, r in rows.items() if r})


def _echelonize(rows, ncols):
    """Row-echelon form of sparse rows (list of dicts), in place semantics.

    Returns (echelon, pivots) where echelon is a list of reduced rows and
    pivots the corresponding leading column indices (increasing order not
    guaranteed; pivot map is column -> row index).
    """
    echelon = []   # list of (pivot_col, row_dict) with row normalized to 1 at pivot
    by_col = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            hit = by_col.get(c)
            if hit is None:
                break
            coef = row[c]
            for j, v in echelon[hit][1].items():
                w = row.get(j)
                s = -coef * v if w is None else w - coef * v
                if s:
                    row[j] = s
                elif j in row:
                    del row[j]
        if row:
            c = min(row)
            inv_val = row[c]
            row = {j: v / inv_val for j, v in row.items()}
            by_col[c] = len(echelon)
            echelon.append((c, row))
    return echelon, by_col


def rank(mat):
    ech, _ = _echelonize(list(mat.rows.values()), mat.nc)
    return len(ech)


def kernel_basis(mat, zero=None):
    """Basis of the right kernel, as a list of dense column vectors."""
    one = mat.one
    if zero is None:
        zero = one - one
    ech, by_col = _echelonize(list(mat.rows.values()), mat.nc)
    # back-substitute to reduced echelon, largest pivot column first
    for idx in sorted(range(len(ech)), key=lambda k: -ech[k][0]):
        c, row = ech[idx]
        for j in [j for j in row if j != c and j in by_col]:
            coef = row[j]
            target = ech[by_col[j]][1]
            for k, v in target.items():
                w = row.get(k)
                s = -coef * v if w is None else w - coef * v
                if s:
                    row[k] = s
                elif k in row:
                    del row[k]
    pivot_cols = set(by_col)
    free_cols = [j for j in range(mat.nc) if j not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = [zero] * mat.nc
        vec[f] = one
        for c, row in ech:
            v = row.get(f)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


def solve_square(mat, rhs, zero=None):
    """Solve mat * x = rhs for square nonsingular mat; rhs a dense column."""
    one = mat.one
    if zero is None:
        zero = one - one
    n = mat.nc
    assert mat.nr == n and len(rhs) == n
    rows = []
    for i in range(n):
        row = dict(mat.rows.get(i, {}))
        if rhs[i]:
            row[n] = rhs[i]
        rows.append(row)
    ech, by_col = _echelonize(rows, n + 1)
    if len(ech) < n:
        raise ValueError("singular matrix in solve_square")
    x = [zero] * n
    for idx in sorted(range(len(ech)), key=lambda k: -ech[k][0]):
        c, row = ech[idx]
        if c == n:
            raise ValueError("inconsistent system")
        acc = row.get(n, zero)
        for j, v in row.items():
            if j != c and j != n and x[j]:
                acc = acc - v * x[j]
        x[c] = acc
    return x


def inverse(mat):
    """Inverse of a square nonsingular matrix."""
    n = mat.nc
    assert mat.nr == n
    one = mat.one
    zero = one - one
    cols = []
    for j in range(n):
        rhs = [one if i == j else zero for i in range(n)]
        cols.append(solve_square(mat, rhs, zero))
    rows = {}
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            if v:
                rows.setdefault(i, {})[j] = v
    return Mat(n, n, one, rows)


def span_dim(vectors, ncols):
    """Dimension of the span of sparse row vectors (dicts)."""
    ech, _ = _echelonize(vectors, ncols)
    return len(ech)


class SpanTracker:
    """Incremental echelon basis of a growing family of sparse vectors."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.echelon = []
        self.by_col = {}

    @property
    def dim(self):
        return len(self.echelon)

    def reduce(self, vec):
        """Reduce a sparse vector (dict) against the current span."""
        row = dict(vec)
        while row:
            c = min(row)
            hit = self.by_col.get(c)
            if hit is None:
                break
            coef = row[c]
            for j, v in self.echelon[hit][1].items():
                w = row.get(j)
                s = -coef * v if w is None else w - coef * v
                if s:
                    row[j] = s
                elif j in row:
                    del row[j]
        return row

    def add(self, vec):
        """Add a vector; returns True if it enlarged the span."""
        row = self.reduce(vec)
        if not row:
            return False
        c = min(row)
        piv = row[c]
        row = {j: v / piv for j, v in row.items()}
        self.by_col[c] = len(self.echelon)
        self.echelon.append((c, row))
        return True

    def contains(self, vec):
        return not self.reduce(vec)


class Expresser:
    """Echelon basis that can rewrite new vectors as combinations of added ones."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.echelon = []         # list of (pivot_col, row, comb_in_original_tags)
        self.by_col = {}

    def _reduce(self, vec):
        row = dict(vec)
        comb = {}
        while row:
            c = min(row)
            hit = self.by_col.get(c)
            if hit is None:
                break
            coef = row[c]
            _, pivrow, pivcomb = self.echelon[hit]
            for j, v in pivrow.items():
                w = row.get(j)
                s = -coef * v if w is None else w - coef * v
                if s:
                    row[j] = s
                elif j in row:
                    del row[j]
            for t, v in pivcomb.items():
                w = comb.get(t)
                s = coef * v if w is None else w + coef * v
                if s:
                    comb[t] = s
                elif t in comb:
                    del comb[t]
        return row, comb

    def add(self, vec, tag):
        """Add a tagged vector; False if it was already in the span."""
        row, comb = self._reduce(vec)
        if not row:
            return False
        c = min(row)
        piv = row[c]
        inv = piv.inv() if hasattr(piv, "inv") else 1 / piv
        row = {j: v * inv for j, v in row.items()}
        # vec = sum(comb * originals) + piv * row  =>  row in original tags:
        stored = {t: -v * inv for t, v in comb.items()}
        w = stored.get(tag)
        stored[tag] = inv if w is None else w + inv
        self.by_col[c] = len(self.echelon)
        self.echelon.append((c, row, stored))
        return True

    @property
    def dim(self):
        return len(self.echelon)

    def express(self, vec):
        """Coefficients {tag: c} with vec = sum c * tagged vectors, or None."""
        row, comb = self._reduce(vec)
        if row:
            return None
        return comb


# ---------------------------------------------------------------------------
# Modular arithmetic kernel (rank probes over GF(p) for consistency checks).

def row_mod_p(row, p):
    """Reduce a sparse row of Fractions (or ints) mod p; None if a denominator vanishes."""
    out = {}
    for j, v in row.items():
        if isinstance(v, Fraction):
            d = v.denominator % p
            if d == 0:
                return None
            x = v.numerator % p * pow(d, p - 2, p) % p
        else:
            x = v % p
        if x:
            out[j] = x
    return out


def echelon_mod_p(rows, p):
    """GF(p) row echelon; returns (pivot_cols_sorted, kept_row_indices)."""
    echelon = {}
    kept = []
    for idx, row in enumerate(rows):
        row = dict(row)
        while row:
            c = min(row)
            hit = echelon.get(c)
            if hit is None:
                break
            coef = row[c]
            for j, v in hit.items():
                w = row.get(j, 0)
                s = (w - coef * v) % p
                if s:
                    row[j] = s
                elif j in row:
                    del row[j]
        if row:
            c = min(row)
            inv_val = pow(row[c], p - 2, p)
            echelon[c] = {j: v * inv_val % p for j, v in row.items()}
            kept.append(idx)
    return sorted(echelon), kept
