"""Exact linear algebra: sparse fraction-free elimination and kernels.

Matrices over the rationals are handled as sparse rows (dict column ->
coefficient).  Elimination is fraction-free: rows are scaled to integer
content-free form and combined by cross-multiplication, so every
intermediate value is exact.  Rank is cross-checked by an independent
rational Gauss pass.  Small dense matrices over polynomial or
rational-function entries go through Bareiss.
"""

from __future__ import annotations

from .rings import QQ0, QQ1, Poly, RatFunc, qq

try:
    from gmpy2 import gcd as _int_gcd, mpz as _mpz
except ImportError:  # pragma: no cover
    from math import gcd as _int_gcd
    _mpz = int


def _row_normalize(row):
    """Scale a sparse QQ-row to coprime integers with positive lead."""
    if not row:
        return {}
    den = 1
    for c in row.values():
        den = den * c.denominator // _int_gcd(den, c.denominator)
    g = 0
    ints = {}
    for j, c in row.items():
        if not c:
            continue
        v = c.numerator * (den // c.denominator)
        ints[j] = v
        g = _int_gcd(g, v)
    if g > 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


class Echelon:
    """Incremental sparse row echelon over the rationals (fraction-free).

    Rows are inserted one by one; each is reduced against current pivots by
    integer cross-multiplication.  Pivot columns are chosen as the smallest
    column index of the reduced row, which keeps the process deterministic.
    """

    def __init__(self):
        self.pivots = {}  # col -> integer row (dict col->int)
        self.order = []   # insertion order of pivot columns

    def reduce(self, row):
        row = _row_normalize(row)
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row, c
            a = row[c]
            b = piv[c]
            g = _int_gcd(a, b)
            ma = b // g
            mb = a // g
            new = {}
            for j, v in row.items():
                new[j] = v * ma
            for j, v in piv.items():
                w = new.get(j, 0) - v * mb
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            gg = 0
            for v in new.values():
                gg = _int_gcd(gg, v)
            if gg > 1:
                new = {j: v // gg for j, v in new.items()}
            row = new
        return row, None

    def insert(self, row):
        """Reduce and insert; returns True if the row increased the rank."""
        red, col = self.reduce(row)
        if col is None:
            return False
        self.pivots[col] = red
        self.order.append(col)
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def back_substitute(self):
        """Bring the echelon to reduced form (pivot columns isolated)."""
        cols = sorted(self.pivots)
        for idx in range(len(cols) - 1, -1, -1):
            c = cols[idx]
            row = self.pivots[c]
            for c2 in cols[idx + 1:]:
                a = row.get(c2)
                if not a:
                    continue
                piv = self.pivots[c2]
                b = piv[c2]
                g = _int_gcd(a, b)
                ma = b // g
                mb = a // g
                new = {j: v * ma for j, v in row.items()}
                for j, v in piv.items():
                    w = new.get(j, 0) - v * mb
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                g2 = 0
                for v in new.values():
                    g2 = _int_gcd(g2, v)
                if g2 > 1:
                    new = {j: v // g2 for j, v in new.items()}
                row = new
            self.pivots[c] = row


def rank_qq(rows, ncols=None):
    """Independent straightforward rational Gauss rank pass."""
    work = [dict(r) for r in rows if r]
    rank = 0
    used = set()
    while True:
        pivot_row = None
        for r in work:
            if r:
                pivot_row = r
                break
        if pivot_row is None:
            return rank
        c = min(k for k in pivot_row if k not in used) if any(
            k not in used for k in pivot_row) else None
        if c is None:
            return rank
        used.add(c)
        rank += 1
        pc = pivot_row[c]
        work.remove(pivot_row)
        norm = {j: qq(v) / pc for j, v in pivot_row.items()}
        for r in work:
            a = r.get(c)
            if a:
                for j, v in norm.items():
                    w = r.get(j, QQ0) - a * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
    return rank


def nullspace(rows, ncols):
    """Exact kernel basis of the sparse rational matrix (list of dicts).

    Elimination is fraction-free; the resulting dimension is asserted
    against an independent rational rank pass.
    """
    ech = Echelon()
    for r in rows:
        ech.insert(r)
    ech.back_substitute()
    rank = ech.rank
    assert rank == rank_qq(rows, ncols), "rank disagreement between passes"
    pivot_cols = set(ech.pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = {f: QQ1}
        for c, row in ech.pivots.items():
            a = row.get(f)
            if a:
                vec[c] = -qq(a) / row[c]
        basis.append(vec)
    return basis


def solve_unique(rows, rhs, ncols):
    """Solve A x = b requiring a unique solution; returns list of QQ.

    rows: sparse rows of A; rhs: list of QQ aligned with rows.  Raises if
    the system is inconsistent or underdetermined.
    """
    ech = Echelon()
    b_col = ncols
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[b_col] = b
        ech.insert(row)
    ech.back_substitute()
    if b_col in ech.pivots:
        raise ValueError("inconsistent linear system")
    if ech.rank != ncols:
        raise ValueError("linear system is underdetermined (rank %d of %d)"
                         % (ech.rank, ncols))
    x = [QQ0] * ncols
    for c, row in ech.pivots.items():
        # row encodes sum_j row[j] x_j + row[b] * (-1) = 0 after reduction
        x[c] = qq(row.get(b_col, 0)) / row[c]
    return x


# ---------------------------------------------------------------------------
# dense fraction-free elimination over polynomial / rational-function entries
# ---------------------------------------------------------------------------


def _clear_row_denominators(row):
    out = []
    den = None
    for e in row:
        if isinstance(e, RatFunc):
            den = e.den if den is None else den * e.den
    for e in row:
        if isinstance(e, RatFunc):
            v = e.num * (den.divexact(e.den) if den is not None else 1)
            out.append(v)
        else:
            out.append(e * den if den is not None else e)
    return out


def rank_polymat(matrix):
    """Rank of a dense matrix with Poly or RatFunc entries (Bareiss).

    Equals the rank over the fraction field, i.e. the rank at a generic
    point of the chart.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    rows = [_clear_row_denominators(r) for r in rows]
    table = None
    for r in rows:
        for e in r:
            if isinstance(e, Poly):
                table = e.table
                break
        if table is not None:
            break
    if table is None:
        raise ValueError("empty symbolic matrix")
    rows = [[e if isinstance(e, Poly) else table.const(e) for e in r]
            for r in rows]
    m, n = len(rows), len(rows[0])
    rank = 0
    prev = table.one()
    row = 0
    for col in range(n):
        piv = None
        best = None
        for r in range(row, m):
            e = rows[r][col]
            if not e.is_zero:
                size = len(e.terms)
                if best is None or size < best:
                    best = size
                    piv = r
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        p = rows[row][col]
        for r in range(row + 1, m):
            a = rows[r][col]
            for c in range(col + 1, n):
                num = rows[r][c] * p - a * rows[row][c]
                rows[r][c] = num.divexact(prev)
            rows[r][col] = table.zero()
        prev = p
        rank += 1
        row += 1
        if row == m:
            break
    return rank


def rank_polymat_certified(matrix, seed=11):
    """Generic rank with a specialization shortcut.

    Evaluating the entries at rational points bounds the rank from below;
    when the bound meets min(rows, cols) the generic rank is certified
    without symbolic elimination.  Otherwise falls back to Bareiss.
    """
    import random
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    bound = min(nrows, ncols)
    rng = random.Random(seed)
    table = None
    for r in rows:
        for e in r:
            if isinstance(e, Poly):
                table = e.table
                break
            if isinstance(e, RatFunc):
                table = e.num.table
                break
        if table is not None:
            break
    if table is None:
        return rank_qq([{j: qq(e) for j, e in enumerate(r) if e}
                        for r in rows], ncols)
    names = set()
    for r in rows:
        for e in r:
            if isinstance(e, Poly):
                names |= {table.names[i] for i in e.variables()}
            elif isinstance(e, RatFunc):
                names |= {table.names[i] for i in e.num.variables()}
                names |= {table.names[i] for i in e.den.variables()}
    for _ in range(3):
        point = {nm: qq(rng.randint(1, 97), rng.randint(1, 13))
                 for nm in names}
        try:
            qrows = []
            for r in rows:
                row = {}
                for j, e in enumerate(r):
                    if isinstance(e, RatFunc):
                        v = e.num.eval_scalar(point) / e.den.eval_scalar(point)
                    elif isinstance(e, Poly):
                        v = e.eval_scalar(point)
                    else:
                        v = qq(e)
                    if v:
                        row[j] = v
                qrows.append(row)
        except ZeroDivisionError:
            continue
        if rank_qq(qrows, ncols) == bound:
            return bound
    return rank_polymat(matrix)


def solve_field(matrix, rhs):
    """Solve (matrix) x = rhs over the rational-function field.

    matrix: dense list of rows of Poly/RatFunc; rhs: list of Poly/RatFunc.
    Returns the unique solution as RatFunc list, or raises when the system
    is singular/inconsistent.  Pivots prefer syntactically small entries.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    aug = []
    for i in range(m):
        row = [RatFunc.wrap(e) if isinstance(e, Poly) else e for e in matrix[i]]
        b = rhs[i]
        row.append(RatFunc.wrap(b) if isinstance(b, Poly) else b)
        aug.append(row)
    piv_of_col = {}
    row_used = [False] * m
    for col in range(n):
        piv = None
        best = None
        for r in range(m):
            if row_used[r]:
                continue
            e = aug[r][col]
            if not e.is_zero:
                size = len(e.num.terms) + len(e.den.terms)
                if best is None or size < best:
                    best = size
                    piv = r
        if piv is None:
            continue
        row_used[piv] = True
        piv_of_col[col] = piv
        inv = aug[piv][col]
        prow = [e / inv for e in aug[piv]]
        aug[piv] = prow
        for r in range(m):
            if r == piv:
                continue
            a = aug[r][col]
            if not a.is_zero:
                aug[r] = [aug[r][c] - a * prow[c] for c in range(n + 1)]
    for r in range(m):
        if not row_used[r] and not aug[r][n].is_zero:
            raise ValueError("inconsistent linear system over the field")
    if len(piv_of_col) != n:
        raise ValueError("singular system: rank %d of %d" % (len(piv_of_col), n))
    return [aug[piv_of_col[c]][n] for c in range(n)]


def invert_matrix(matrix):
    """Inverse of a square matrix over the rational-function field."""
    n = len(matrix)
    cols = []
    for k in range(n):
        rhs = [matrix[0][0].table.one() if i == k else matrix[0][0].table.zero()
               for i in range(n)]
        rhs = [RatFunc.wrap(r) for r in rhs]
        cols.append(solve_field(matrix, rhs))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = None
            for l in range(k):
                t = A[i][l] * B[l][j]
                s = t if s is None else s + t
            row.append(s)
        out.append(row)
    return out
