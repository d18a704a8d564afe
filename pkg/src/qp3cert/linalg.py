"""Exact dense/sparse linear algebra over the scalar tower.

All routines are duck-typed over any field scalar supporting +, -, *, /,
unary - and truthiness (zero test): gmpy2.mpq, GaussianRational and
RationalFunction all qualify.  Matrices of RationalFunction constants are
transparently lowered to mpq (all-rational) or GaussianRational entries,
which is what makes the big specialized-mode rank computations affordable.
"""

from __future__ import annotations

from .exactfield import (
    G_ONE,
    G_ZERO,
    GaussianRational,
    RationalFunction,
    RF_ONE,
    RF_ZERO,
    _Q,
)

_Q0 = _Q(0)
_Q1 = _Q(1)


# ---------------------------------------------------------------------------
# generic dense reduced row echelon form
# ---------------------------------------------------------------------------

def rref_core(rows, ncols, zero, one):
    """Reduced row echelon form; returns (rref rows, pivot column list).

    Pivots take the earliest available column (deterministic complement
    bases depend on this).  Input rows are not modified.
    """
    rows = [list(r) for r in rows if any(r)]
    pivots = []
    prows = []
    for row in rows:
        for pc, pr in zip(pivots, prows):
            c = row[pc]
            if c:
                for j in range(ncols):
                    v = pr[j]
                    if v:
                        row[j] = row[j] - c * v
                row[pc] = zero
        lead = None
        for j in range(ncols):
            if row[j]:
                lead = j
                break
        if lead is None:
            continue
        inv = one / row[lead]
        row = [x * inv if x else x for x in row]
        row[lead] = one
        # eliminate the new column from earlier pivot rows
        for pr in prows:
            c = pr[lead]
            if c:
                for j in range(ncols):
                    v = row[j]
                    if v:
                        pr[j] = pr[j] - c * v
                pr[lead] = zero
        k = 0
        while k < len(pivots) and pivots[k] < lead:
            k += 1
        pivots.insert(k, lead)
        prows.insert(k, row)
    return prows, pivots


def _classify(mat):
    """Return ('mpq'|'gauss'|None, lowered matrix) for RationalFunction input."""
    lowered_q = []
    lowered_g = []
    gaussian_ok = True
    rational_ok = True
    for row in mat:
        rq = []
        rg = []
        for x in row:
            if not isinstance(x, RationalFunction) or not x.is_constant():
                return None, None
            g = x.constant_value()
            rg.append(g)
            if rational_ok and g.im:
                rational_ok = False
            rq.append(g.re)
        lowered_g.append(rg)
        lowered_q.append(rq)
    if rational_ok:
        return "mpq", lowered_q
    if gaussian_ok:
        return "gauss", lowered_g
    return None, None


def _lift(kind, rows):
    if kind == "mpq":
        return [[RationalFunction.const(GaussianRational(x)) for x in r] for r in rows]
    return [[RationalFunction.const(x) for x in r] for r in rows]


def rref(mat, ncols=None):
    """RREF of a matrix of RationalFunction entries -> (rows, pivot columns)."""
    if not mat:
        return [], []
    if ncols is None:
        ncols = len(mat[0])
    kind, low = _classify(mat)
    if kind == "mpq":
        rows, piv = rref_core(low, ncols, _Q0, _Q1)
        return _lift(kind, rows), piv
    if kind == "gauss":
        rows, piv = rref_core(low, ncols, G_ZERO, G_ONE)
        return _lift(kind, rows), piv
    return rref_core(mat, ncols, RF_ZERO, RF_ONE)


def rank(mat, ncols=None) -> int:
    return len(rref(mat, ncols)[1])


def nullspace(mat, ncols):
    """Basis of the right kernel of `mat` (list of coordinate vectors).

    Size of the basis is always ncols - rank(mat); an injective map yields [].
    """
    if not mat:
        return [unit_vector(ncols, j) for j in range(ncols)]
    rows, pivots = rref(mat, ncols)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [RF_ZERO] * ncols
        v[f] = RF_ONE
        for pc, row in zip(pivots, rows):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def unit_vector(n, j):
    v = [RF_ZERO] * n
    v[j] = RF_ONE
    return v


def solve(mat, rhs):
    """One exact solution x of mat @ x = rhs, or None if inconsistent."""
    if not mat:
        return None if any(rhs) else []
    ncols = len(mat[0])
    aug = [list(r) + [b] for r, b in zip(mat, rhs)]
    rows, pivots = rref(aug, ncols + 1)
    x = [RF_ZERO] * ncols
    for pc, row in zip(pivots, rows):
        if pc == ncols:
            return None
        x[pc] = row[ncols]
    return x


def mat_mul(a, b):
    if not a or not b:
        return []
    n, m, k = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            s = RF_ZERO
            for t in range(m):
                if a[i][t] and b[t][j]:
                    s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = RF_ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def identity(n):
    return [[RF_ONE if i == j else RF_ZERO for j in range(n)] for i in range(n)]


def inverse(mat):
    """Inverse of a square matrix, or None if singular."""
    n = len(mat)
    aug = [list(r) + list(e) for r, e in zip(mat, identity(n))]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in rows[:n]]


def det(mat) -> RationalFunction:
    """Exact determinant; fraction-free (Bareiss) on polynomial entries."""
    n = len(mat)
    if n == 0:
        return RF_ONE
    if any(len(r) != n for r in mat):
        raise ValueError("determinant of a non-square matrix")
    if n <= 3:
        return _det_small(mat, n)
    return _det_bareiss(mat)


def _det_small(m, n):
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _det_bareiss(mat):
    n = len(mat)
    a = [list(r) for r in mat]
    sign = RF_ONE
    prev = RF_ONE
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return RF_ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
            a[i][k] = RF_ZERO
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# sparse RREF (dict rows), used by the graded-basis machinery
# ---------------------------------------------------------------------------

class SparseRREF:
    """Incremental sparse reduced row echelon form over a duck-typed field.

    Rows are dicts {column: coefficient}.  Pivoting is on the earliest
    column.  After `finalize`, every pivot row is fully reduced: it contains
    its pivot column (coefficient one) and otherwise only non-pivot columns.
    """

    def __init__(self, one):
        self.one = one
        self.pivots = {}      # col -> row dict
        self._final = False

    def add_row(self, row: dict) -> bool:
        """Reduce `row` and absorb it; returns True if it increased the rank."""
        row = dict(row)
        pivots = self.pivots
        while row:
            c = min(row)
            if c not in pivots:
                break
            coef = row.pop(c)
            for cc, vv in pivots[c].items():
                if cc == c:
                    continue
                s = row.get(cc)
                s = -coef * vv if s is None else s - coef * vv
                if s:
                    row[cc] = s
                else:
                    row.pop(cc, None)
        if not row:
            return False
        c = min(row)
        inv = self.one / row[c]
        row = {cc: vv * inv for cc, vv in row.items()}
        row[c] = self.one
        pivots[c] = row
        return True

    def finalize(self):
        """Back-substitute so pivot rows contain no other pivot columns."""
        if self._final:
            return
        for c in sorted(self.pivots, reverse=True):
            prow = self.pivots[c]
            for c2 in sorted(self.pivots):
                if c2 <= c:
                    continue
                coef = prow.get(c2)
                if coef is None:
                    continue
                del prow[c2]
                for cc, vv in self.pivots[c2].items():
                    if cc == c2:
                        continue
                    s = prow.get(cc)
                    s = -coef * vv if s is None else s - coef * vv
                    if s:
                        prow[cc] = s
                    else:
                        prow.pop(cc, None)
        self._final = True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def pivot_columns(self):
        return sorted(self.pivots)

    def expansion(self, col):
        """Expansion of a pivot column in the non-pivot ones: {col: coeff}.

        For a pivot row  e_c + sum a_j e_j  (j non-pivot), the class of e_c
        modulo the row space is  -sum a_j e_j.
        """
        if not self._final:
            self.finalize()
        row = self.pivots[col]
        return {cc: -vv for cc, vv in row.items() if cc != col}
