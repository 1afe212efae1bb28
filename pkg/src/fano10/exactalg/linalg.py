"""Dense exact linear algebra over a field and over polynomial rings.

Scalar routines take a :class:`Field` and rows of raw values. Over GF(p) the
hot loops run on plain ints.
"""
from __future__ import annotations

from typing import Sequence

from .fields import Field, PrimeField
from .poly import ArityError, MultiPoly


# --- scalar matrices --------------------------------------------------------------------

def _rref_prime(rows, p):
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            row = [x * inv % p for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    m[i] = [(a - f * b) % p for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(F: Field, rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (pivots normalized to 1) and pivot columns."""
    if isinstance(F, PrimeField):
        return _rref_prime(rows, F.p)
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not F.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(x, inv) for x in m[r]]
        row = m[r]
        for i in range(nrows):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(F: Field, rows) -> int:
    if not rows:
        return 0
    return len(rref(F, rows)[1])


def kernel(F: Field, rows, ncols: int | None = None) -> list[list]:
    """Echelon-form basis of the right kernel: one vector per free column."""
    if not rows:
        n = ncols or 0
        return [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    ncols = len(rows[0]) if ncols is None else ncols
    red, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(red[r][f])
        basis.append(v)
    return basis


def det(F: Field, rows) -> object:
    n = len(rows)
    if n == 0:
        return F.one
    if any(len(r) != n for r in rows):
        raise ArityError("determinant of a non-square matrix")
    if isinstance(F, PrimeField):
        p = F.p
        m = [[x % p for x in r] for r in rows]
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            pc = m[c][c]
            d = d * pc % p
            inv = pow(pc, -1, p)
            rowc = m[c]
            for i in range(c + 1, n):
                f = m[i][c] * inv % p
                if f:
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], rowc)]
        return d % p
    m = [list(r) for r in rows]
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not F.is_zero(m[i][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = F.neg(d)
        pc = m[c][c]
        d = F.mul(d, pc)
        inv = F.inv(pc)
        for i in range(c + 1, n):
            if not F.is_zero(m[i][c]):
                f = F.mul(m[i][c], inv)
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[c])]
    return d


def matmul(F: Field, a, b) -> list[list]:
    if a and len(a[0]) != len(b):
        raise ArityError("inner dimensions differ")
    cols = list(zip(*b)) if b else []
    if isinstance(F, PrimeField):
        p = F.p
        return [[sum(x * y for x, y in zip(r, c)) % p for c in cols] for r in a]
    out = []
    for r in a:
        row = []
        for c in cols:
            s = F.zero
            for x, y in zip(r, c):
                s = F.add(s, F.mul(x, y))
            row.append(s)
        out.append(row)
    return out


def transpose(rows) -> list[list]:
    return [list(c) for c in zip(*rows)]


def minor_rows(rows, i: int, j: int) -> list[list]:
    return [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]


def adjugate(F: Field, rows) -> list[list]:
    """Classical adjoint: ``adj[i][j] = (-1)^(i+j) det(minor(j, i))``."""
    n = len(rows)
    if n == 1:
        return [[F.one]]
    r = rank(F, rows)
    if r < n - 1:
        return [[F.zero] * n for _ in range(n)]
    if r == n:
        inv = inverse(F, rows)
        d = det(F, rows)
        return [[F.mul(d, x) for x in row] for row in inv]
    out = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(F, minor_rows(rows, j, i))
            out[i][j] = F.neg(c) if (i + j) % 2 else c
    return out


def inverse(F: Field, rows) -> list[list]:
    n = len(rows)
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def row_basis(F: Field, rows) -> list[list]:
    """Nonzero rows of the reduced echelon form (canonical basis of the row space)."""
    if not rows:
        return []
    red, pivots = rref(F, rows)
    return red[: len(pivots)]


def same_row_space(F: Field, a, b) -> bool:
    return row_basis(F, a) == row_basis(F, b)


def intersect_spans(F: Field, a, b) -> list[list]:
    """Basis of ``span(a) ∩ span(b)`` (rows are vectors)."""
    a = row_basis(F, a)
    b = row_basis(F, b)
    if not a or not b:
        return []
    # x·a = y·b  <=>  [a; -b]^T (x, y) = 0
    stacked = a + [[F.neg(v) for v in r] for r in b]
    ker = kernel(F, transpose(stacked))
    out = []
    for k in ker:
        vec = [F.zero] * len(a[0])
        for coeff, r in zip(k[: len(a)], a):
            if not F.is_zero(coeff):
                vec = [F.add(x, F.mul(coeff, y)) for x, y in zip(vec, r)]
        out.append(vec)
    return row_basis(F, out)


def normalize_projective(F: Field, v) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    for x in v:
        if not F.is_zero(x):
            inv = F.inv(x)
            return tuple(F.mul(y, inv) for y in v)
    raise ValueError("zero vector has no projective class")


class ScalarMatrix:
    """Dense matrix of raw field values."""

    __slots__ = ("field", "rows", "symmetric")

    def __init__(self, field: Field, rows, symmetric: bool = False, *, coerce: bool = True):
        self.field = field
        rows = [[field.coerce(x) for x in r] for r in rows] if coerce else [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ArityError("ragged matrix")
        if symmetric:
            n = len(rows)
            if any(len(r) != n for r in rows) or any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
                raise ArityError("matrix flagged symmetric is not symmetric")
        self.rows = rows
        self.symmetric = symmetric

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def rank(self) -> int:
        return rank(self.field, self.rows)

    def kernel(self) -> list[list]:
        return kernel(self.field, self.rows, self.shape[1])

    def det(self):
        return det(self.field, self.rows)

    def adjugate(self) -> "ScalarMatrix":
        return ScalarMatrix(self.field, adjugate(self.field, self.rows), self.symmetric, coerce=False)

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(self.field, transpose(self.rows), self.symmetric, coerce=False)

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        return ScalarMatrix(self.field, matmul(self.field, self.rows, other.rows), coerce=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarMatrix) and self.field == other.field and self.rows == other.rows

    def __repr__(self) -> str:
        return f"ScalarMatrix({self.shape[0]}x{self.shape[1]} over {self.field.spec})"


def kernel_solve(m: ScalarMatrix) -> list[list]:
    """Echelon-form basis of the right kernel of ``m``."""
    return m.kernel()


# --- polynomial matrices ----------------------------------------------------------------

class PolyMatrix:
    """Dense matrix of :class:`MultiPoly` entries sharing field and arity."""

    __slots__ = ("field", "nvars", "rows", "symmetric")

    def __init__(self, rows: Sequence[Sequence[MultiPoly]], symmetric: bool = False):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ArityError("empty polynomial matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ArityError("ragged matrix")
        self.field = rows[0][0].field
        self.nvars = rows[0][0].nvars
        for r in rows:
            for e in r:
                if e.nvars != self.nvars or e.field != self.field:
                    raise ArityError("entries differ in arity or field")
        if symmetric:
            n = len(rows)
            if any(len(r) != n for r in rows) or any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
                raise ArityError("matrix flagged symmetric is not symmetric")
        self.rows = rows
        self.symmetric = symmetric

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def evaluate(self, point) -> ScalarMatrix:
        return ScalarMatrix(self.field, [[e.evaluate(point) for e in r] for r in self.rows],
                            coerce=False)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        zero = MultiPoly.zero(self.field, self.nvars)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = zero
                for x, y in zip(r, c):
                    if x.terms and y.terms:
                        s = s + x * y
                row.append(s)
            out.append(row)
        return PolyMatrix(out)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(transpose(self.rows), self.symmetric)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def det_bareiss(self) -> MultiPoly:
        return bareiss_det(self.rows)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.shape[0]}x{self.shape[1]}, {self.nvars} vars over {self.field.spec})"


def bareiss_det(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Fraction-free elimination; every division is exact in the polynomial ring."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ArityError("determinant of a non-square matrix")
    F = rows[0][0].field
    nv = rows[0][0].nvars
    one = MultiPoly.const(F, nv, 1)
    if n == 0:
        return one
    m = [list(r) for r in rows]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k].terms:
            swap = next((i for i in range(k + 1, n) if m[i][k].terms), None)
            if swap is None:
                return MultiPoly.zero(F, nv)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num if k == 0 else num.exact_div(prev)
        prev = pivot
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def cofactor_adjugate(rows: Sequence[Sequence[MultiPoly]]) -> list[list[MultiPoly]]:
    n = len(rows)
    F = rows[0][0].field
    nv = rows[0][0].nvars
    if n == 1:
        return [[MultiPoly.const(F, nv, 1)]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = bareiss_det(minor_rows([list(r) for r in rows], j, i))
            out[i][j] = -c if (i + j) % 2 else c
    return out


def _uniform_degree(rows) -> int | None:
    deg = None
    for r in rows:
        for e in r:
            if not e.terms:
                continue
            d = e.homogeneous_degree
            if d is None or (deg is not None and d != deg):
                return None
            deg = d
    return deg if deg is not None else 0


def _vandermonde_inverse(F: Field, nodes) -> list[list]:
    n = len(nodes)
    v = [[F.pow(x, k) for k in range(n)] for x in nodes]
    return inverse(F, v)


def _interp_grid(F: Field, nodes, vinv, values, d: int, nvars: int) -> MultiPoly:
    """Homogeneous degree-``d`` form in 3 vars from its values at ``(1, a_i, b_j)``."""
    n = len(nodes)
    # values[i][j] = f(1, a_i, b_j); first solve in a for each b_j
    coeff_a = []  # coeff_a[j][ka]
    for j in range(n):
        col = [values[i][j] for i in range(n)]
        coeff_a.append([_dot(F, vinv[k], col) for k in range(n)])
    terms = {}
    for ka in range(n):
        col = [coeff_a[j][ka] for j in range(n)]
        for kb in range(n):
            c = _dot(F, vinv[kb], col)
            if F.is_zero(c):
                continue
            if ka + kb > d:
                raise ArithmeticError("interpolated form exceeds its degree bound")
            terms[(d - ka - kb, ka, kb)] = c
    return MultiPoly(F, nvars, terms, coerce=False)


def _dot(F: Field, a, b):
    if isinstance(F, PrimeField):
        return sum(x * y for x, y in zip(a, b)) % F.p
    s = F.zero
    for x, y in zip(a, b):
        s = F.add(s, F.mul(x, y))
    return s


def interp_det_adjugate(rows: Sequence[Sequence[MultiPoly]]):
    """det and adjugate of a square matrix of ternary forms of one degree.

    The matrix is evaluated on a ``(D+1) x (D+1)`` grid of the chart
    ``x0 = 1`` (``D`` = degree of det), each scalar det/adjugate is computed
    and the entries are recovered by tensor Lagrange interpolation and
    rehomogenization. Terms beyond the degree bound are rejected.
    """
    n = len(rows)
    F = rows[0][0].field
    nv = rows[0][0].nvars
    if nv != 3:
        raise ArityError("grid interpolation handles ternary forms only")
    e = _uniform_degree(rows)
    if e is None:
        raise ArityError("entries are not forms of a common degree")
    D = n * e
    if F.order is not None and F.order < D + 1:
        raise ArithmeticError("field too small for the interpolation grid")
    nodes = [F.from_int(k) for k in range(D + 1)]
    vinv = _vandermonde_inverse(F, nodes)
    det_vals = [[None] * (D + 1) for _ in range(D + 1)]
    adj_vals = [[[[None] * (D + 1) for _ in range(D + 1)] for _ in range(n)] for _ in range(n)]
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            pt = (F.one, a, b)
            m = [[x.evaluate(pt) for x in r] for r in rows]
            det_vals[i][j] = det(F, m)
            adj = adjugate(F, m)
            for r in range(n):
                for c in range(n):
                    adj_vals[r][c][i][j] = adj[r][c]
    det_poly = _interp_grid(F, nodes, vinv, det_vals, D, nv)
    dadj = (n - 1) * e
    adj_nodes = nodes[: dadj + 1]
    adj_vinv = _vandermonde_inverse(F, adj_nodes)
    adj_poly = []
    for r in range(n):
        row = []
        for c in range(n):
            vals = [v[: dadj + 1] for v in adj_vals[r][c][: dadj + 1]]
            row.append(_interp_grid(F, adj_nodes, adj_vinv, vals, dadj, nv))
        adj_poly.append(row)
    return det_poly, adj_poly


def check_adjugate_identity(rows, det_poly: MultiPoly, adj) -> bool:
    """``m · adj == det · I`` as an exact polynomial identity."""
    n = len(rows)
    F = det_poly.field
    nv = det_poly.nvars
    for i in range(n):
        for j in range(n):
            s = MultiPoly.zero(F, nv)
            for k in range(n):
                if rows[i][k].terms and adj[k][j].terms:
                    s = s + rows[i][k] * adj[k][j]
            if s != (det_poly if i == j else MultiPoly.zero(F, nv)):
                return False
    return True


def ff_det_adjugate(m: PolyMatrix, method: str = "auto"):
    """Determinant and adjugate of a square polynomial matrix.

    ``method`` is ``"bareiss"`` (fraction-free elimination, cofactor adjugate),
    ``"interp"`` (grid evaluation and interpolation, ternary forms only) or
    ``"auto"``. The identity ``m · adj = det · I`` is verified before returning.
    """
    rows = m.rows
    n, k = m.shape
    if n != k:
        raise ArityError("adjugate of a non-square matrix")
    use_interp = method == "interp"
    if method == "auto":
        e = _uniform_degree(rows)
        use_interp = (
            m.nvars == 3 and e is not None and n >= 4
            and (m.field.order is None or m.field.order > n * e)
        )
    if use_interp:
        det_poly, adj = interp_det_adjugate(rows)
    else:
        det_poly = bareiss_det(rows)
        adj = cofactor_adjugate(rows)
    if not check_adjugate_identity(rows, det_poly, adj):
        raise ArithmeticError("adjugate identity failed")
    return det_poly, PolyMatrix(adj, symmetric=m.symmetric)
