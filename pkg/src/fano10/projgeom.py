"""Projective points, linear subspaces and quadrics over an exact field.

A quadric is stored by its symmetric Gram matrix ``A`` with ``q(x) = x^T A x``
(off-diagonal coefficients of the form are halved). Ruling membership for
even-rank quadrics is decided by the parity of intersection dimensions; the
exhaustive GF(5) family enumeration at the bottom of this module is the
independent oracle that the parity rule is checked against.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Sequence

from .exactalg import linalg as la
from .exactalg.fields import Field, FieldError
from .exactalg.linalg import ScalarMatrix
from .exactalg.poly import MultiPoly
from .exactalg.rng import SplitMix64


class GeometryError(ValueError):
    pass


class NotRulingMember(GeometryError):
    pass


class NotOnVariety(GeometryError):
    pass


class ProjPoint:
    """A point of P^n; stored normalized (first nonzero coordinate 1)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: Sequence, *, coerce: bool = True):
        vals = [field.coerce(c) for c in coords] if coerce else list(coords)
        if all(field.is_zero(c) for c in vals):
            raise GeometryError("all coordinates are zero")
        self.field = field
        self.coords = la.normalize_projective(field, vals)

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "(" + ":".join(self.field.to_text(c).split(" mod ")[0] for c in self.coords) + ")"

    def to_text(self) -> list[str]:
        return [self.field.to_text(c) for c in self.coords]


class LinSubspace:
    """Projective linear subspace given by the row span of a basis matrix.

    The basis is kept in reduced row echelon form, so equality of subspaces is
    equality of bases.
    """

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: Field, rows: Sequence[Sequence], ambient: int | None = None, *,
                 coerce: bool = True):
        rows = [[field.coerce(c) for c in r] for r in rows] if coerce else [list(r) for r in rows]
        if ambient is None:
            if not rows:
                raise GeometryError("ambient dimension needed for the empty subspace")
            ambient = len(rows[0]) - 1
        basis = la.row_basis(field, rows) if rows else []
        if len(basis) != len(rows):
            raise GeometryError("basis rows are linearly dependent")
        self.field = field
        self.ambient = ambient
        self.basis = [tuple(r) for r in basis]

    @classmethod
    def span(cls, field: Field, rows, ambient: int | None = None) -> "LinSubspace":
        """Subspace spanned by possibly dependent rows."""
        rows = [[field.coerce(c) for c in r] for r in rows]
        if ambient is None:
            ambient = len(rows[0]) - 1
        return cls(field, la.row_basis(field, rows) if rows else [], ambient, coerce=False)

    @classmethod
    def from_equations(cls, field: Field, eqs, ambient: int) -> "LinSubspace":
        """Common zeros of linear forms given as coefficient rows."""
        eqs = [[field.coerce(c) for c in r] for r in eqs]
        ker = la.kernel(field, eqs, ambient + 1) if eqs else la.kernel(field, [], ambient + 1)
        return cls(field, ker, ambient, coerce=False)

    @classmethod
    def coordinate(cls, field: Field, indices, ambient: int) -> "LinSubspace":
        rows = [[field.one if j == i else field.zero for j in range(ambient + 1)] for i in indices]
        return cls(field, rows, ambient, coerce=False)

    @property
    def dim(self) -> int:
        """Projective dimension (-1 for the empty subspace)."""
        return len(self.basis) - 1

    def equations(self) -> list[list]:
        """Coefficient rows of linear forms cutting out the subspace."""
        if not self.basis:
            return [[self.field.one if i == j else self.field.zero for j in range(self.ambient + 1)]
                    for i in range(self.ambient + 1)]
        return la.kernel(self.field, self.basis, self.ambient + 1)

    def contains_point(self, pt: ProjPoint | Sequence) -> bool:
        coords = pt.coords if isinstance(pt, ProjPoint) else pt
        return la.rank(self.field, list(self.basis) + [list(coords)]) == len(self.basis)

    def contains_subspace(self, other: "LinSubspace") -> bool:
        return la.rank(self.field, list(self.basis) + list(other.basis)) == len(self.basis)

    def intersect(self, other: "LinSubspace") -> "LinSubspace":
        rows = la.intersect_spans(self.field, self.basis, other.basis)
        return LinSubspace(self.field, rows, self.ambient, coerce=False)

    def join(self, other: "LinSubspace | ProjPoint") -> "LinSubspace":
        extra = [other.coords] if isinstance(other, ProjPoint) else list(other.basis)
        return LinSubspace.span(self.field, list(self.basis) + extra, self.ambient)

    def points(self) -> list[ProjPoint]:
        """Basis rows as points."""
        return [ProjPoint(self.field, r, coerce=False) for r in self.basis]

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinSubspace) and self.field == other.field
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(self.basis)))

    def __repr__(self) -> str:
        return f"LinSubspace(dim {self.dim} in P^{self.ambient})"


class Quadric:
    """Quadric hypersurface in P^n by its symmetric Gram matrix."""

    __slots__ = ("field", "gram")

    def __init__(self, gram: ScalarMatrix):
        n, m = gram.shape
        if n != m:
            raise GeometryError("Gram matrix must be square")
        if not gram.symmetric:
            gram = ScalarMatrix(gram.field, gram.rows, symmetric=True, coerce=False)
        self.field = gram.field
        self.gram = gram

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Quadric":
        return cls(ScalarMatrix(field, rows, symmetric=True))

    @classmethod
    def from_poly(cls, q: MultiPoly) -> "Quadric":
        if q.homogeneous_degree != 2:
            raise GeometryError("a quadric needs a nonzero quadratic form")
        F = q.field
        n = q.nvars
        half = F.inv(F.from_int(2))
        rows = [[F.zero] * n for _ in range(n)]
        for e, c in q.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                rows[i][i] = c
            else:
                rows[i][j] = rows[j][i] = F.mul(c, half)
        return cls(ScalarMatrix(F, rows, symmetric=True, coerce=False))

    def to_poly(self) -> MultiPoly:
        F = self.field
        n = self.size
        terms = {}
        two = F.from_int(2)
        for i in range(n):
            for j in range(i, n):
                a = self.gram.rows[i][j]
                if F.is_zero(a):
                    continue
                e = [0] * n
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = a if i == j else F.mul(two, a)
        return MultiPoly(F, n, terms, coerce=False)

    @property
    def size(self) -> int:
        return self.gram.shape[0]

    @property
    def ambient(self) -> int:
        return self.size - 1

    def bilinear(self, u, v):
        F = self.field
        s = F.zero
        for i, ui in enumerate(u):
            if F.is_zero(ui):
                continue
            row = self.gram.rows[i]
            for j, vj in enumerate(v):
                if not F.is_zero(vj) and not F.is_zero(row[j]):
                    s = F.add(s, F.mul(ui, F.mul(row[j], vj)))
        return s

    def value(self, x):
        return self.bilinear(x, x)

    def rank(self) -> int:
        return self.gram.rank()

    def restrict(self, s: LinSubspace) -> ScalarMatrix:
        """Gram matrix ``B A B^T`` of the form restricted to ``s``."""
        F = self.field
        ba = la.matmul(F, s.basis, self.gram.rows)
        return ScalarMatrix(F, la.matmul(F, ba, la.transpose(s.basis)), coerce=False)

    def orthogonal(self, s: LinSubspace) -> LinSubspace:
        """Orthogonal complement ``{x : B(b, x) = 0 for b in s}``."""
        F = self.field
        eqs = la.matmul(F, s.basis, self.gram.rows)
        return LinSubspace.from_equations(F, eqs, self.ambient)

    def __repr__(self) -> str:
        return f"Quadric(P^{self.ambient}, rank {self.rank()})"


def rank_vertex(q: Quadric) -> tuple[int, LinSubspace]:
    """Rank of the Gram matrix and the vertex (projectivized kernel)."""
    F = q.field
    if all(F.is_zero(x) for r in q.gram.rows for x in r):
        raise GeometryError("zero form has no vertex")
    ker = q.gram.kernel()
    return q.size - len(ker), LinSubspace(F, ker, q.ambient, coerce=False)


def contains(q: Quadric, s: LinSubspace) -> bool:
    """``B^T A B == 0``: the subspace lies in the quadric (is isotropic)."""
    if s.ambient != q.ambient:
        raise GeometryError("ambient dimensions differ")
    if not s.basis:
        return True
    m = q.restrict(s)
    return all(q.field.is_zero(x) for r in m.rows for x in r)


def _check_ruling_member(q: Quadric, plane: LinSubspace, vertex: LinSubspace, half: int, name: str):
    expected = half + vertex.dim + 1
    if plane.dim + 1 != expected:
        raise NotRulingMember(f"{name}: expected projective dimension {expected - 1}, got {plane.dim}")
    if not plane.contains_subspace(vertex):
        raise NotRulingMember(f"{name}: does not contain the vertex")
    if not contains(q, plane):
        raise NotRulingMember(f"{name}: not isotropic")


def same_ruling(q: Quadric, p1: LinSubspace, p2: LinSubspace, *, vertex: LinSubspace | None = None,
                checked: bool = False) -> bool:
    """Whether two maximal isotropic subspaces through the vertex lie in the same family.

    For a quadric of rank ``2m`` the rule is: same family iff the vector
    dimension of ``p1 ∩ p2`` modulo the vertex is congruent to ``m`` mod 2.
    For rank 6 in P^6 this is "projective dimension of the intersection is odd".
    """
    if vertex is None:
        r, vertex = rank_vertex(q)
    else:
        r = q.size - (vertex.dim + 1)
    if r % 2:
        raise GeometryError("ruling families need even rank")
    half = r // 2
    if not checked:
        _check_ruling_member(q, p1, vertex, half, "first plane")
        _check_ruling_member(q, p2, vertex, half, "second plane")
    inter = la.rank(q.field, list(p1.basis) + list(p2.basis))
    common = len(p1.basis) + len(p2.basis) - inter
    return (common - (vertex.dim + 1)) % 2 == half % 2


def jacobian_matrix(forms: Sequence[MultiPoly], pt) -> list[list]:
    coords = pt.coords if isinstance(pt, ProjPoint) else pt
    return [[f.diff(i).evaluate(coords) for i in range(f.nvars)] for f in forms]


def jacobian_rank(forms: Sequence[MultiPoly], pt: ProjPoint | Sequence) -> int:
    """Rank of the Jacobian of ``forms`` at a point lying on all of them."""
    F = forms[0].field
    coords = pt.coords if isinstance(pt, ProjPoint) else [F.coerce(c) for c in pt]
    for k, f in enumerate(forms):
        if not F.is_zero(f.evaluate(coords)):
            raise NotOnVariety(f"point does not satisfy form {k}")
    return la.rank(F, jacobian_matrix(forms, coords))


def _isotropic_in(q: Quadric, space: list, rng: SplitMix64, tries: int = 32):
    """A random isotropic vector in the span of ``space`` (or ``None``)."""
    F = q.field
    for _ in range(tries):
        y = _combo(F, space, rng)
        z = _combo(F, space, rng)
        a, b, c = q.value(z), F.mul(F.from_int(2), q.bilinear(y, z)), q.value(y)
        # solve a s^2 + b s + c = 0 for the vector y + s z
        if F.is_zero(a):
            if F.is_zero(b):
                if F.is_zero(c):
                    return y
                continue
            s = F.neg(F.div(c, b))
        else:
            disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)))
            r = F.sqrt(disc)
            if r is None:
                continue
            s = F.div(F.sub(r, b), F.mul(F.from_int(2), a))
        return [F.add(yi, F.mul(s, zi)) for yi, zi in zip(y, z)]
    return None


def _combo(F, space, rng):
    v = [F.zero] * len(space[0])
    for row in space:
        c = F.random(rng)
        v = [F.add(a, F.mul(c, b)) for a, b in zip(v, row)]
    return v


def sample_maximal_isotropic(q: Quadric, rng: SplitMix64, budget: int = 64) -> LinSubspace:
    """Random maximal isotropic subspace through the vertex (greedy isotropic flag).

    Starts from the vertex and repeatedly adds a random isotropic vector of the
    current orthogonal complement; restarts on failure, at most ``budget`` times.
    """
    F = q.field
    r, vertex = rank_vertex(q)
    half = r // 2
    for _ in range(budget):
        current = LinSubspace(F, vertex.basis, q.ambient, coerce=False)
        ok = True
        for _step in range(half):
            perp = q.orthogonal(current)
            v = _isotropic_in(q, perp.basis, rng)
            if v is None or current.contains_point(v):
                ok = False
                break
            current = current.join(ProjPoint(F, v, coerce=False))
        if ok and contains(q, current):
            return current
    raise GeometryError(f"no isotropic flag found within budget {budget}")


# --- exhaustive oracle for families of maximal isotropic subspaces -------------------------

def _canon(F: Field, rows) -> tuple:
    return tuple(tuple(r) for r in la.row_basis(F, rows))


def enumerate_families(q: Quadric) -> tuple[list[tuple], dict[tuple, int]]:
    """All maximal isotropic subspaces of a nondegenerate even-rank form over a finite field.

    The subspaces are found by breadth-first search through the graph in which
    two maximal isotropic subspaces are adjacent when they meet in codimension
    one (for a subspace ``W`` and a hyperplane ``U`` of ``W``, ``U^perp / U`` is
    a hyperbolic plane whose two isotropic lines give ``W`` and its neighbour).
    The graph is 2-coloured during the search; a colouring conflict raises.
    Returns the list of subspaces (as canonical bases) and the colour map.
    """
    F = q.field
    n = q.size
    if q.rank() != n or n % 2:
        raise GeometryError("oracle needs a nondegenerate form in an even number of variables")
    start = sample_maximal_isotropic(q, SplitMix64(1))
    start_key = _canon(F, start.basis)
    color = {start_key: 0}
    order = [start_key]
    queue = deque([start_key])
    m = n // 2
    while queue:
        w = queue.popleft()
        # hyperplanes of w: kernels of nonzero functionals on its basis, up to scalar
        for func in _projective_vectors(F, m):
            u_coeffs = la.kernel(F, [list(func)], m)
            u = [_lincomb(F, c, w) for c in u_coeffs]
            usub = LinSubspace(F, u, n - 1, coerce=False)
            perp = q.orthogonal(usub)
            comp = _complement(F, u, perp.basis)
            for ab in _projective_vectors(F, 2):
                v = _lincomb(F, ab, comp)
                if not F.is_zero(q.value(v)):
                    continue
                key = _canon(F, u + [v])
                if key == w:
                    continue
                if key in color:
                    if color[key] == color[w]:
                        raise GeometryError("codimension-one graph is not bipartite")
                    continue
                color[key] = 1 - color[w]
                order.append(key)
                queue.append(key)
    return order, color


def _projective_vectors(F: Field, k: int):
    """One representative per point of P^(k-1) over a finite field."""
    elems = list(F.elements())
    for lead in range(k):
        for tail in itertools.product(elems, repeat=k - lead - 1):
            yield (F.zero,) * lead + (F.one,) + tail


def _lincomb(F, coeffs, rows):
    v = [F.zero] * len(rows[0])
    for c, r in zip(coeffs, rows):
        if not F.is_zero(c):
            v = [F.add(a, F.mul(c, b)) for a, b in zip(v, r)]
    return v


def _complement(F, sub, space):
    """Vectors of ``space`` extending a basis of ``sub`` to a basis of ``space``."""
    chosen = [list(r) for r in sub]
    out = []
    for r in space:
        if la.rank(F, chosen + [list(r)]) > len(chosen):
            chosen.append(list(r))
            out.append(list(r))
    return out


def standard_split_form(field: Field, npairs: int, extra: int = 0) -> Quadric:
    """``x0 x1 + x2 x3 + ...`` with ``npairs`` hyperbolic pairs and ``extra`` kernel variables."""
    n = 2 * npairs + extra
    half = field.inv(field.from_int(2))
    rows = [[field.zero] * n for _ in range(n)]
    for k in range(npairs):
        rows[2 * k][2 * k + 1] = rows[2 * k + 1][2 * k] = half
    return Quadric(ScalarMatrix(field, rows, symmetric=True, coerce=False))


__all__ = [
    "FieldError", "GeometryError", "LinSubspace", "NotOnVariety", "NotRulingMember", "ProjPoint",
    "Quadric", "contains", "enumerate_families", "jacobian_rank", "rank_vertex", "same_ruling",
    "sample_maximal_isotropic", "standard_split_form",
]
