"""Nodal X, its net of quadrics and discriminant septic, vertex map, ruling labels.

Net coordinates are ``(λ0, λ1, λ2)`` with member ``λ0 A1 + λ1 A2 + λ2 AΩ``;
``A1, A2`` span the pencil of W_O so the pencil line is ``λ2 = 0``. Points that
only exist over an extension (the six intersection points with the pencil
line, their vertices) live in a splitting field GF(p^k) of the relevant binary
sextic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exactalg import linalg as la
from .exactalg.fields import Field, FiniteFieldRequired, PrimeField
from .exactalg.linalg import PolyMatrix, ScalarMatrix, ff_det_adjugate
from .exactalg.poly import MultiPoly
from .exactalg.resultant import no_common_projective_zero
from .exactalg.rng import SplitMix64, derive_seed
from .exactalg.univariate import (
    binary_form_to_dense, binary_roots, is_squarefree_binary, splitting_field,
)
from .grassw import PO, PO_LABELS, WOModel
from .projgeom import (
    GeometryError, LinSubspace, ProjPoint, Quadric, contains, jacobian_rank, rank_vertex, same_ruling,
)
from .records import DegenerateInput, check

P3W_LABELS = ("14", "24", "34", "35")


# --- small containers ----------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneCurve:
    poly: MultiPoly
    name: str = ""

    def __post_init__(self):
        if self.poly.nvars != 3 or self.poly.homogeneous_degree is None:
            raise GeometryError("a plane curve needs a nonzero ternary form")

    @property
    def degree(self) -> int:
        return self.poly.homogeneous_degree

    def contains(self, pt) -> bool:
        coords = pt.coords if isinstance(pt, ProjPoint) else pt
        F = pt.field if isinstance(pt, ProjPoint) else self.poly.field
        f = self.poly if F == self.poly.field else self.poly.map_field(F)
        return F.is_zero(f.evaluate(coords))


@dataclass(frozen=True)
class CoveringPoint:
    """A point of a discriminant curve and an isotropic 3-plane choosing a ruling."""

    base: ProjPoint
    witness: LinSubspace
    quadric: Quadric
    vertex: LinSubspace

    def check(self) -> None:
        if self.witness.dim != 3:
            raise GeometryError("witness is not a 3-plane")
        if not self.witness.contains_subspace(self.vertex):
            raise GeometryError("witness does not contain the vertex")
        if not contains(self.quadric, self.witness):
            raise GeometryError("witness is not isotropic")

    def same_sheet(self, other: "CoveringPoint") -> bool:
        if self.base != other.base:
            raise GeometryError("covering points over different base points")
        return same_ruling(self.quadric, self.witness, other.witness, vertex=self.vertex)


LabeledDivisor = list  # list[CoveringPoint]


def embed_raw(F: Field, E: Field, x):
    if E == F:
        return x
    return E.embed(x)


def embed_rows(F: Field, E: Field, rows) -> list[list]:
    if E == F:
        return [list(r) for r in rows]
    return [[E.embed(x) for x in r] for r in rows]


# --- the net --------------------------------------------------------------------------------

@dataclass
class NetOfQuadrics:
    field: Field
    generators: tuple  # three ScalarMatrix

    def __post_init__(self):
        F = self.field
        flat = [[x for r in g.rows for x in r] for g in self.generators]
        if la.rank(F, flat) != 3:
            raise GeometryError("net generators are linearly dependent")

    def member(self, lam, E: Field | None = None) -> Quadric:
        """Gram matrix of the member at ``lam`` (coordinates in ``E`` ⊇ base field)."""
        F = self.field
        E = E or F
        lam = [E.coerce(c) for c in lam]
        n = self.generators[0].shape[0]
        rows = [[E.zero] * n for _ in range(n)]
        for c, g in zip(lam, self.generators):
            if E.is_zero(c):
                continue
            for i in range(n):
                gi = g.rows[i]
                ri = rows[i]
                for j in range(n):
                    if not F.is_zero(gi[j]):
                        ri[j] = E.add(ri[j], E.mul(c, embed_raw(F, E, gi[j])))
        return Quadric(ScalarMatrix(E, rows, symmetric=True, coerce=False))

    def poly_matrix(self) -> PolyMatrix:
        F = self.field
        lam = MultiPoly.gens(F, 3)
        n = self.generators[0].shape[0]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                e = MultiPoly.zero(F, 3)
                for l, g in zip(lam, self.generators):
                    if not F.is_zero(g.rows[i][j]):
                        e = e + l.scale(g.rows[i][j])
                row.append(e)
            rows.append(row)
        return PolyMatrix(rows, symmetric=True)

    def restriction_map(self, plane: LinSubspace) -> list[list]:
        """Linear map λ -> (Gram of the member restricted to ``plane``), as 6 x 3 rows."""
        E = plane.field
        cols = []
        for g in self.generators:
            q = Quadric(ScalarMatrix(E, embed_rows(self.field, E, g.rows), symmetric=True, coerce=False))
            m = q.restrict(plane).rows
            cols.append([m[i][j] for i in range(len(m)) for j in range(i, len(m))])
        return la.transpose(cols)


@dataclass
class Discriminant:
    septic: MultiPoly
    line: MultiPoly
    sextic: MultiPoly
    adj: PolyMatrix

    @property
    def gamma6(self) -> PlaneCurve:
        return PlaneCurve(self.sextic, "Gamma6")


def discriminant(net: NetOfQuadrics) -> Discriminant:
    """det of the net; the pencil line λ2 must divide it exactly once."""
    F = net.field
    m = net.poly_matrix()
    det, adj = ff_det_adjugate(m)
    if det.homogeneous_degree != 7:
        raise DegenerateInput("determinant is not a septic", ["septic degree"])
    line = MultiPoly.var(F, 3, 2)
    q, r = det.divmod(line)
    if r.terms:
        raise DegenerateInput("pencil line does not divide the septic", ["line divides septic"])
    if line.divides(q):
        raise DegenerateInput("pencil line divides the septic twice", ["line divides septic once"])
    return Discriminant(det, line, q, adj)


def restrict_to_pencil_line(f: MultiPoly) -> MultiPoly:
    """Binary form f(λ0, λ1, 0)."""
    return f.specialize({2: 0}).select_vars([0, 1])


# --- nodal X --------------------------------------------------------------------------------

@dataclass
class NodalXModel:
    field: Field
    wo: WOModel
    omega: ScalarMatrix  # 8x8 on V8 coordinates, cone with vertex e45
    net: NetOfQuadrics
    disc: Discriminant
    gamma6_star: MultiPoly
    ext: Field  # splitting field of the six points
    s_params: list  # roots (s:t) of Ω_O ∘ C_O over ext
    s_points: list  # ProjPoints over ext
    p_points: list  # ProjPoints over ext on the pencil line, p_i = (t_i : s_i : 0)
    certificate: dict = dc_field(default_factory=dict)
    attempts: int = 1
    failures: list = dc_field(default_factory=list)

    @property
    def omega_o(self) -> Quadric:
        return Quadric(ScalarMatrix(self.field, [r[:7] for r in self.omega.rows[:7]], symmetric=True,
                                    coerce=False))

    @property
    def p3w(self) -> LinSubspace:
        return self.wo.p3w


def omega_o_on_c_o(wo: WOModel, omega_o: Quadric) -> MultiPoly:
    return omega_o.to_poly().subs(wo.c_o_symbolic())


def q_surface_rank(wo: WOModel, omega_o: Quadric) -> int:
    return omega_o.restrict(wo.p3w).rank()


def cone_omega(F: Field, gram7) -> ScalarMatrix:
    """8x8 Gram on V8 (x45 last) from a 7x7 Gram on P⁶_O: the cone over it with vertex O."""
    rows = [list(r) + [F.zero] for r in gram7] + [[F.zero] * 8]
    return ScalarMatrix(F, rows, symmetric=True, coerce=False)


def random_symmetric(F: Field, n: int, rng: SplitMix64) -> list[list]:
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = F.random(rng)
    return rows


def engineered_tangent_omega(F: Field, rng: SplitMix64) -> ScalarMatrix:
    """A cone whose Ω_O is tangent to C_O at e24 = C_O(1:0): the s_i are not distinct."""
    g = random_symmetric(F, 7, rng)
    i24, i14 = PO["24"], PO["14"]
    g[i24][i24] = F.zero
    g[i24][i14] = g[i14][i24] = F.zero
    return cone_omega(F, g)


def nodal_x_from_omega(wo: WOModel, omega: ScalarMatrix, rng: SplitMix64 | None = None) -> NodalXModel:
    """Build the model for a quadric Ω through W_O data and run the genericity checklist.

    Raises :class:`GeometryError` if Ω is not a cone at O and
    :class:`DegenerateInput` naming the first failed genericity check.
    """
    F = wo.field
    rng = rng or SplitMix64(0xD15C)
    if not isinstance(F, PrimeField):
        raise FiniteFieldRequired("the net pipeline runs over a prime field GF(p)")
    if omega.shape != (8, 8):
        raise GeometryError("Ω must be given by an 8x8 Gram matrix on V8")
    if any(not F.is_zero(omega.rows[i][7]) for i in range(8)):
        raise GeometryError("Ω is not a cone with vertex O (Gram matrix does not annihilate e45)")
    omega_o = Quadric(ScalarMatrix(F, [r[:7] for r in omega.rows[:7]], symmetric=True, coerce=False))
    cert: dict[str, bool] = {}

    def fail(name, msg):
        cert[name] = False
        raise DegenerateInput(msg, [name])

    cert["omega is a cone at O"] = True
    if q_surface_rank(wo, omega_o) != 4:
        fail("Q smooth", "Q = P3_W ∩ Ω_O is singular")
    cert["Q smooth"] = True
    sext = omega_o_on_c_o(wo, omega_o)
    if sext.homogeneous_degree != 6 or not is_squarefree_binary(sext):
        fail("s_i distinct", "s_i not distinct")
    cert["s_i distinct"] = True
    a1, a2 = wo.quadrics
    net = NetOfQuadrics(F, (a1.gram, a2.gram, omega_o.gram))
    try:
        disc = discriminant(net)
    except DegenerateInput as exc:
        cert[exc.failed_checks[0]] = False
        raise
    cert["line divides septic once"] = True
    on_line = restrict_to_pencil_line(disc.sextic)
    if on_line.homogeneous_degree != 6 or not is_squarefree_binary(on_line):
        fail("pencil line transverse to Gamma6", "Gamma6 not transverse to the pencil line")
    cert["pencil line transverse to Gamma6"] = True
    if not no_common_projective_zero(disc.sextic.gradient(), rng.split(2)).certified:
        fail("Gamma6 smooth", "Gamma6 smoothness not certified")
    cert["Gamma6 smooth"] = True
    star = conic_bundle_discriminant_star_wo(wo, omega_o)
    if not no_common_projective_zero(star.gradient(), rng.split(3)).certified:
        fail("Gamma6* smooth", "Gamma6* smoothness not certified")
    cert["Gamma6* smooth"] = True

    dense, _ = binary_form_to_dense(on_line)
    E = splitting_field(F, dense)
    s_params = binary_roots(sext.map_field(E))
    if len(s_params) != 6:
        fail("s_i distinct", "fewer than six points over the splitting field")
    s_points = [c_o_point_ext(wo, E, s, t) for s, t in s_params]
    p_points = [ProjPoint(E, [t, s, E.zero], coerce=False) for s, t in s_params]
    return NodalXModel(F, wo, omega, net, disc, star, E, s_params, s_points, p_points, cert)


def c_o_point_ext(wo: WOModel, E: Field, s, t) -> ProjPoint:
    vals = {lab: E.zero for lab in PO_LABELS}
    vals["14"] = E.mul(E.mul(s, s), t)
    vals["24"] = E.pow(s, 3)
    vals["34"] = E.mul(s, E.mul(t, t))
    vals["35"] = E.neg(E.pow(t, 3))
    return ProjPoint(E, [vals[lab] for lab in PO_LABELS], coerce=False)


def sample_nodal_x(wo: WOModel, seed: int, budget: int = 16) -> NodalXModel:
    """Random cone Ω at O passing the genericity checklist, resampling up to ``budget`` times."""
    F = wo.field
    rng = SplitMix64(derive_seed(seed, 0x4E4F44))
    failures = []
    for attempt in range(1, budget + 1):
        gram = random_symmetric(F, 7, rng)
        try:
            model = nodal_x_from_omega(wo, cone_omega(F, gram), rng.split(attempt))
        except DegenerateInput as exc:
            failures.append({"attempt": attempt, "failed": exc.failed_checks, "reason": str(exc)})
            continue
        model.attempts = attempt
        model.failures = failures
        return model
    raise DegenerateInput(f"no generic instance within budget {budget}",
                          sorted({f for x in failures for f in x["failed"]}), budget)


# --- conic bundle over P²_W ------------------------------------------------------------------

def conic_bundle_discriminant(gram_rows, F: Field, lift: Sequence[MultiPoly], rmat: Sequence[Sequence[MultiPoly]],
                              p3_indices: Sequence[int]) -> tuple[MultiPoly, list[MultiPoly]]:
    """Discriminant of a conic bundle whose fiber over ``a`` is ``<lift(a)> + ker R(a)``.

    ``lift`` gives a vector of linear forms (in the 3 base variables) spanning
    the part of the fiber off the 3-plane, ``R(a)`` is a 2x4 matrix of linear
    forms cutting the fiber's line inside the 3-plane (coordinates
    ``p3_indices``). On the chart of each nonvanishing 2x2 minor ``m`` of ``R``
    a polynomial basis ``n1, n2`` of the kernel is given by cofactors; the
    Gram determinant of the form on ``(lift, n1, n2)`` equals ``m² · disc``.
    Returns the discriminant from the first chart and the candidates from all
    charts (for the overlap check).
    """
    nv = 3
    n = len(gram_rows)
    zero = MultiPoly.zero(F, nv)
    candidates = []
    for c1, c2 in itertools.combinations(range(4), 2):
        r = rmat
        m = r[0][c1] * r[1][c2] - r[0][c2] * r[1][c1]
        if not m.terms:
            continue
        basis = [list(lift)]
        for f in (k for k in range(4) if k not in (c1, c2)):
            v4 = [zero] * 4
            v4[f] = m
            # x_c = -adj(R_c) R_f
            v4[c1] = -(r[1][c2] * r[0][f] - r[0][c2] * r[1][f])
            v4[c2] = -(r[0][c1] * r[1][f] - r[1][c1] * r[0][f])
            v = [zero] * n
            for k, idx in enumerate(p3_indices):
                v[idx] = v4[k]
            basis.append(v)
        g = [[_form_value(F, gram_rows, u, w) for w in basis] for u in basis]
        det = la.bareiss_det(g)
        q, rem = det.divmod(m * m)
        if rem.terms or q.homogeneous_degree != 6:
            raise DegenerateInput("conic bundle discriminant is not a sextic", ["Gamma6* degree"])
        candidates.append(q)
    if not candidates:
        raise GeometryError("fiber matrix has no nonzero minor")
    base = candidates[0]
    for c in candidates[1:]:
        if c.is_proportional(base) is None:
            raise ArithmeticError("conic bundle discriminant differs between charts")
    return base, candidates


def _form_value(F: Field, gram_rows, u, w) -> MultiPoly:
    out = MultiPoly.zero(F, u[0].nvars)
    for i, ui in enumerate(u):
        if not ui.terms:
            continue
        acc = MultiPoly.zero(F, u[0].nvars)
        for j, wj in enumerate(w):
            if wj.terms and not F.is_zero(gram_rows[i][j]):
                acc = acc + wj.scale(gram_rows[i][j])
        if acc.terms:
            out = out + ui * acc
    return out


def wo_conic_bundle_data(wo: WOModel):
    """``lift`` and ``R`` for the P²-bundle of W_O over P²_W."""
    F = wo.field
    a12, a13, a23 = MultiPoly.gens(F, 3)
    zero = MultiPoly.zero(F, 3)
    lift = [zero] * 7
    lift[PO["12"]], lift[PO["13"]], lift[PO["23"]] = a12, a13, a23
    # rows of the bilinear equations on (x14, x24, x34, x35)
    rmat = [[a23, -a13, a12, zero], [a13, zero, -a23, a12]]
    return lift, rmat, [PO[lab] for lab in P3W_LABELS]


def conic_bundle_discriminant_star_wo(wo: WOModel, omega_o: Quadric) -> MultiPoly:
    lift, rmat, idx = wo_conic_bundle_data(wo)
    return conic_bundle_discriminant(omega_o.gram.rows, wo.field, lift, rmat, idx)[0]


def conic_bundle_discriminant_star(m: NodalXModel) -> PlaneCurve:
    return PlaneCurve(m.gamma6_star, "Gamma6*")


def fiber_conic_rank(m: NodalXModel, a) -> int:
    """Rank of Ω_O restricted to the fiber plane over ``a`` (3 = smooth conic)."""
    return m.omega_o.restrict(m.wo.fiber(a)).rank()


# --- sampling points of plane curves -----------------------------------------------------------

def restrict_to_line(f: MultiPoly, p0, p1) -> MultiPoly:
    F = f.field
    u, v = MultiPoly.gens(F, 2)
    images = [u.scale(a) + v.scale(b) for a, b in zip(p0, p1)]
    return f.subs(images)


def sample_curve_points(f: MultiPoly, rng: SplitMix64, count: int, max_lines: int | None = None) -> list[ProjPoint]:
    """Points of ``f = 0`` over its field, from roots on random lines."""
    F = f.field
    out: list[ProjPoint] = []
    seen = set()
    max_lines = max_lines or 50 * count
    for _ in range(max_lines):
        if len(out) >= count:
            break
        p0 = [F.random(rng) for _ in range(3)]
        p1 = [F.random(rng) for _ in range(3)]
        if la.rank(F, [p0, p1]) < 2:
            continue
        g = restrict_to_line(f, p0, p1)
        if not g.terms:
            continue
        for s, t in binary_roots(g, rng):
            pt = ProjPoint(F, [F.add(F.mul(s, a), F.mul(t, b)) for a, b in zip(p0, p1)], coerce=False)
            if pt not in seen:
                seen.add(pt)
                out.append(pt)
    return out[:count]


# --- vertex map ------------------------------------------------------------------------------

def vertex_map(net: NetOfQuadrics, disc: Discriminant, p: ProjPoint) -> ProjPoint:
    """Vertex of the member at ``p`` from a nonzero adjugate column, checked against the kernel."""
    E = p.field
    F = net.field
    best = None
    for j in range(7):
        col = []
        for i in range(7):
            entry = disc.adj.rows[i][j]
            col.append(entry.map_field(E).evaluate(p.coords) if E != F else entry.evaluate(p.coords))
        if any(not E.is_zero(c) for c in col):
            best = col
            break
    if best is None:
        raise GeometryError("adjugate vanishes: member of rank <= 5")
    v = ProjPoint(E, best, coerce=False)
    r, vert = rank_vertex(net.member(p.coords, E))
    if r != 6 or vert.points()[0] != v:
        raise ArithmeticError("adjugate column disagrees with the kernel")
    return v


def adjugate_rank1_identity(adj: PolyMatrix, det: MultiPoly):
    """All 2x2 minors of ``adj`` divisible by ``det``; returns (ok, witness indices).

    For a symmetric adjugate the minor on rows (i, j), columns (k, l) equals
    the one on rows (k, l), columns (i, j); only one of each pair is tested.
    """
    rows = adj.rows
    n = len(rows)
    pairs = list(itertools.combinations(range(n), 2))
    tested = 0
    for a, (i, j) in enumerate(pairs):
        start = a if adj.symmetric else 0
        for k, l in pairs[start:]:
            minor = rows[i][k] * rows[j][l] - rows[i][l] * rows[j][k]
            tested += 1
            if minor.terms and not det.divides(minor):
                return False, {"rows": [i, j], "cols": [k, l], "tested": tested}
    return True, {"tested": tested, "pairs": len(pairs) ** 2}


def random_rank6_symmetric(F: Field, rng: SplitMix64) -> list[list]:
    """``P^T D P`` with ``D = diag(d1..d6, 0)`` and random invertible ``P``."""
    while True:
        p = [[F.random(rng) for _ in range(7)] for _ in range(7)]
        if not F.is_zero(la.det(F, p)):
            break
    d = [F.random_nonzero(rng) for _ in range(6)] + [F.zero]
    dp = [[F.mul(d[i], x) for x in p[i]] for i in range(7)]
    return la.matmul(F, la.transpose(p), dp)


# --- ruling labels ---------------------------------------------------------------------------

def beta_plane_projection(wo: WOModel) -> LinSubspace:
    """p_O(Π) = <e12, e13, e23> in P⁶_O."""
    return LinSubspace.coordinate(wo.field, [PO[lab] for lab in ("12", "13", "23")], 6)


def ext_subspace(s: LinSubspace, E: Field) -> LinSubspace:
    if s.field == E:
        return s
    return LinSubspace(E, embed_rows(s.field, E, s.basis), s.ambient, coerce=False)


def label_points(net: NetOfQuadrics, plane: LinSubspace, points: Sequence[ProjPoint]) -> list[CoveringPoint]:
    """Covering points ``(p, <plane, v_p>)``; the vertex must avoid the plane."""
    out = []
    for p in points:
        E = p.field
        q = net.member(p.coords, E)
        r, vert = rank_vertex(q)
        if r != 6:
            raise GeometryError(f"member at {p} has rank {r}")
        pl = ext_subspace(plane, E)
        if pl.contains_subspace(vert):
            raise GeometryError(f"vertex at {p} lies in the conic plane")
        cp = CoveringPoint(p, pl.join(vert), q, vert)
        cp.check()
        out.append(cp)
    return out


def p3w_labels(m: NodalXModel) -> list[CoveringPoint]:
    """D~: the points p_i with witness P³_W."""
    out = []
    for p in m.p_points:
        q = m.net.member(p.coords, m.ext)
        r, vert = rank_vertex(q)
        cp = CoveringPoint(p, ext_subspace(m.p3w, m.ext), q, vert)
        cp.check()
        out.append(cp)
    return out


def line_of_members_containing(net: NetOfQuadrics, plane: LinSubspace) -> LinSubspace:
    """Members containing ``plane`` (kernel of the restriction map), as a subspace of the net."""
    rows = net.restriction_map(plane)
    ker = la.kernel(plane.field, rows, 3)
    return LinSubspace(plane.field, ker, 2, coerce=False)


def rho_g_point(m: NodalXModel, plane: LinSubspace, rng: SplitMix64 | None = None) -> tuple[LinSubspace, list[CoveringPoint]]:
    """Line L_c of members containing the conic plane, and the six labelled points over Γ6."""
    F = m.field
    lc = line_of_members_containing(m.net, plane)
    if lc.dim != 1:
        raise GeometryError(f"members containing the plane form a space of dimension {lc.dim}, not a line")
    p0, p1 = lc.basis
    restricted = restrict_to_line(m.disc.sextic, p0, p1)
    if restricted.homogeneous_degree != 6 or not is_squarefree_binary(restricted):
        raise GeometryError("L_c does not meet Gamma6 in six distinct points")
    dense, _ = binary_form_to_dense(restricted)
    E = splitting_field(F, dense) if dense else F
    pts = []
    for s, t in binary_roots(restricted.map_field(E), rng):
        coords = [E.add(E.mul(s, embed_raw(F, E, a)), E.mul(t, embed_raw(F, E, b))) for a, b in zip(p0, p1)]
        pts.append(ProjPoint(E, coords, coerce=False))
    return lc, label_points(m.net, plane, pts)


def fiber_conic_plane(m: NodalXModel, a) -> LinSubspace:
    """The plane of the p_W-fiber conic over ``a`` (the P²-bundle fiber)."""
    return m.wo.fiber(a)


# --- verification records --------------------------------------------------------------------

ANCHORS = {
    "cone": "X.cone-at-node",
    "six": "XO.six-nodes",
    "net": "net.discriminant-septic",
    "minrank": "net.rank-at-least-six",
    "vertex": "net.vertex-map",
    "adj": "net.adjugate-rank-one",
    "embed": "net.vertex-map-embedding",
    "rulings": "rulings.beta-conic-parity",
    "rho": "rulings.conic-line-section",
    "star": "WO.conic-bundle-discriminant",
}


def singular_points_xo(m: NodalXModel) -> list[ProjPoint]:
    """s_1..s_6, each checked singular on X_O (Jacobian rank <= 2) and on Q."""
    E = m.ext
    gens = [q.to_poly() for q in (Quadric(g) for g in m.net.generators)]
    gens_e = [g.map_field(E) for g in gens] if E != m.field else gens
    p3 = ext_subspace(m.p3w, E)
    for s in m.s_points:
        if jacobian_rank(gens_e, s) > 2:
            raise GeometryError(f"{s} is not singular on X_O")
        if not p3.contains_point(s) or not E.is_zero(gens_e[2].evaluate(s.coords)):
            raise GeometryError(f"{s} is not on Q")
    if len(set(m.s_points)) != 6:
        raise GeometryError("s_i not distinct")
    return list(m.s_points)


def net_checks(m: NodalXModel, rng: SplitMix64, samples: int = 100, random_mats: int = 200) -> list:
    F, E = m.field, m.ext
    out = []
    out.append(check("omega cone at O", ANCHORS["cone"],
                     all(F.is_zero(m.omega.rows[i][7]) for i in range(8)), attempts=m.attempts))
    try:
        s_pts = singular_points_xo(m)
        ok, why = True, ""
    except GeometryError as exc:
        s_pts, ok, why = [], False, str(exc)
    out.append(check("six singular points on Q with Jacobian rank <= 2", ANCHORS["six"], ok,
                     points=[p.to_text() for p in s_pts], reason=why, extension_degree=getattr(E, "k", 1)))

    d = m.disc
    q, r = d.septic.divmod(d.line)
    on_line = restrict_to_pencil_line(d.septic)
    out.append(check("septic divisible by the pencil line exactly once", ANCHORS["net"],
                     d.septic.homogeneous_degree == 7 and not r.terms and not d.line.divides(q)
                     and not on_line.terms,
                     septic_terms=len(d.septic.terms)))
    out.append(check("Gamma6 sextic smooth", ANCHORS["net"],
                     d.sextic.homogeneous_degree == 6
                     and no_common_projective_zero(d.sextic.gradient(), rng.split(11)).certified,
                     sextic=d.sextic.to_text()))
    six = restrict_to_pencil_line(d.sextic)
    out.append(check("six simple roots on the pencil line", ANCHORS["net"],
                     six.homogeneous_degree == 6 and is_squarefree_binary(six) and len(m.p_points) == 6,
                     roots=[p.to_text() for p in m.p_points]))

    verts, ok = [], True
    try:
        verts = [vertex_map(m.net, d, p) for p in m.p_points]
    except (GeometryError, ArithmeticError):
        ok = False
    out.append(check("vertices of the six members are the six nodes", ANCHORS["vertex"],
                     ok and set(verts) == set(m.s_points) and len(verts) == 6))

    ok, wit = adjugate_rank1_identity(d.adj, d.septic)
    out.append(check("adjugate 2x2 minors divisible by the septic", ANCHORS["adj"], ok, **wit))

    out.append(min_rank_check(m, rng.split(12), samples))
    out.append(adjugate_kernel_check(F, rng.split(13), random_mats))
    out.append(embedding_sample_check(m, rng.split(14), samples))
    return out


def min_rank_check(m: NodalXModel, rng: SplitMix64, samples: int = 100):
    F = m.field
    g6 = sample_curve_points(m.disc.sextic, rng, samples)
    g1 = []
    while len(g1) < samples:
        g1.append(ProjPoint(F, [F.random(rng), F.random(rng), F.zero]))
    ranks_on = [rank_vertex(m.net.member(p.coords))[0] for p in g6 + g1]
    off, ranks_off = 0, []
    while off < samples:
        lam = [F.random(rng) for _ in range(3)]
        if F.is_zero(m.disc.septic.evaluate(lam)) or all(F.is_zero(c) for c in lam):
            continue
        off += 1
        ranks_off.append(m.net.member(lam).rank())
    ranks_six = [rank_vertex(m.net.member(p.coords, m.ext))[0] for p in m.p_points]
    low = [r for r in ranks_on + ranks_off + ranks_six if r <= 5]
    ok = (len(g6) >= samples and all(r == 6 for r in ranks_on) and all(r == 7 for r in ranks_off)
          and all(r == 6 for r in ranks_six) and not low)
    return check("rank 6 on the discriminant, 7 off it", ANCHORS["minrank"], ok,
                 on_curve=len(ranks_on), off_curve=len(ranks_off), rank_le_5=len(low))


def adjugate_kernel_check(F: Field, rng: SplitMix64, count: int = 200):
    bad = 0
    for _ in range(count):
        rows = random_rank6_symmetric(F, rng)
        adj = la.adjugate(F, rows)
        col = next((c for c in la.transpose(adj) if any(not F.is_zero(x) for x in c)), None)
        ker = la.kernel(F, rows, 7)
        if col is None or len(ker) != 1 or ProjPoint(F, col, coerce=False) != ProjPoint(F, ker[0], coerce=False):
            bad += 1
    return check("adjugate column equals kernel on random rank-6 matrices", ANCHORS["vertex"], bad == 0,
                 matrices=count, mismatches=bad)


def embedding_sample_check(m: NodalXModel, rng: SplitMix64, pairs: int = 100):
    F = m.field
    pts = sample_curve_points(m.disc.sextic, rng, pairs + 1)
    verts = [vertex_map(m.net, m.disc, p) for p in pts]
    collisions = [i for i in range(len(pts) - 1) if verts[i] == verts[i + 1]]
    off_p3 = all(not m.p3w.contains_point(v) for v in verts)
    minors = m.wo.twcu_minors()
    on_co = True
    for _ in range(pairs):
        p = ProjPoint(F, [F.random(rng), F.random(rng), F.zero])
        v = vertex_map(m.net, m.disc, p)
        on_co &= all(F.is_zero(f.evaluate(v.coords)) for f in minors) and m.p3w.contains_point(v)
    return check("vertex map separates sampled points", ANCHORS["embed"],
                 len(pts) == pairs + 1 and not collisions and off_p3 and on_co,
                 pairs=len(pts) - 1, collisions=collisions)


def gamma1_section_and_labels(m: NodalXModel, rng: SplitMix64, samples: int = 10) -> list:
    """P³_W over the pencil line, the divisor D~ and the labels of the β-conic."""
    F, E = m.field, m.ext
    out = []
    ok = True
    for _ in range(samples):
        lam = [F.random(rng), F.random(rng), F.zero]
        if all(F.is_zero(c) for c in lam):
            continue
        ok &= contains(m.net.member(lam), m.p3w)
    out.append(check("P3_W isotropic in pencil members", ANCHORS["rulings"], ok, samples=samples))

    plane = beta_plane_projection(m.wo)
    out.append(check("beta-plane projection disjoint from P3_W", ANCHORS["rulings"],
                     plane.intersect(m.p3w).dim == -1))
    d_tilde = p3w_labels(m)
    try:
        labels = label_points(m.net, plane, m.p_points)
    except GeometryError as exc:
        out.append(check("beta-conic labels defined", ANCHORS["rulings"], False, reason=str(exc)))
        return out
    p3e = ext_subspace(m.p3w, E)
    iso, meet, parity = [], [], []
    for dt, lab, s in zip(d_tilde, labels, m.s_points):
        iso.append(contains(lab.quadric, lab.witness) and lab.witness.contains_point(s))
        inter = lab.witness.intersect(p3e)
        meet.append(inter.dim == 0 and inter.contains_point(s))
        parity.append(same_ruling(dt.quadric, dt.witness, lab.witness, vertex=dt.vertex))
    out.append(check("<P, s_i> isotropic in the member at p_i", ANCHORS["rulings"], all(iso), per_point=iso))
    out.append(check("<P, s_i> meets P3_W exactly at s_i", ANCHORS["rulings"], all(meet), per_point=meet))
    out.append(check("<P, s_i> and P3_W in opposite families", ANCHORS["rulings"],
                     not any(parity), same_family=parity))
    lc, cps = rho_g_point(m, plane, rng.split(21))
    gamma1 = LinSubspace.from_equations(F, [[F.zero, F.zero, F.one]], 2)
    out.append(check("members containing the beta-conic plane form the pencil line", ANCHORS["rho"],
                     lc == gamma1 and {c.base for c in cps} == set(m.p_points)))
    return out


def conic_bundle_checks(m: NodalXModel, rng: SplitMix64, samples: int = 50) -> list:
    F = m.field
    lift, rmat, idx = wo_conic_bundle_data(m.wo)
    star, cands = conic_bundle_discriminant(m.omega_o.gram.rows, F, lift, rmat, idx)
    out = [check("Gamma6* sextic smooth", ANCHORS["star"],
                 star.homogeneous_degree == 6
                 and no_common_projective_zero(star.gradient(), rng.split(31)).certified,
                 charts=len(cands), sextic=star.to_text())]
    # charts agree pointwise up to one scalar each; fibers over the curve are singular conics
    agree = True
    ratios = [c.is_proportional(star) for c in cands]
    for _ in range(samples):
        a = [F.random(rng) for _ in range(3)]
        if all(F.is_zero(x) for x in a):
            continue
        base = star.evaluate(a)
        for c, r in zip(cands, ratios):
            agree &= r is not None and c.evaluate(a) == F.mul(r, base)
        agree &= (fiber_conic_rank(m, a) < 3) == F.is_zero(base)
    on = sample_curve_points(star, rng, 20)
    agree &= all(fiber_conic_rank(m, p.coords) == 2 for p in on)
    out.append(check("chart agreement and singular fibers over Gamma6*", ANCHORS["star"], agree,
                     samples=samples, curve_points=len(on)))
    return out
