"""Normal-form W_O, the map to P²_W x P, its (2,2) image and the line incidences.

Coordinates ``x0..x6``; the pencil is ``Ω1 = x0x1 + x2x3 + x4x5`` and
``Ω2 = x1x2 + x3x4 + x5x6``, ``P³_W = <e0, e2, e4, e6>`` and the line
``ℓ = <e2, e4>``. The third quadric is ``Ω_O = x2 λ2(x') + x4 λ4(x') + q(x')``
with ``x' = (x0, x1, x3, x5, x6)``. The net is taken with generators
``(Ω1, -Ω2, Ω_O)``: then the point of the net containing the plane ``<ℓ, x>``
is exactly ``p_ℓ(x)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .exactalg import linalg as la
from .exactalg.fields import ExtensionField, Field, PrimeField, random_irreducible
from .exactalg.linalg import PolyMatrix, ScalarMatrix
from .exactalg.poly import MultiPoly
from .exactalg.resultant import no_common_projective_zero
from .exactalg.rng import SplitMix64, derive_seed
from .exactalg.univariate import (
    binary_form_to_dense, binary_gcd, binary_roots, factor_dense, is_squarefree_binary,
    reduce_binary_forms, splitting_degree,
)
from .netdisc import (
    NetOfQuadrics, conic_bundle_discriminant, discriminant, embed_raw, restrict_to_pencil_line,
    vertex_map,
)
from .projgeom import GeometryError, LinSubspace, ProjPoint, Quadric, contains, rank_vertex
from .records import DegenerateInput, check

XPRIME = (0, 1, 3, 5, 6)
P3W_IDX = (0, 2, 4, 6)
WPROJ = (1, 3, 5)

ANCHORS = {
    "normal": "WO.normal-form",
    "implicit": "verra.implicit-image",
    "disc": "verra.discriminants",
    "dp": "verra.del-pezzo-over-pencil",
    "lines": "verra.line-incidences",
    "fibers": "verra.fiber-conics",
}


class BaseLocus(GeometryError):
    """The rational map is undefined at the given point."""


# --- the normal form ----------------------------------------------------------------------

@dataclass
class NormalFormModel:
    field: Field
    lam2: MultiPoly
    lam4: MultiPoly
    q: MultiPoly

    @property
    def omega1(self) -> MultiPoly:
        x = MultiPoly.gens(self.field, 7)
        return x[0] * x[1] + x[2] * x[3] + x[4] * x[5]

    @property
    def omega2(self) -> MultiPoly:
        x = MultiPoly.gens(self.field, 7)
        return x[1] * x[2] + x[3] * x[4] + x[5] * x[6]

    @property
    def omega_o(self) -> MultiPoly:
        x = MultiPoly.gens(self.field, 7)
        return x[2] * self.lam2 + x[4] * self.lam4 + self.q

    @property
    def quadrics(self) -> list[Quadric]:
        return [Quadric.from_poly(f) for f in (self.omega1, self.omega2, self.omega_o)]

    @property
    def p3w(self) -> LinSubspace:
        return LinSubspace.coordinate(self.field, P3W_IDX, 6)

    @property
    def ell(self) -> LinSubspace:
        return LinSubspace.coordinate(self.field, (2, 4), 6)

    def net(self) -> NetOfQuadrics:
        q1, q2, qo = self.quadrics
        F = self.field
        neg = ScalarMatrix(F, [[F.neg(x) for x in r] for r in q2.gram.rows], symmetric=True, coerce=False)
        return NetOfQuadrics(F, (q1.gram, neg, qo.gram))

    def contains_point(self, x) -> bool:
        coords = x.coords if isinstance(x, ProjPoint) else x
        E = x.field if isinstance(x, ProjPoint) else self.field
        return all(E.is_zero(_ev(f, E, coords)) for f in (self.omega1, self.omega2, self.omega_o))


def _ev(f: MultiPoly, E: Field, coords):
    return f.evaluate(coords) if E == f.field else f.map_field(E).evaluate(coords)


def _random_form_in(F: Field, rng: SplitMix64, idx, degree: int) -> MultiPoly:
    x = MultiPoly.gens(F, 7)
    out = MultiPoly.zero(F, 7)
    for combo in itertools.combinations_with_replacement(idx, degree):
        mono = MultiPoly.const(F, 7, F.random(rng))
        for i in combo:
            mono = mono * x[i]
        out = out + mono
    return out


def build_normal_form(field: Field, seed: int, attempt: int = 0) -> NormalFormModel:
    """Fixed Ω1, Ω2 and a random Ω_O of the required shape."""
    rng = SplitMix64(derive_seed(seed, 0x5645, attempt))
    lam2 = _random_form_in(field, rng, XPRIME, 1)
    lam4 = _random_form_in(field, rng, XPRIME, 1)
    q = _random_form_in(field, rng, XPRIME, 2)
    return NormalFormModel(field, lam2, lam4, q)


def map_pw(m: NormalFormModel, x: ProjPoint) -> ProjPoint:
    c = [x.coords[i] for i in WPROJ]
    if all(x.field.is_zero(v) for v in c):
        raise BaseLocus("p_W undefined on P3_W")
    return ProjPoint(x.field, c, coerce=False)


def pell_forms(m: NormalFormModel) -> list[MultiPoly]:
    x = MultiPoly.gens(m.field, 7)
    return [x[1] * m.lam4 - x[3] * m.lam2, x[3] * m.lam4 - x[5] * m.lam2, x[3] * x[3] - x[1] * x[5]]


def map_pell(m: NormalFormModel, x: ProjPoint) -> ProjPoint:
    E = x.field
    c = [_ev(f, E, x.coords) for f in pell_forms(m)]
    if all(E.is_zero(v) for v in c):
        raise BaseLocus("p_ell undefined at this point")
    return ProjPoint(E, c, coerce=False)


# --- fibers over P²_W ----------------------------------------------------------------------

def conic_bundle_data(F: Field):
    """``lift`` and ``R`` of the P²-bundle over P²_W (see netdisc.conic_bundle_discriminant)."""
    y1, y3, y5 = MultiPoly.gens(F, 3)
    zero = MultiPoly.zero(F, 3)
    lift = [zero] * 7
    lift[1], lift[3], lift[5] = y1, y3, y5
    rmat = [[y1, y3, y5, zero], [zero, y1, y3, y5]]
    return lift, rmat, list(P3W_IDX)


def fiber_plane(m: NormalFormModel, y) -> LinSubspace:
    """Plane of the p_W fiber over ``y``: ``<y~> + (line of P³_W cut by the bilinear rows)``."""
    F = m.field
    y1, y3, y5 = (F.coerce(c) for c in y)
    r = [[y1, y3, y5, F.zero], [F.zero, y1, y3, y5]]
    ker = la.kernel(F, r, 4)
    rows = [[F.zero, y1, F.zero, y3, F.zero, y5, F.zero]]
    for v in ker:
        row = [F.zero] * 7
        for k, i in enumerate(P3W_IDX):
            row[i] = v[k]
        rows.append(row)
    return LinSubspace(F, rows, 6, coerce=False)


def conic_points(q: Quadric, plane: LinSubspace, rng: SplitMix64, count: int, budget: int = 400) -> list[ProjPoint]:
    """Rational points of the conic ``q ∩ plane`` from random secant lines."""
    F = q.field
    g = q.restrict(plane)
    form = Quadric(g).to_poly()
    out: list[ProjPoint] = []
    seen = set()
    for _ in range(budget):
        if len(out) >= count:
            break
        a = [F.random(rng) for _ in range(3)]
        b = [F.random(rng) for _ in range(3)]
        if la.rank(F, [a, b]) < 2:
            continue
        u, v = MultiPoly.gens(F, 2)
        restricted = form.subs([u.scale(ai) + v.scale(bi) for ai, bi in zip(a, b)])
        if not restricted.terms:
            continue
        for s, t in binary_roots(restricted, rng):
            c = [F.add(F.mul(s, ai), F.mul(t, bi)) for ai, bi in zip(a, b)]
            x = [F.zero] * 7
            for k, row in enumerate(plane.basis):
                for j in range(7):
                    x[j] = F.add(x[j], F.mul(c[k], row[j]))
            pt = ProjPoint(F, x, coerce=False)
            if pt not in seen:
                seen.add(pt)
                out.append(pt)
    return out[:count]


def sample_xo_points(m: NormalFormModel, count: int, rng: SplitMix64, per_fiber: int = 1,
                     budget: int | None = None) -> list[tuple[ProjPoint, ProjPoint, ProjPoint]]:
    """``(x, p_W(x), p_ℓ(x))`` for points of X_O on random p_W fibers.

    Fibers without a rational point on the sampled secants are skipped; the
    field is never extended here.
    """
    F = m.field
    qo = m.quadrics[2]
    out = []
    budget = budget or 20 * count
    for _ in range(budget):
        if len(out) >= count:
            break
        y = [F.random(rng) for _ in range(3)]
        if all(F.is_zero(c) for c in y):
            continue
        plane = fiber_plane(m, y)
        if plane.dim != 2:
            continue
        for x in conic_points(qo, plane, rng, per_fiber, budget=8 * per_fiber):
            try:
                out.append((x, map_pw(m, x), map_pell(m, x)))
            except BaseLocus:
                continue
    if len(out) < count:
        raise DegenerateInput(f"only {len(out)} of {count} points of X_O found", ["sample X_O points"])
    for x, _, _ in out:
        if not m.contains_point(x):
            raise ArithmeticError("sampled point is not on X_O")
    return out[:count]


# --- the Verra solid ----------------------------------------------------------------------

BIDEG22 = [e1 + e2 for e1 in
           [tuple(sum(1 for i in c if i == k) for k in range(3))
            for c in itertools.combinations_with_replacement(range(3), 2)]
           for e2 in [tuple(sum(1 for i in c if i == k) for k in range(3))
                      for c in itertools.combinations_with_replacement(range(3), 2)]]


@dataclass
class VerraSolid:
    poly: MultiPoly  # in (y0, y1, y2, z0, z1, z2)

    def __post_init__(self):
        if not self.poly.terms or any(sum(e[:3]) != 2 or sum(e[3:]) != 2 for e in self.poly.terms):
            raise GeometryError("not a nonzero form of bidegree (2, 2)")

    @property
    def field(self) -> Field:
        return self.poly.field

    def coefficients(self) -> list:
        F = self.field
        return [self.poly.terms.get(e, F.zero) for e in BIDEG22]

    def value(self, y, z, E: Field | None = None):
        E = E or self.field
        return _ev(self.poly, E, list(y) + list(z))

    def matrix_in(self, which: int) -> PolyMatrix:
        """Symmetric 3x3 matrix with entries quadratic in the other factor.

        ``which = 1``: ``F = zᵀ N(y) z`` (fibers of the first projection);
        ``which = 2``: ``F = yᵀ M(z) y``.
        """
        F = self.field
        half = F.inv(F.from_int(2))
        inner = slice(3, 6) if which == 1 else slice(0, 3)
        outer = slice(0, 3) if which == 1 else slice(3, 6)
        rows = [[MultiPoly.zero(F, 3) for _ in range(3)] for _ in range(3)]
        for e, c in self.poly.terms.items():
            ie = e[inner]
            idx = [k for k in range(3) for _ in range(ie[k])]
            i, j = idx
            coef = c if i == j else F.mul(c, half)
            mono = MultiPoly(F, 3, {e[outer]: coef}, coerce=False)
            rows[i][j] = rows[i][j] + mono
            if i != j:
                rows[j][i] = rows[j][i] + mono
        return PolyMatrix(rows, symmetric=True)


def implicitize(points: list[tuple], F: Field) -> tuple[VerraSolid | None, int, int]:
    """Kernel of the 36-monomial evaluation matrix at ``(y, z)`` pairs; returns (T, nullity, rank)."""
    rows = []
    for _, y, z in points:
        vals = list(y.coords) + list(z.coords)
        row = []
        for e in BIDEG22:
            acc = F.one
            for v, k in zip(vals, e):
                if k:
                    acc = F.mul(acc, F.pow(v, k))
            row.append(acc)
        rows.append(row)
    ker = la.kernel(F, rows, len(BIDEG22))
    r = la.rank(F, rows)
    if len(ker) != 1:
        return None, len(ker), r
    poly = MultiPoly(F, 6, {e: c for e, c in zip(BIDEG22, ker[0]) if not F.is_zero(c)}, coerce=False)
    return VerraSolid(poly), 1, r


def verra_discriminants(t: VerraSolid) -> tuple[MultiPoly, MultiPoly]:
    d1 = la.bareiss_det(t.matrix_in(1).rows)
    d2 = la.bareiss_det(t.matrix_in(2).rows)
    if not d1.terms or not d2.terms:
        raise DegenerateInput("conic bundle discriminant vanishes identically", ["discriminants nonzero"])
    return d1, d2


# --- the assembled instance ----------------------------------------------------------------

@dataclass
class VerraInstance:
    model: NormalFormModel
    net: NetOfQuadrics
    gamma6: MultiPoly
    gamma6_star: MultiPoly
    solid: VerraSolid
    ext: Field
    p_points: list
    s_points: list
    samples: list
    nullity: int
    eval_rank: int
    attempts: int = 1
    failures: list = dc_field(default_factory=list)


def _lines_split(m: NormalFormModel, E: Field, s_points) -> bool:
    return all(E.is_square(q_disc) for q_disc in (_tangent_cone_disc(m, E, s) for s in s_points))


def _tangent_directions(m: NormalFormModel, E: Field, s: ProjPoint):
    """Gram of Q on P³_W over ``E``, the 4-vector of ``s`` and two tangent directions."""
    F = m.field
    qo = m.quadrics[2].gram.rows
    g = [[embed_raw(F, E, qo[i][j]) for j in P3W_IDX] for i in P3W_IDX]
    w = [s.coords[i] for i in P3W_IDX]
    gw = [sum_e(E, [E.mul(g[i][j], w[j]) for j in range(4)]) for i in range(4)]
    tan = la.kernel(E, [gw], 4)
    dirs = [d for d in tan if la.rank(E, [w, d]) == 2]
    basis = []
    for d in dirs:
        if la.rank(E, [w] + basis + [d]) == len(basis) + 2:
            basis.append(d)
        if len(basis) == 2:
            break
    return g, w, basis


def sum_e(E: Field, vals):
    acc = E.zero
    for v in vals:
        acc = E.add(acc, v)
    return acc


def _qform(E, g, u, v):
    return sum_e(E, [E.mul(u[i], E.mul(g[i][j], v[j])) for i in range(4) for j in range(4)])


def _tangent_cone_disc(m: NormalFormModel, E: Field, s: ProjPoint):
    g, w, (d1, d2) = _tangent_directions(m, E, s)
    a, b, c = _qform(E, g, d1, d1), _qform(E, g, d1, d2), _qform(E, g, d2, d2)
    return E.sub(E.mul(b, b), E.mul(a, c))


def _field_with_roots(F: PrimeField, dense: list, k: int, rng: SplitMix64):
    if k == 1:
        return F
    for g, _ in factor_dense(F, dense):
        if len(g) - 1 == k:
            return ExtensionField(F.p, g, small_ok=True)
    return ExtensionField(F.p, random_irreducible(F.p, k, rng), small_ok=True)


def _six_points(net: NetOfQuadrics, gamma6: MultiPoly, E: Field):
    F = net.field
    on_line = restrict_to_pencil_line(gamma6)
    pts = [ProjPoint(E, [a, b, E.zero], coerce=False) for a, b in binary_roots(on_line.map_field(E)
                                                                            if E != F else on_line)]
    return pts


def build_verra_instance(F: PrimeField, seed: int, budget: int = 16, npoints: int = 60) -> VerraInstance:
    """Normal-form instance passing the genericity checklist, resampled up to ``budget`` times."""
    failures = []
    for attempt in range(1, budget + 1):
        rng = SplitMix64(derive_seed(seed, 0x5645_5252, attempt))
        try:
            inst = _try_instance(F, seed, attempt, rng, npoints)
        except DegenerateInput as exc:
            failures.append({"attempt": attempt, "failed": exc.failed_checks, "reason": str(exc)})
            continue
        inst.attempts = attempt
        inst.failures = failures
        return inst
    raise DegenerateInput(f"no generic normal-form instance within budget {budget}",
                          sorted({f for x in failures for f in x["failed"]}), budget)


def _try_instance(F: PrimeField, seed: int, attempt: int, rng: SplitMix64, npoints: int) -> VerraInstance:
    return verra_instance_from_model(build_normal_form(F, seed, attempt), rng, npoints)


def verra_instance_from_model(m: NormalFormModel, rng: SplitMix64, npoints: int = 60) -> VerraInstance:
    """Run the genericity checklist on a given Ω_O and assemble the instance."""
    F = m.field
    if not isinstance(F, PrimeField):
        raise DegenerateInput("the normal-form pipeline needs a prime field", ["prime field"])
    qo = m.quadrics[2]
    if qo.restrict(m.p3w).rank() != 4:
        raise DegenerateInput("Q singular", ["Q smooth"])
    net = m.net()
    disc = discriminant(net)
    on_line = restrict_to_pencil_line(disc.sextic)
    if on_line.homogeneous_degree != 6 or not is_squarefree_binary(on_line):
        raise DegenerateInput("Gamma6 not transverse to the pencil line", ["pencil line transverse to Gamma6"])
    if not no_common_projective_zero(disc.sextic.gradient(), rng.split(1)).certified:
        raise DegenerateInput("Gamma6 smoothness not certified", ["Gamma6 smooth"])
    lift, rmat, idx = conic_bundle_data(F)
    star, _ = conic_bundle_discriminant(qo.gram.rows, F, lift, rmat, idx)
    if not no_common_projective_zero(star.gradient(), rng.split(2)).certified:
        raise DegenerateInput("Gamma6* smoothness not certified", ["Gamma6* smooth"])
    pts = sample_xo_points(m, npoints, rng.split(3))
    solid, nullity, r = implicitize(pts, F)
    if solid is None:
        raise DegenerateInput(f"implicitization nullity {nullity}", ["implicitization nullity 1"])
    # field carrying the six points and the rulings of Q through them
    dense, _ = binary_form_to_dense(on_line)
    k, _ = splitting_degree(F, dense)
    E = _field_with_roots(F, dense, k, rng.split(4))
    p_pts = _six_points(net, disc.sextic, E)
    s_pts = [vertex_map(net, disc, p) for p in p_pts]
    if not _lines_split(m, E, s_pts):
        E = ExtensionField(F.p, random_irreducible(F.p, 2 * k, rng.split(5)), small_ok=True)
        p_pts = _six_points(net, disc.sextic, E)
        s_pts = [vertex_map(net, disc, p) for p in p_pts]
    return VerraInstance(m, net, disc.sextic, star, solid, E, p_pts, s_pts, pts, nullity, r)


# --- lines of Q through the nodes and their images ----------------------------------------------

@dataclass
class ImageCurve:
    """Closure of the image of a line of Q: ``(y(T), z(T))`` with common factors removed."""

    y: list  # binary forms over E
    z: list

    @property
    def bidegree(self) -> tuple[int, int]:
        return (_deg(self.y), _deg(self.z))


def _deg(forms):
    return max(f.homogeneous_degree for f in forms if f.terms)


def lines_through(m: NormalFormModel, E: Field, s: ProjPoint) -> list[list]:
    """The two lines of Q through ``s`` as (s, d) pairs of 7-vectors over ``E``."""
    g, w, (d1, d2) = _tangent_directions(m, E, s)
    u, v = MultiPoly.gens(E, 2)
    a, b, c = _qform(E, g, d1, d1), _qform(E, g, d1, d2), _qform(E, g, d2, d2)
    binary = u * u.scale(a) + u * v.scale(E.add(b, b)) + v * v.scale(c)
    out = []
    for al, be in binary_roots(binary):
        d4 = [E.add(E.mul(al, x), E.mul(be, y)) for x, y in zip(d1, d2)]
        d7 = [E.zero] * 7
        for k, i in enumerate(P3W_IDX):
            d7[i] = d4[k]
        out.append([list(s.coords), d7])
    if len(out) != 2:
        raise GeometryError("lines of Q through the node are not defined over the working field")
    return out


def image_of_line(m: NormalFormModel, E: Field, line) -> ImageCurve:
    """Strict-transform image of a line ``T0 s + T1 d`` of Q under (p_W, p_ℓ)."""
    F = m.field
    t0, t1 = MultiPoly.gens(E, 2)
    x = [t0.scale(a) + t1.scale(b) for a, b in zip(*line)]
    u = [x[0], x[2], x[4]]
    v = [x[2], x[4], x[6]]
    y = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
    y = reduce_binary_forms(y)
    sub = [MultiPoly.zero(E, 2)] * 7
    sub[0], sub[6] = x[0], x[6]
    lam2 = m.lam2.map_field(E).subs(sub) if E != F else m.lam2.subs(sub)
    lam4 = m.lam4.map_field(E).subs(sub) if E != F else m.lam4.subs(sub)
    z = [y[0] * lam4 - y[1] * lam2, y[1] * lam4 - y[2] * lam2, MultiPoly.zero(E, 2)]
    if all(not f.terms for f in z):
        raise GeometryError("image of the line is not determined to first order")
    z = reduce_binary_forms(z)
    return ImageCurve(y, z)


def curve_on_solid(t: VerraSolid, E: Field, c: ImageCurve) -> bool:
    poly = t.poly.map_field(E) if E != t.field else t.poly
    return not poly.subs(list(c.y) + list(c.z)).terms


def _const_point(E: Field, forms) -> ProjPoint | None:
    if _deg(forms) != 0:
        return None
    return ProjPoint(E, [f.terms.get((0, 0), E.zero) for f in forms], coerce=False)


def _point_at(E: Field, forms, s, t) -> list:
    return [f.evaluate((s, t)) if f.terms else E.zero for f in forms]


def line_incidences(inst: VerraInstance):
    """Images of the two lines of Q through each node; returns (plus, minus, matrix, notes)."""
    m, E = inst.model, inst.ext
    plus, minus, notes = [], [], []
    for p, s in zip(inst.p_points, inst.s_points):
        imgs = [image_of_line(m, E, ln) for ln in lines_through(m, E, s)]
        const = [_const_point(E, c.z) for c in imgs]
        if sum(c is not None for c in const) != 1:
            raise GeometryError("exactly one line through each node should map into a fiber over the net")
        k = 0 if const[0] is not None else 1
        plus.append(imgs[k])
        minus.append(imgs[1 - k])
        notes.append({"fiber_point_is_p_i": const[k] == p})
    mat = [[int(_meets(E, mi, pj)) for pj in plus] for mi in minus]
    return plus, minus, mat, notes


def _fiber_contacts(E: Field, minus: ImageCurve, plus: ImageCurve) -> tuple[int, int]:
    """Intersection of the minus-curve with the fiber over the plus-curve's net point.

    Returns (points on the plus line, remaining points), counted as degrees of
    binary gcds so that conjugate points are included.
    """
    zp = _const_point(E, plus.z)
    # T with z(T) proportional to zp: 2x2 minors of [z(T); zp] vanish
    eqs = [minus.z[i].scale(zp.coords[j]) - minus.z[j].scale(zp.coords[i]) for i, j in ((0, 1), (0, 2), (1, 2))]
    if not any(f.terms for f in eqs):
        return 0, 0
    g = binary_gcd(eqs)
    a = _point_at(E, plus.y, E.one, E.zero)
    b = _point_at(E, plus.y, E.zero, E.one)
    # y(T) on the plus line: det[y(T), a, b], a binary form of degree <= 1
    cof = [E.sub(E.mul(a[1], b[2]), E.mul(a[2], b[1])), E.sub(E.mul(a[2], b[0]), E.mul(a[0], b[2])),
           E.sub(E.mul(a[0], b[1]), E.mul(a[1], b[0]))]
    h = MultiPoly.zero(E, 2)
    for f, c in zip(minus.y, cof):
        if f.terms:
            h = h + f.scale(c)
    on = binary_gcd([g, h]).homogeneous_degree if h.terms else g.homogeneous_degree
    return on, g.homogeneous_degree - on


def _meets(E: Field, minus: ImageCurve, plus: ImageCurve) -> bool:
    return _fiber_contacts(E, minus, plus)[0] > 0


# --- checks ---------------------------------------------------------------------------------

def verra_checks(inst: VerraInstance, rng: SplitMix64, fresh: int = 200, smooth_samples: int = 100) -> list:
    F = inst.model.field
    m, t = inst.model, inst.solid
    out = []
    q1, q2, qo = m.quadrics
    r1, v1 = rank_vertex(q1)
    r2, v2 = rank_vertex(q2)
    out.append(check("pencil quadrics of rank 6 with vertices e6, e0, containing P3_W", ANCHORS["normal"],
                     r1 == 6 and r2 == 6
                     and v1 == LinSubspace.coordinate(F, [6], 6) and v2 == LinSubspace.coordinate(F, [0], 6)
                     and contains(q1, m.p3w) and contains(q2, m.p3w)
                     and all(contains(q, m.ell) for q in (q1, q2, qo))))
    out.append(_shared_invariants(inst))

    out.append(check("implicitization nullity 1", ANCHORS["implicit"], inst.nullity == 1,
                     points=len(inst.samples), rank=inst.eval_rank, attempts=inst.attempts))
    new = sample_xo_points(m, fresh, rng.split(1))
    vanish = all(F.is_zero(t.value(y.coords, z.coords)) for _, y, z in new)
    out.append(check("(2,2) form vanishes at fresh image points", ANCHORS["implicit"], vanish,
                     fresh=len(new), coefficients=[F.to_text(c) for c in t.coefficients()]))
    again, nul2, _ = implicitize(sample_xo_points(m, len(inst.samples), rng.split(2)), F)
    out.append(check("independent sample gives a proportional form", ANCHORS["implicit"],
                     again is not None and again.poly.is_proportional(t.poly) is not None))
    grads = t.poly.gradient()
    smooth = all(any(not F.is_zero(g.evaluate(list(y.coords) + list(z.coords))) for g in grads)
                 for _, y, z in new[:smooth_samples])
    out.append(check("image smooth at sampled points", ANCHORS["implicit"], smooth, samples=smooth_samples))
    out.append(_fiber_conic_check(inst, rng.split(3)))

    d1, d2 = verra_discriminants(t)
    sm = [no_common_projective_zero(d.gradient(), rng.split(4 + i)).certified for i, d in enumerate((d1, d2))]
    out.append(check("both discriminants smooth sextics", ANCHORS["disc"],
                     d1.homogeneous_degree == 6 and d2.homogeneous_degree == 6 and all(sm),
                     disc1=d1.to_text(), disc2=d2.to_text()))
    r_star = d1.is_proportional(inst.gamma6_star)
    r_six = d2.is_proportional(inst.gamma6)
    out.append(check("first discriminant proportional to Gamma6*", ANCHORS["disc"], r_star is not None,
                     scalar=F.to_text(r_star) if r_star is not None else None))
    out.append(check("second discriminant proportional to Gamma6", ANCHORS["disc"], r_six is not None,
                     scalar=F.to_text(r_six) if r_six is not None else None))
    out.extend(_del_pezzo_checks(inst, d2))
    out.extend(_incidence_checks(inst))
    return out


def _shared_invariants(inst: VerraInstance):
    """Vertex curve a twisted cubic inside P³_W; every pencil member of rank 6."""
    F = inst.model.field
    q1, q2, _ = inst.model.quadrics
    u, v = MultiPoly.gens(F, 2)
    rows = [[u.scale(a) + v.scale(b) for a, b in zip(r1, r2)] for r1, r2 in zip(q1.gram.rows, q2.gram.rows)]
    adj = la.cofactor_adjugate(rows)
    entries = [e for r in adj for e in r if e.terms]
    rank6 = bool(entries) and binary_gcd(entries).homogeneous_degree == 0
    col = next(c for c in la.transpose(adj) if any(e.terms for e in c))
    col = reduce_binary_forms(col)
    cubic = (_deg(col) == 3 and all(not col[i].terms for i in WPROJ)
             and la.rank(F, [[f.terms.get((a, 3 - a), F.zero) for a in range(4)] for f in col if f.terms]) == 4)
    return check("pencil of rank 6 with a twisted cubic of vertices in P3_W", ANCHORS["normal"], rank6 and cubic)


def _fiber_conic_check(inst: VerraInstance, rng: SplitMix64):
    """Points of one p_W fiber map to a conic of the net plane."""
    m = inst.model
    F = m.field
    for _ in range(20):
        y = [F.random(rng) for _ in range(3)]
        pts = conic_points(m.quadrics[2], fiber_plane(m, y), rng, 12)
        if len(pts) >= 8:
            break
    zs = []
    for x in pts:
        try:
            zs.append(map_pell(m, x).coords)
        except BaseLocus:
            pass
    mons = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    rows = [[F.mul(F.pow(z[0], e[0]), F.mul(F.pow(z[1], e[1]), F.pow(z[2], e[2]))) for e in mons] for z in zs]
    nul = 6 - la.rank(F, rows) if rows else 6
    return check("a p_W fiber maps onto a conic of the net", ANCHORS["fibers"], len(zs) >= 8 and nul == 1,
                 points=len(zs), nullity=nul)


def _del_pezzo_checks(inst: VerraInstance, d2: MultiPoly) -> list:
    F, E = inst.model.field, inst.ext
    binary = restrict_to_pencil_line(d2)
    ok_simple = binary.homogeneous_degree == 6 and is_squarefree_binary(binary)
    roots_e = binary_roots(binary.map_field(E) if E != F else binary)
    rset = {ProjPoint(E, [a, b, E.zero], coerce=False) for a, b in roots_e}
    out = [check("six simple reducible fibers over the pencil line", ANCHORS["dp"], ok_simple and len(rset) == 6)]
    out.append(check("reducible fibers lie over the six points p_i", ANCHORS["dp"], rset == set(inst.p_points),
                     points=[p.to_text() for p in inst.p_points]))
    mz = inst.solid.matrix_in(2)
    ranks, split = [], []
    for p in inst.p_points:
        mat = [[_ev(e, E, p.coords) for e in r] for r in mz.rows]
        q = Quadric(ScalarMatrix(E, mat, symmetric=True, coerce=False))
        r, vert = rank_vertex(q)
        ranks.append(r)
        # restrict to a line missing the vertex; two distinct E-roots means two E-lines
        comp = [row for row in la.kernel(E, list(vert.basis), 3)]
        binq = q.restrict(LinSubspace(E, comp[:2], 2, coerce=False)) if len(comp) >= 2 else None
        if binq is not None and r == 2:
            a, b, c = binq.rows[0][0], binq.rows[0][1], binq.rows[1][1]
            split.append(E.is_square(E.sub(E.mul(b, b), E.mul(a, c))))
    out.append(check("each reducible fiber is a pair of distinct lines", ANCHORS["dp"], all(r == 2 for r in ranks),
                     ranks=ranks, split_over_working_field=split))
    return out


def _incidence_checks(inst: VerraInstance) -> list:
    E = inst.ext
    try:
        plus, minus, mat, notes = line_incidences(inst)
    except GeometryError as exc:
        return [check("line images and incidences", ANCHORS["lines"], False, reason=str(exc))]
    on = all(curve_on_solid(inst.solid, E, c) for c in plus + minus)
    bid_minus = [c.bidegree for c in minus]
    bid_plus = [c.bidegree for c in plus]
    out = [check("line images lie on the (2,2) hypersurface", ANCHORS["lines"], on)]
    # the minus images cover the pencil line; the plus images sit in one fiber over it
    onto_lines = all(b[0] == 1 and b[1] >= 1 and not c.z[2].terms for b, c in zip(bid_minus, minus))
    out.append(check("both projections map each line image onto a line", ANCHORS["lines"],
                     onto_lines and all(b == (1, 0) for b in bid_plus) and all(n["fiber_point_is_p_i"] for n in notes),
                     minus_bidegrees=bid_minus, plus_bidegrees=bid_plus))
    diag = [_fiber_contacts(E, minus[i], plus[i]) for i in range(6)]
    out.append(check("over p_i the minus image meets only the other fiber component", ANCHORS["lines"],
                     all(on == 0 and off >= 1 for on, off in diag), contacts=[list(d) for d in diag]))
    expected = [[int(i != j) for j in range(6)] for i in range(6)]
    out.append(check("incidence matrix is J - I", ANCHORS["lines"], mat == expected, matrix=mat))
    return out
