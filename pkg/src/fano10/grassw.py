"""The fourfold W = G(2, V5) ∩ P7, its projection W_O from the node O = [e45],
the vertex cubic C_O, the P²-bundle over P²_W and the hyperplane fibers M_{V4}.

Coordinates on P9 = P(∧²V5) follow the basis ``B_LABELS``; V8 drops the
dependent coordinates ``x25 = -x14`` and ``x15 = -x34``; P⁶_O = P(V8/<e45>)
uses ``PO_LABELS``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactalg import linalg as la
from .exactalg.fields import QQ, Field, GF
from .exactalg.linalg import PolyMatrix
from .exactalg.poly import MultiPoly
from .exactalg.resultant import no_common_projective_zero
from .exactalg.rng import SplitMix64
from .exactalg.univariate import binary_form_to_dense, ugcd, utrim
from .projgeom import GeometryError, LinSubspace, NotOnVariety, ProjPoint, Quadric, rank_vertex
from .records import Check, check

B_LABELS = ("12", "13", "14", "15", "23", "24", "25", "34", "35", "45")
V8_LABELS = ("12", "13", "14", "23", "24", "34", "35", "45")
PO_LABELS = ("12", "13", "14", "23", "24", "34", "35")
B = {lab: i for i, lab in enumerate(B_LABELS)}
V8 = {lab: i for i, lab in enumerate(V8_LABELS)}
PO = {lab: i for i, lab in enumerate(PO_LABELS)}
PI_LABELS = ("12", "13", "23")


def plucker_quadrics(field: Field) -> list[MultiPoly]:
    """The five 4x4 Pfaffians; entry ``m - 1`` omits the index ``m``."""
    x = MultiPoly.gens(field, 10)
    out = []
    for m in range(1, 6):
        i, j, k, l = [a for a in range(1, 6) if a != m]
        v = lambda a, b: x[B[f"{a}{b}"]]  # noqa: E731
        out.append(v(i, j) * v(k, l) - v(i, k) * v(j, l) + v(i, l) * v(j, k))
    return out


def v8_linear_forms(field: Field) -> list[MultiPoly]:
    x = MultiPoly.gens(field, 10)
    return [x[B["14"]] + x[B["25"]], x[B["15"]] + x[B["34"]]]


def orbit4_param_symbolic(field: Field) -> list[MultiPoly]:
    """Coordinates in ``B`` of the dense-orbit chart, as polynomials in (u, v, x, y)."""
    u, v, x, y = MultiPoly.gens(field, 4)
    one = MultiPoly.const(field, 4, 1)
    return [-(u * x) - v * v, u * u - v * y, -v, u, u * v + x * y, x, v, -u, y, one]


def orbit4_param(u, v, x, y, field: Field = QQ) -> ProjPoint:
    pt = (field.coerce(u), field.coerce(v), field.coerce(x), field.coerce(y))
    return ProjPoint(field, [f.evaluate(pt) for f in orbit4_param_symbolic(field)], coerce=False)


def v8_to_b(field: Field, coords) -> list:
    """Lift V8 coordinates to ``B`` using ``x25 = -x14``, ``x15 = -x34``."""
    c = dict(zip(V8_LABELS, coords))
    c["25"] = field.neg(c["14"])
    c["15"] = field.neg(c["34"])
    return [c[lab] for lab in B_LABELS]


def b_to_po(coords) -> list:
    c = dict(zip(B_LABELS, coords))
    return [c[lab] for lab in PO_LABELS]


@dataclass(frozen=True)
class WModel:
    field: Field
    plucker: tuple
    linear: tuple
    o4_param: tuple

    @property
    def equations(self) -> list[MultiPoly]:
        return list(self.plucker) + list(self.linear)

    def contains(self, pt: ProjPoint) -> bool:
        return all(self.field.is_zero(f.evaluate(pt.coords)) for f in self.equations)

    @property
    def beta_plane(self) -> LinSubspace:
        return LinSubspace.coordinate(self.field, [B[lab] for lab in PI_LABELS], 9)

    def c_u(self) -> MultiPoly:
        """The conic of kernels of the pencil in P(V5): x1² - x2 x3 (with x4 = x5 = 0).

        The kernel of l(e1*∧e4* + e2*∧e5*) + m(e1*∧e5* + e3*∧e4*) is
        (lm, -m², -l², 0, 0); its dual conic in the beta-plane is
        x23² + 4 x12 x13 = 0, the closed orbit.
        """
        x = MultiPoly.gens(self.field, 5)
        return x[0] * x[0] - x[1] * x[2]


def build_w(field: Field = QQ) -> WModel:
    """Equations of W; the dense-orbit chart is checked against them symbolically."""
    if field.characteristic in (2, 3):
        raise GeometryError("characteristic 2 and 3 are not supported")
    model = WModel(field, tuple(plucker_quadrics(field)), tuple(v8_linear_forms(field)),
                   tuple(orbit4_param_symbolic(field)))
    param = list(model.o4_param)
    for k, f in enumerate(model.equations):
        if f.subs(param).terms:
            raise ArithmeticError(f"equation {k} does not vanish on the dense-orbit chart")
    return model


def orbit_classify(w: WModel, pt: ProjPoint) -> str:
    if not w.contains(pt):
        raise NotOnVariety("point is not on W")
    F = w.field
    c = dict(zip(B_LABELS, pt.coords))
    in_pi = all(F.is_zero(c[lab]) for lab in B_LABELS if lab not in PI_LABELS)
    if in_pi:
        val = F.add(F.mul(c["23"], c["23"]), F.mul(F.from_int(4), F.mul(c["12"], c["13"])))
        return "O1" if F.is_zero(val) else "O2"
    if F.is_zero(c["45"]):
        return "O3"
    return "O4"


def tangent_space(w: WModel, pt: ProjPoint) -> LinSubspace:
    """Projective tangent space of W at a point of the dense orbit (Jacobian kernel)."""
    if orbit_classify(w, pt) != "O4":
        raise GeometryError("tangent space requested off the dense orbit")
    F = w.field
    jac = [[f.diff(i).evaluate(pt.coords) for i in range(10)] for f in w.equations]
    r = la.rank(F, jac)
    if r != 5:
        raise GeometryError(f"Jacobian rank {r} != 5 on the dense orbit")
    return LinSubspace(F, la.kernel(F, jac, 10), 9, coerce=False)


def tangent_equations_at_node(field: Field) -> list[list]:
    """x12 = x13 = x23 = x14 + x25 = x15 + x34 = 0 as coefficient rows on ``B``."""
    rows = []
    for labs in (("12",), ("13",), ("23",), ("14", "25"), ("15", "34")):
        r = [0] * 10
        for lab in labs:
            r[B[lab]] = 1
        rows.append([field.coerce(c) for c in r])
    return rows


def o3_witness(w: WModel, rng: SplitMix64, budget: int = 64) -> ProjPoint:
    """A point of O3 found by search: pick ``a``, then ``b`` with ``a∧b`` on W and x45 = 0."""
    F = w.field
    for _ in range(budget):
        a = [F.random(rng) for _ in range(5)]
        a1, a2, a3, a4, a5 = a
        # linear conditions on b: both skew forms vanish on (a, b), and a4 b5 - a5 b4 = 0
        rows = [
            [F.neg(a4), F.neg(a5), F.zero, a1, a2],
            [F.neg(a5), F.zero, F.neg(a4), a3, a1],
            [F.zero, F.zero, F.zero, F.neg(a5), a4],
        ]
        for b in la.kernel(F, rows, 5):
            x = [F.zero] * 10
            for i in range(1, 6):
                for j in range(i + 1, 6):
                    x[B[f"{i}{j}"]] = F.sub(F.mul(a[i - 1], b[j - 1]), F.mul(a[j - 1], b[i - 1]))
            if all(F.is_zero(c) for c in x):
                continue
            pt = ProjPoint(F, x, coerce=False)
            if w.contains(pt) and orbit_classify(w, pt) == "O3":
                return pt
    raise GeometryError("no O3 point found within budget")


def gamma_w_poly(w: WModel, v1) -> MultiPoly:
    """Quadric of W attached to [V1]: sum over m of (-1)^(5-m) v_m Pf_m, on V8 coordinates."""
    F = w.field
    v1 = [F.coerce(c) for c in v1]
    total = MultiPoly.zero(F, 10)
    for m in range(5):
        if not F.is_zero(v1[m]):
            c = v1[m] if (4 - m) % 2 == 0 else F.neg(v1[m])
            total = total + w.plucker[m].scale(c)
    return total.subs(_v8_images(F))


def _v8_images(F: Field) -> list[MultiPoly]:
    y = MultiPoly.gens(F, 8)
    c = dict(zip(V8_LABELS, y))
    c["25"] = -c["14"]
    c["15"] = -c["34"]
    return [c[lab] for lab in B_LABELS]


def gamma_w(w: WModel, v1) -> Quadric:
    return Quadric.from_poly(gamma_w_poly(w, v1))


def v8_poly_to_po(f: MultiPoly) -> MultiPoly:
    """Drop the x45 variable (which must not occur) from a V8 polynomial."""
    return f.select_vars([V8[lab] for lab in PO_LABELS])


# --- the projection W_O ------------------------------------------------------------------

@dataclass(frozen=True)
class WOModel:
    field: Field
    pencil: tuple  # the two quadrics as MultiPoly on PO coordinates

    @property
    def quadrics(self) -> tuple[Quadric, Quadric]:
        return Quadric.from_poly(self.pencil[0]), Quadric.from_poly(self.pencil[1])

    @property
    def p3w(self) -> LinSubspace:
        return LinSubspace.coordinate(self.field, [PO[lab] for lab in ("14", "24", "34", "35")], 6)

    def p3w_equations(self) -> list[list]:
        F = self.field
        return [[F.one if j == PO[lab] else F.zero for j in range(7)] for lab in PI_LABELS]

    def c_o_symbolic(self) -> list[MultiPoly]:
        """C_O(s, t): x14 = s²t, x24 = s³, x34 = st², x35 = -t³, others 0."""
        F = self.field
        s, t = MultiPoly.gens(F, 2)
        zero = MultiPoly.zero(F, 2)
        c = {"12": zero, "13": zero, "23": zero, "14": s * s * t, "24": s ** 3, "34": s * t * t, "35": -(t ** 3)}
        return [c[lab] for lab in PO_LABELS]

    def c_o_point(self, s, t) -> ProjPoint:
        F = self.field
        s, t = F.coerce(s), F.coerce(t)
        return ProjPoint(F, [f.evaluate((s, t)) for f in self.c_o_symbolic()], coerce=False)

    def twcu_matrix(self) -> PolyMatrix:
        """The 2x3 matrix whose rank <= 1 locus is C_O."""
        F = self.field
        x = dict(zip(PO_LABELS, MultiPoly.gens(F, 7)))
        return PolyMatrix([[x["14"], x["34"], -x["35"]], [x["24"], x["14"], x["34"]]])

    def twcu_minors(self) -> list[MultiPoly]:
        m = self.twcu_matrix().rows
        return [m[0][i] * m[1][j] - m[0][j] * m[1][i] for i, j in ((0, 1), (0, 2), (1, 2))]

    def pencil_member(self, lam) -> Quadric:
        F = self.field
        l0, l1 = (F.coerce(c) for c in lam)
        return Quadric.from_poly(self.pencil[0].scale(l0) + self.pencil[1].scale(l1))

    def pencil_vertex(self, lam) -> ProjPoint:
        r, vert = rank_vertex(self.pencil_member(lam))
        if r != 6:
            raise GeometryError(f"pencil member of rank {r}")
        return vert.points()[0]

    def contains_point(self, pt) -> bool:
        coords = pt.coords if isinstance(pt, ProjPoint) else pt
        return all(self.field.is_zero(q.evaluate(coords)) for q in self.pencil)

    # the P²-bundle -------------------------------------------------------------------------
    def bundle_matrix(self) -> PolyMatrix:
        """5x7 matrix in a = (a12, a13, a23): the three 2x2 minors of the incidence
        relation followed by the two bilinear equations of the strict transform."""
        F = self.field
        a12, a13, a23 = MultiPoly.gens(F, 3)
        zero = MultiPoly.zero(F, 3)

        def row(**coeffs):
            return [coeffs.get(f"x{lab}", zero) for lab in PO_LABELS]

        return PolyMatrix([
            row(x13=a12, x12=-a13),
            row(x23=a12, x12=-a23),
            row(x23=a13, x13=-a23),
            row(x34=a12, x24=-a13, x14=a23),
            row(x35=a12, x14=a13, x34=-a23),
        ])

    def fiber(self, a) -> LinSubspace:
        F = self.field
        a = [F.coerce(c) for c in a]
        m = self.bundle_matrix().evaluate(a)
        return LinSubspace(F, la.kernel(F, m.rows, 7), 6, coerce=False)

    def strict_p3w_fiber(self, a) -> LinSubspace:
        """Fiber over ``a`` of the strict transform of P³_W: the bilinear rows on P³_W."""
        F = self.field
        m = self.bundle_matrix().evaluate([F.coerce(c) for c in a]).rows[3:]
        eqs = m + self.p3w_equations()
        return LinSubspace.from_equations(F, eqs, 6)


def project_from_node(w: WModel) -> WOModel:
    """W_O in P⁶_O: the quadrics through W singular at O, from V1 = <e5> and <e4>."""
    F = w.field
    q1 = v8_poly_to_po(gamma_w_poly(w, [0, 0, 0, 0, 1]))
    q2 = v8_poly_to_po(gamma_w_poly(w, [0, 0, 0, 1, 0]))
    x = dict(zip(PO_LABELS, MultiPoly.gens(F, 7)))
    ref1 = x["12"] * x["34"] - x["13"] * x["24"] + x["14"] * x["23"]
    ref2 = x["12"] * x["35"] + x["13"] * x["14"] - x["34"] * x["23"]
    if q1.is_proportional(ref1) is None or q2.is_proportional(ref2) is None:
        raise ArithmeticError("quadrics through W singular at O differ from the pencil")
    wo = WOModel(F, (ref1, ref2))
    projected = [f for f in b_to_po(list(w.o4_param))]
    for q in wo.pencil:
        if q.subs(projected).terms:
            raise ArithmeticError("projected dense-orbit chart is not on W_O")
    return wo


def mv4_equations(field: Field, b) -> list[list]:
    """The five linear equations of M_{V4} for V4 = (b1 x1 + b2 x2 + b3 x3 = 0), on PO coordinates."""
    F = field
    b1, b2, b3 = (F.coerce(c) for c in b)

    def row(**coeffs):
        return [coeffs.get(f"x{lab}", F.zero) for lab in PO_LABELS]

    return [
        row(x14=b1, x24=b2, x34=b3),
        row(x34=F.neg(b1), x14=F.neg(b2), x35=b3),
        row(x12=b2, x13=b3),
        row(x12=b1, x23=F.neg(b3)),
        row(x13=b1, x23=b2),
    ]


def mv4_fiber(wo: WOModel, b) -> LinSubspace:
    F = wo.field
    if all(F.is_zero(F.coerce(c)) for c in b):
        raise GeometryError("b must be nonzero")
    return LinSubspace.from_equations(F, mv4_equations(F, b), 6)


def mv4_matches_bundle(wo: WOModel, b) -> bool:
    F = wo.field
    b1, b2, b3 = (F.coerce(c) for c in b)
    return mv4_fiber(wo, b) == wo.fiber([b3, F.neg(b2), b1])


# --- verification routines ----------------------------------------------------------------

BUNDLE_ANCHOR = "WO.p2-bundle"


def bundle_rank_check(wo: WOModel, rng: SplitMix64, samples: int = 200,
                      aux_prime: int = 101) -> list[Check]:
    """The bundle matrix has rank 4 everywhere on P²_W.

    Three independent pieces of evidence: fiber dimension 2 at sampled points,
    no common projective zero of the 4x4 minors (resultants over the working
    field) and exhaustive rank computation over GF(aux_prime).
    """
    F = wo.field
    mat = wo.bundle_matrix()
    bad = None
    for _ in range(samples):
        a = [F.random(rng) for _ in range(3)]
        if all(F.is_zero(c) for c in a):
            continue
        if wo.fiber(a).dim != 2:
            bad = [F.to_text(c) for c in a]
            break
    out = [check("bundle.sampled-fibers", BUNDLE_ANCHOR, bad is None, samples=samples, witness_a=bad)]

    minors = bundle_minors(mat)
    cert = no_common_projective_zero(minors, rng.split(1))
    out.append(check("bundle.minor-resultants", BUNDLE_ANCHOR, cert.certified,
                     field=F.spec, minors=len(minors), attempts=cert.attempts, notes=cert.notes))

    aux = GF(aux_prime)
    aux_mat = project_from_node(build_w(aux)).bundle_matrix()
    deficient = exhaustive_rank_deficiency(aux, aux_mat, 4)
    out.append(check("bundle.exhaustive-small-field", BUNDLE_ANCHOR, deficient is None,
                     field=aux.spec, points=aux_prime ** 2 + aux_prime + 1, witness_a=deficient))
    return out


def bundle_minors(mat: PolyMatrix) -> list[MultiPoly]:
    rows = mat.rows
    out = []
    for rs in itertools.combinations(range(len(rows)), 4):
        for cs in itertools.combinations(range(len(rows[0])), 4):
            d = la.bareiss_det([[rows[i][j] for j in cs] for i in rs])
            if d.terms:
                out.append(d)
    return out


def exhaustive_rank_deficiency(F: Field, mat: PolyMatrix, expected: int):
    """First point of P² over the finite field ``F`` where the rank drops, else ``None``."""
    p = F.order
    pts = [(1, a, b) for a in range(p) for b in range(p)] + [(0, 1, b) for b in range(p)] + [(0, 0, 1)]
    # the entries are linear: precompute coefficient rows
    coeff = [[[e.coeff(tuple(1 if k == v else 0 for k in range(3))) for v in range(3)] for e in r] for r in mat.rows]
    for pt in pts:
        m = [[sum(c * x for c, x in zip(entry, pt)) % p for entry in r] for r in coeff]
        if la.rank(F, m) != expected:
            return list(pt)
    return None


def bisecant_check(wo: WOModel, a) -> tuple[int, int]:
    """(projective dimension of the strict P³_W fiber, degree of its trace on C_O)."""
    F = wo.field
    line = wo.strict_p3w_fiber(a)
    # substitute C_O into the bilinear rows: two binary cubics with a common quadratic factor
    a = [F.coerce(c) for c in a]
    rows = wo.bundle_matrix().evaluate(a).rows[3:]
    co = wo.c_o_symbolic()
    forms = []
    for r in rows:
        f = MultiPoly.zero(F, 2)
        for c, g in zip(r, co):
            if not F.is_zero(c):
                f = f + g.scale(c)
        forms.append(f)
    dense = [binary_form_to_dense(f) for f in forms if f.terms]
    g = dense[0][0]
    for d, _ in dense[1:]:
        g = ugcd(F, g, d)
    # a common factor s (root at infinity for x1 = 1 chart) is not a point of C_O twice;
    # count the projective degree of the common factor
    degs = [deg - (len(d) - 1) for d, deg in dense]
    common_inf = min(degs)
    return line.dim, len(utrim(F, g)) - 1 + common_inf
