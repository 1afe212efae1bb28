from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from fano10.exactalg import linalg as la
from fano10.exactalg.fields import GF, QQ
from fano10.exactalg.poly import MultiPoly
from fano10.exactalg.rng import SplitMix64
from fano10.grassw import (
    B, PO, bisecant_check, build_w, bundle_rank_check, gamma_w, gamma_w_poly, mv4_fiber,
    mv4_matches_bundle, orbit4_param, orbit_classify, tangent_equations_at_node, tangent_space,
    v8_poly_to_po,
)
from fano10.projgeom import LinSubspace, NotOnVariety, ProjPoint, jacobian_rank, rank_vertex


def unit(field, label, n=10, index=B):
    v = [0] * n
    v[index[label]] = 1
    return ProjPoint(field, v)


def po_vars(field):
    g = MultiPoly.gens(field, 7)
    return {lab: g[i] for lab, i in PO.items()}


def test_equations_of_w(w_qq):
    assert len(w_qq.plucker) == 5 and len(w_qq.linear) == 2
    x = MultiPoly.gens(QQ, 10)
    assert set(w_qq.linear) == {x[B["14"]] + x[B["25"]], x[B["15"]] + x[B["34"]]}


def test_equations_reduce_mod_p(w_qq):
    wp = build_w(GF(10007))
    for a, b in zip(w_qq.equations, wp.equations):
        assert b == a.map_field(wp.field)


def test_chart_values(w_qq):
    assert orbit4_param(0, 0, 0, 0) == unit(QQ, "45")
    pt = orbit4_param(1, 0, 0, 0)
    assert pt.coords == tuple(QQ.coerce(c) for c in (0, 1, 0, 1, 0, 0, 0, -1, 0, 1))
    assert w_qq.contains(pt)


@settings(max_examples=30)
@given(st.lists(st.integers(-20, 20), min_size=4, max_size=4))
def test_chart_lands_in_dense_orbit(uvxy):
    w = build_w(QQ)
    pt = orbit4_param(*uvxy)
    assert w.contains(pt) and orbit_classify(w, pt) == "O4"
    assert tangent_space(w, pt).dim == 4


def test_orbit_classification(w_qq):
    assert orbit_classify(w_qq, unit(QQ, "12")) == "O1"
    v = [0] * 10
    v[B["12"]] = v[B["13"]] = 1
    assert orbit_classify(w_qq, ProjPoint(QQ, v)) == "O2"
    assert orbit_classify(w_qq, unit(QQ, "45")) == "O4"
    with pytest.raises(NotOnVariety):
        orbit_classify(w_qq, ProjPoint(QQ, [1] * 10))


def test_tangent_space_at_node(w_qq):
    t = tangent_space(w_qq, unit(QQ, "45"))
    assert la.same_row_space(QQ, t.equations(), tangent_equations_at_node(QQ))
    assert t.intersect(w_qq.beta_plane).dim == -1


def test_hyperplane_quadrics(w_qq, wo_qq):
    x = po_vars(QQ)
    first = x["12"] * x["34"] - x["13"] * x["24"] + x["14"] * x["23"]
    assert v8_poly_to_po(gamma_w_poly(w_qq, [0, 0, 0, 0, 1])).is_proportional(first) is not None
    assert wo_qq.pencil[0].is_proportional(first) is not None
    # e4 gives x12x35 - x13x25 - x34x23, and x25 = -x14 on the span of W
    second = x["12"] * x["35"] + x["13"] * x["14"] - x["34"] * x["23"]
    assert v8_poly_to_po(gamma_w_poly(w_qq, [0, 0, 0, 1, 0])).is_proportional(second) is not None


@settings(max_examples=20, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9))
def test_hyperplane_rank_drops_on_c_u(l, m):
    if l == 0 and m == 0:
        return
    w = build_w(QQ)
    on = [l * m, -m * m, -l * l, 0, 0]  # kernel of the pencil member at (l : m)
    assert QQ.is_zero(w.c_u().evaluate(on))
    assert gamma_w(w, on).rank() < 6
    off = [l * m, -m * m, -l * l, 1, 0]
    assert gamma_w(w, off).rank() == 6


def test_pencil_vanishes_on_projected_chart(w_qq, wo_qq):
    x = po_vars(QQ)
    for q in wo_qq.pencil:
        assert q.homogeneous_degree == 2
    # project the chart from the node and substitute
    param = list(w_qq.o4_param)
    proj = [param[B[lab]] for lab in ("12", "13", "14", "23", "24", "34", "35")]
    for q in wo_qq.pencil:
        assert q.subs(proj).is_zero
    assert set(x) == set(PO)


def test_twisted_cubic(wo_qq):
    assert all(f.subs(wo_qq.c_o_symbolic()).is_zero for f in wo_qq.twcu_minors())
    pt = wo_qq.c_o_point(2, 3)
    s, t = 2, 3
    want = [0] * 7
    want[PO["14"]], want[PO["24"]], want[PO["34"]], want[PO["35"]] = s * s * t, s**3, s * t * t, -t**3
    assert pt == ProjPoint(QQ, want)
    assert jacobian_rank(list(wo_qq.pencil), pt) == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30))
def test_pencil_vertex_on_cubic(a, b):
    if a == 0 and b == 0:
        return
    from fano10.grassw import project_from_node
    wo = project_from_node(build_w(QQ))
    r, v = rank_vertex(wo.pencil_member((a, b)))
    assert r == 6 and v.dim == 0
    assert all(QQ.is_zero(f.evaluate(v.basis[0])) for f in wo.twcu_minors())
    assert wo.pencil_vertex((a, b)) == wo.c_o_point(b, a)


def test_p3w_in_both_pencil_quadrics(wo_qq):
    from fano10.projgeom import contains
    for q in wo_qq.quadrics:
        assert contains(q, wo_qq.p3w)


def test_bundle_fibers(wo_qq):
    f = wo_qq.fiber((1, 0, 0))
    assert f.dim == 2
    assert f == LinSubspace.from_equations(
        QQ, [[1 if i == PO[lab] else 0 for i in range(7)] for lab in ("13", "23", "34", "35")], 6)
    for a in ((0, 1, 0), (0, 5, -2), (0, 1, 7)):
        assert wo_qq.fiber(a).dim == 2
    assert mv4_fiber(wo_qq, (0, 0, 1)) == f
    assert mv4_fiber(wo_qq, (1, 0, 0)) == wo_qq.fiber((0, 0, 1))
    for b in ((1, 2, 3), (3, -1, 2), (0, 1, 1)):
        assert mv4_matches_bundle(wo_qq, b)


def test_bisecant_lines(wo_qq):
    for a in ((1, 2, 3), (2, -1, 5), (1, 1, 1)):
        assert bisecant_check(wo_qq, a) == (1, 2)


def test_bundle_rank_certificate(wo_p):
    checks = bundle_rank_check(wo_p, SplitMix64(11))
    assert [c.ok for c in checks] == [True, True, True]
    assert {c.anchor for c in checks} == {"WO.p2-bundle"}
