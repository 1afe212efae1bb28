from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from fano10 import verra as vr
from fano10.exactalg.fields import GF
from fano10.exactalg.poly import MultiPoly
from fano10.exactalg.rng import SplitMix64
from fano10.projgeom import GeometryError, LinSubspace, ProjPoint, contains

P = 10007


@pytest.fixture(scope="module")
def inst():
    return vr.build_verra_instance(GF(P), 1)


def test_normal_form_shape():
    m = vr.build_normal_form(GF(P), 3)
    for q in m.quadrics[:2]:
        assert contains(q, m.p3w)
    for q in m.quadrics:
        assert contains(q, m.ell)
    # Ω_O only involves x2, x4 linearly
    assert m.omega_o.degree_in(2) == 1 and m.omega_o.degree_in(4) == 1
    assert all(e[2] + e[4] <= 1 for e in m.omega_o.terms)


def test_p_w_undefined_on_p3w():
    m = vr.build_normal_form(GF(P), 3)
    with pytest.raises(vr.BaseLocus):
        vr.map_pw(m, ProjPoint(m.field, [1, 0, 2, 0, 3, 0, 4]))


def test_samples_lie_on_xo_and_the_solid(inst):
    m = inst.model
    pts = vr.sample_xo_points(m, 10, SplitMix64(3))
    assert len(pts) == 10
    for x, y, z in pts:
        assert m.contains_point(x)
        assert y == vr.map_pw(m, x) and z == vr.map_pell(m, x)
        assert x.field.is_zero(inst.solid.value(y.coords, z.coords, x.field))


def test_implicitization_has_one_dimensional_kernel(inst):
    assert inst.nullity == 1 and inst.eval_rank == len(vr.BIDEG22) - 1 == 35


def test_matrix_forms_reproduce_the_solid(inst):
    t = inst.solid
    F = t.field
    r = SplitMix64(4)
    for which in (1, 2):
        mat = t.matrix_in(which)
        for _ in range(5):
            y = [F.random(r) for _ in range(3)]
            z = [F.random(r) for _ in range(3)]
            outer, inner = (y, z) if which == 1 else (z, y)
            ev = mat.evaluate(outer).rows
            val = 0
            for i in range(3):
                for j in range(3):
                    val = F.add(val, F.mul(ev[i][j], F.mul(inner[i], inner[j])))
            assert val == t.value(y, z)


def test_discriminant_sextics(inst):
    d1, d2 = vr.verra_discriminants(inst.solid)
    assert d1.homogeneous_degree == 6 and d2.homogeneous_degree == 6


def test_line_images(inst):
    plus, minus, mat, notes = vr.line_incidences(inst)
    assert mat == [[int(i != j) for j in range(6)] for i in range(6)]
    assert all(n["fiber_point_is_p_i"] for n in notes)
    assert {c.bidegree for c in plus} == {(1, 0)}
    assert {c.bidegree for c in minus} == {(1, 2)}
    for c in plus + minus:
        assert vr.curve_on_solid(inst.solid, inst.ext, c)


def test_verra_checks_pass(inst):
    checks = vr.verra_checks(inst, SplitMix64(5), fresh=40, smooth_samples=20)
    assert len(checks) == 17
    assert all(c.ok for c in checks), [c.name for c in checks if not c.ok]
    assert {c.anchor for c in checks} <= set(vr.ANCHORS.values())


@settings(max_examples=20)
@given(st.tuples(*[st.integers(0, 3)] * 6), st.integers(1, 100))
def test_solid_requires_bidegree_two_two(e, c):
    f = MultiPoly(GF(P), 6, {e: c})
    if sum(e[:3]) == 2 and sum(e[3:]) == 2:
        assert vr.VerraSolid(f).coefficients().count(0) == 35
    else:
        with pytest.raises(GeometryError):
            vr.VerraSolid(f)


def test_fiber_plane_contains_ell_direction():
    m = vr.build_normal_form(GF(P), 3)
    pl = vr.fiber_plane(m, [1, 2, 3])
    assert isinstance(pl, LinSubspace) and pl.dim == 2
