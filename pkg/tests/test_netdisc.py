from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from fano10 import netdisc as nd
from fano10.exactalg import linalg as la
from fano10.exactalg.fields import GF
from fano10.exactalg.linalg import PolyMatrix, ScalarMatrix
from fano10.exactalg.poly import MultiPoly
from fano10.exactalg.rng import SplitMix64
from fano10.exactalg.univariate import binary_roots
from fano10.projgeom import GeometryError
from fano10.records import DegenerateInput

P = 10007


@pytest.fixture(scope="module")
def nodal(wo_p):
    return nd.sample_nodal_x(wo_p, 1)


def diag(F, entries):
    n = len(entries)
    return ScalarMatrix(F, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], symmetric=True)


def test_diagonal_net_discriminant():
    # det of a diagonal net is the product of its diagonal linear forms
    F = GF(P)
    forms = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 3), (2, 0, 1), (0, 1, 5), (0, 0, 1)]
    gens = tuple(diag(F, [f[k] for f in forms]) for k in range(3))
    d = nd.discriminant(nd.NetOfQuadrics(F, gens))
    lam = MultiPoly.gens(F, 3)
    lin = [sum((l.scale(c) for l, c in zip(lam, f)), MultiPoly.zero(F, 3)) for f in forms]
    prod = MultiPoly.const(F, 3, 1)
    for f in lin:
        prod = prod * f
    assert d.septic == prod
    assert d.sextic * d.line == d.septic
    assert d.sextic.homogeneous_degree == 6


def test_line_dividing_twice_is_degenerate():
    F = GF(P)
    forms = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 3), (2, 0, 1), (0, 0, 1), (0, 0, 1)]
    gens = tuple(diag(F, [f[k] for f in forms]) for k in range(3))
    with pytest.raises(DegenerateInput):
        nd.discriminant(nd.NetOfQuadrics(F, gens))


def test_dependent_generators_rejected():
    F = GF(P)
    g = diag(F, [1] * 7)
    with pytest.raises(GeometryError):
        nd.NetOfQuadrics(F, (g, g, diag(F, list(range(7)))))


def test_septic_is_the_determinant(nodal):
    F = nodal.field
    r = SplitMix64(3)
    for _ in range(10):
        pt = [F.random(r) for _ in range(3)]
        assert nodal.disc.septic.evaluate(pt) == nodal.net.member(pt).gram.det()


def test_six_points_on_the_pencil_line(nodal):
    E = nodal.ext
    assert len(set(nodal.p_points)) == 6
    for p in nodal.p_points:
        assert E.is_zero(p.coords[2])
        assert nodal.disc.gamma6.contains(p)
    roots = binary_roots(nd.restrict_to_pencil_line(nodal.disc.sextic).map_field(E))
    assert len(roots) == 6


def test_six_nodes(nodal):
    pts = nd.singular_points_xo(nodal)
    assert len(set(pts)) == 6
    verts = {nd.vertex_map(nodal.net, nodal.disc, p) for p in nodal.p_points}
    assert verts == set(pts)


def test_vertex_map_on_sampled_points(nodal):
    pts = nd.sample_curve_points(nodal.disc.sextic, SplitMix64(5), 8)
    assert pts
    verts = []
    for p in pts:
        v = nd.vertex_map(nodal.net, nodal.disc, p)
        g = nodal.net.member(p.coords, p.field).gram
        assert all(p.field.is_zero(x) for x in la.matmul(p.field, g.rows, [[c] for c in v.coords]) for x in x)
        verts.append(v)
    assert len(set(verts)) == len(set(pts))


def test_net_checks_pass(nodal):
    checks = nd.net_checks(nodal, SplitMix64(7), samples=30, random_mats=30)
    assert len(checks) == 10
    assert all(c.ok for c in checks), [c.name for c in checks if not c.ok]
    assert {c.anchor for c in checks} <= set(nd.ANCHORS.values())


def test_section_and_labels_pass(nodal):
    checks = nd.gamma1_section_and_labels(nodal, SplitMix64(8), samples=4)
    assert len(checks) == 6 and all(c.ok for c in checks), [c.name for c in checks if not c.ok]


def test_conic_bundle_discriminant(nodal):
    checks = nd.conic_bundle_checks(nodal, SplitMix64(9), samples=10)
    assert all(c.ok for c in checks)
    star = nd.conic_bundle_discriminant_star(nodal)
    assert star.degree == 6
    F = nodal.field
    r = SplitMix64(10)
    rational = [p for p in nd.sample_curve_points(star.poly, r, 5) if p.field == F]
    assert all(nd.fiber_conic_rank(nodal, p.coords) < 3 for p in rational)
    for _ in range(5):
        a = [F.random(r) for _ in range(3)]
        assert (nd.fiber_conic_rank(nodal, a) == 3) == (not F.is_zero(star.poly.evaluate(a)))


def test_cone_required(wo_p):
    F = wo_p.field
    rows = nd.random_symmetric(F, 8, SplitMix64(1))
    with pytest.raises(GeometryError):
        nd.nodal_x_from_omega(wo_p, ScalarMatrix(F, rows, symmetric=True))


def test_engineered_tangency_is_degenerate(wo_p):
    omega = nd.engineered_tangent_omega(wo_p.field, SplitMix64(2))
    with pytest.raises(DegenerateInput) as info:
        nd.nodal_x_from_omega(wo_p, omega)
    assert info.value.failed_checks == ["s_i distinct"]


def test_budget_exhaustion(wo_p):
    with pytest.raises(DegenerateInput):
        nd.sample_nodal_x(wo_p, 1, budget=0)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2**40))
def test_rank6_adjugate_is_rank_one(seed):
    F = GF(P)
    m = ScalarMatrix(F, nd.random_rank6_symmetric(F, SplitMix64(seed)))
    adj = m.adjugate()
    assert m.rank() == 6 and adj.rank() == 1
    ker = m.kernel()
    assert la.rank(F, ker + [r for r in adj.rows if any(r)][:1]) == 1


def test_symbolic_adjugate_minors_on_small_net():
    F = GF(P)
    r = SplitMix64(4)
    gens = tuple(ScalarMatrix(F, nd.random_symmetric(F, 4, r), symmetric=True) for _ in range(3))
    net = nd.NetOfQuadrics(F, gens)
    det, adj = la.ff_det_adjugate(net.poly_matrix())
    ok, wit = nd.adjugate_rank1_identity(adj, det)
    assert ok and wit["tested"] == 21
    # a non-symmetric adjugate is tested on all pairs
    ok, wit = nd.adjugate_rank1_identity(PolyMatrix(adj.rows), det)
    assert ok and wit["tested"] == 36
