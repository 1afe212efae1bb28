from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fano10.exactalg.fields import GF, QQ
from fano10.exactalg.rng import SplitMix64
from fano10.projgeom import (
    GeometryError, LinSubspace, NotRulingMember, ProjPoint, Quadric, contains, enumerate_families,
    jacobian_rank, rank_vertex, same_ruling, sample_maximal_isotropic, standard_split_form,
)


def split7(field=QQ):
    return standard_split_form(field, 3, extra=1)  # x0x1 + x2x3 + x4x5 in P^6


def span(field, idx, n=7):
    return LinSubspace.coordinate(field, idx, n - 1)


def test_projpoint_normalized():
    assert ProjPoint(QQ, [0, 2, 4]) == ProjPoint(QQ, [0, 1, 2])
    with pytest.raises(GeometryError):
        ProjPoint(QQ, [0, 0])


def test_rank_vertex_examples():
    r, v = rank_vertex(split7())
    assert r == 6 and v.contains_point([0, 0, 0, 0, 0, 0, 1]) and v.dim == 0
    q = Quadric.from_rows(QQ, [[1 if i == j else 0 for j in range(7)] for i in range(7)])
    r, v = rank_vertex(q)
    assert r == 7 and v.dim == -1


def test_contains_examples():
    q = split7()
    assert contains(q, span(QQ, [0, 2, 4, 6]))
    assert not contains(q, span(QQ, [0, 1]))


def test_same_ruling_examples():
    q = split7()
    a = span(QQ, [0, 2, 4, 6])
    assert same_ruling(q, a, a)
    assert not same_ruling(q, a, span(QQ, [1, 3, 5, 6]))
    assert same_ruling(q, a, span(QQ, [1, 3, 4, 6]))


def test_same_ruling_rejects_non_members():
    q = split7()
    with pytest.raises(NotRulingMember):
        same_ruling(q, span(QQ, [0, 2, 4, 6]), span(QQ, [0, 1, 2, 6]))


def test_jacobian_rank_at_vertex():
    f = split7().to_poly()
    assert jacobian_rank([f], [0, 0, 0, 0, 0, 0, 1]) == 0
    assert jacobian_rank([f], [1, 0, 0, 0, 0, 0, 0]) == 1


def test_family_enumeration_gf5():
    # 2 * (p+1)(p^2+1) maximal isotropic planes of the split form in six variables
    F = GF(5, small_ok=True)
    order, color = enumerate_families(standard_split_form(F, 3))
    assert len(order) == 2 * 6 * 26
    assert sorted(list(color.values()).count(c) for c in set(color.values())) == [156, 156]


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**40))
def test_sampled_planes_parity_is_transitive(seed):
    # same_ruling is an equivalence relation with exactly two classes
    F = GF(10007)
    q = split7(F)
    r = SplitMix64(seed)
    a, b, c = (sample_maximal_isotropic(q, r) for _ in range(3))
    for s in (a, b, c):
        assert contains(q, s) and s.dim == 3
    ab, bc, ac = same_ruling(q, a, b), same_ruling(q, b, c), same_ruling(q, a, c)
    assert ac == (ab == bc)


@settings(max_examples=30)
@given(st.lists(st.integers(-9, 9), min_size=7, max_size=7))
def test_quadric_poly_roundtrip(v):
    q = split7()
    f = q.to_poly()
    assert Quadric.from_poly(f).gram.rows == q.gram.rows
    assert q.value(v) == f.evaluate(v)
    assert q.bilinear(v, v) == q.value(v)


def test_subspace_meet_and_join():
    a, b = span(QQ, [0, 1, 2]), span(QQ, [2, 3])
    assert a.intersect(b).dim == 0
    assert a.join(b).dim == 3
    assert LinSubspace.from_equations(QQ, [[1, 1, 0]], 2).contains_point([1, -1, 5])
    assert not LinSubspace.span(QQ, [[1, Fraction(1, 2), 0]]).contains_point([0, 0, 1])
