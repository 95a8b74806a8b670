import pytest
from hypothesis import given, strategies as st

from pinwheels.atf import (
    affine_length,
    apply,
    det,
    lattice_equivalent,
    mutation_chain,
    shear,
    transfer_cut,
    wahl_cone,
    wps_triangle,
)
from pinwheels.markov import characteristic_residues, enumerate_triples


@pytest.mark.parametrize("p,q,e2,node", [(2, 1, (1, 4), (1, 2)), (5, 1, (4, 25), (1, 5)), (5, 4, (19, 25), (4, 5))])
def test_wahl_cone(p, q, e2, node):
    cone = wahl_cone(p, q)
    assert cone.edge1 == (1, 0) and cone.edge2 == e2 and cone.node == node
    M = cone.monodromy
    assert M[0][0] * M[1][1] - M[0][1] * M[1][0] == 1
    assert apply(M, cone.cut_direction) == cone.cut_direction


def test_wahl_cone_rejects_bad_types():
    with pytest.raises(ValueError):
        wahl_cone(4, 2)


def test_monodromy_glues_the_cone_edges():
    # the shear carries one edge direction to the other, up to the cut
    cone = wahl_cone(2, 1)
    assert cone.monodromy == ((3, -1), (4, -1))


def test_small_triangles():
    smooth = wps_triangle((1, 1, 1))
    assert not smooth.cuts
    assert smooth.lattice_area() == 1 / 2
    t112 = wps_triangle((1, 1, 2))
    assert sorted(t112.edge_lengths().values()) == [1, 1, 4]
    assert len(t112.cuts) == 1
    t125 = wps_triangle((1, 2, 5))
    assert sorted(t125.edge_lengths().values()) == [1, 4, 25]
    assert len(t125.cuts) == 2


def test_chain_walks_the_tree():
    chain = [tuple(t.triple) for t, _ in mutation_chain(steps=3)]
    assert chain == [(1, 1, 1), (1, 1, 2), (1, 2, 5), (2, 5, 29)]


def test_round_trip_is_equivalent():
    tri = wps_triangle((1, 2, 5))
    corner = tri.orders.index(2)
    there, _ = transfer_cut(tri, corner)
    assert tuple(there.triple) == (1, 5, 13)
    back_corner = there.orders.index(13)
    back, _ = transfer_cut(there, back_corner)
    assert tuple(back.triple) == (1, 2, 5)
    assert lattice_equivalent(back, tri)


def test_bad_corner():
    with pytest.raises(ValueError):
        transfer_cut(wps_triangle((1, 2, 5)), 3)


@given(st.sampled_from(enumerate_triples(2000)), st.integers(0, 2))
def test_transfer_preserves_area_and_lengths(t, corner):
    tri = wps_triangle(t)
    new, rec = transfer_cut(tri, corner)
    assert rec.area_before == rec.area_after
    for i, p in enumerate(new.orders):
        assert new.edge_lengths()[i] == p * p
        assert rec.measured_lengths[i] * rec.scale == p * p
    assert new.normalized_area() == tri.normalized_area()
    # the new cut runs back along the old cut line
    assert det(rec.cut_before, rec.cut_after) == 0
    assert lattice_equivalent(new, wps_triangle(new.triple))


@given(st.sampled_from(enumerate_triples(1000)))
def test_corner_types_are_characteristic(t):
    tri = wps_triangle(t)
    for i, p in enumerate(tri.orders):
        if p < 2:
            continue
        cp, q = tri.corner_type(i)
        assert cp == p
        assert q in characteristic_residues(t, p).residues


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(any), st.sampled_from([-1, 1]), st.tuples(st.integers(-20, 20), st.integers(-20, 20)))
def test_shear_fixes_direction_and_preserves_determinant(w, s, v):
    M = shear(w, s)
    assert M[0][0] * M[1][1] - M[0][1] * M[1][0] == 1
    assert apply(M, w) == w
    assert det(w, apply(M, v)) == det(w, v)


def test_affine_length_counts_lattice_steps():
    assert affine_length((0, 0), (6, 4)) == 2
    assert affine_length((0, 0), (5, 0)) == 5
