import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pinwheels.adjunction import (
    CurveCandidate,
    OrbifoldSurface,
    adjunction_residual,
    candidate_from_json,
    candidate_to_json,
    chern_pairing,
    expects_vdim_zero,
    homology_pairing,
    one_point_candidate,
    pair_candidate,
    pair_candidates,
    quadratic_roots,
    suborbifold_incidence,
    virtual_dimension,
)
from pinwheels.germs import GermBranch, OrbifoldIncidence
from pinwheels.markov import enumerate_triples, is_markov_triple

TRIPLES = enumerate_triples(10**4)


@pytest.mark.parametrize("args,out", [((7, 7, 7), 1), ((2, 2, 5), Fraction(4, 25)), ((1, 1, 10), Fraction(1, 100))])
def test_homology_pairing(args, out):
    assert homology_pairing(*args) == out


@pytest.mark.parametrize("args,out", [((7, 7, 3), 3), ((2, 5, 3), Fraction(6, 5)), ((1, 10, 3), Fraction(3, 10))])
def test_chern_pairing(args, out):
    assert chern_pairing(*args) == out


def test_surface_needs_coprime_orders():
    with pytest.raises(ValueError):
        OrbifoldSurface(((2, 1), (4, 1)))


def test_smooth_line():
    surface = OrbifoldSurface(((5, 1),))
    assert adjunction_residual(surface, CurveCandidate(5)) == 0
    plane = OrbifoldSurface(())
    assert plane.Delta == 1
    assert virtual_dimension(plane, CurveCandidate(1)) == 2


def test_one_ball_example():
    surface = OrbifoldSurface(((5, 1),))
    inc = OrbifoldIncidence(5, 1, 25, GermBranch(1, (4,)), 1, 4)
    cand = CurveCandidate(2, (inc,))
    assert adjunction_residual(surface, cand) == 0
    assert virtual_dimension(surface, cand) == 1


def test_two_ball_example():
    surface = OrbifoldSurface(((2, 1), (5, 4)))
    cand = CurveCandidate(1, (suborbifold_incidence(2, 1, 0), suborbifold_incidence(5, 4, 1)))
    assert adjunction_residual(surface, cand) == 0
    assert virtual_dimension(surface, cand) == 0
    assert [(i.m1, i.m2) for i in cand.incidences] == [(1, 1), (1, 19)]


def test_missing_weights():
    surface = OrbifoldSurface(((5, 1),))
    cand = CurveCandidate(2, (OrbifoldIncidence(5, 1, 25, GermBranch(1, (4,))),))
    with pytest.raises(ValueError):
        virtual_dimension(surface, cand)


def test_pair_terms_need_a_shared_point():
    with pytest.raises(ValueError):
        CurveCandidate(1, (suborbifold_incidence(2, 1, 0), suborbifold_incidence(5, 1, 1)), ((0, 1, None),))


def test_quadratic_roots():
    assert quadratic_roots(2, 5) == (1, 29)
    assert quadratic_roots(2, 13) is None


@given(st.sampled_from([t for t in TRIPLES if t.c >= 2]))
def test_one_point_identity(t):
    surface, cand = one_point_candidate(t)
    assert adjunction_residual(surface, cand) == 0
    assert virtual_dimension(surface, cand) == 1
    assert 3 * cand.D > surface.Delta
    inc = cand.incidences[0]
    p = t.c
    assert cand.D ** 2 * inc.d ** 2 == surface.Delta ** 2 * p * p * inc.Q * inc.R1


@given(st.sampled_from(TRIPLES))
def test_pair_identity(t):
    for (x, y), D, surface, cand in pair_candidates(t):
        assert adjunction_residual(surface, cand) == 0
        if expects_vdim_zero(x, y, D):
            assert virtual_dimension(surface, cand) == 0
        lo, hi = quadratic_roots(x, y)
        assert D in (lo, hi) and lo + hi == 3 * x * y
        assert is_markov_triple(x, y, lo) and is_markov_triple(x, y, hi)


def test_json_round_trip():
    surface, cand = pair_candidate(5, 29, 2)
    obj = json.loads(json.dumps(candidate_to_json(surface, cand)))
    s2, c2 = candidate_from_json(obj)
    assert s2 == surface
    assert c2.D == cand.D and c2.incidences == cand.incidences


def test_json_short_form():
    obj = {
        "surface": {"points": [[5, 1]]},
        "D": 2,
        "incidences": [{"point": 0, "d": 25, "Q": 1, "R1": 4, "m1": 1, "m2": 4}],
    }
    surface, cand = candidate_from_json(obj)
    assert adjunction_residual(surface, cand) == 0
