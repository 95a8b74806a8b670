import pytest
from hypothesis import given, strategies as st

from pinwheels.classify import classify_one, classify_pair, classify_triple, max_disjoint
from pinwheels.markov import characteristic_residues, enumerate_triples


def test_one_ball():
    assert classify_one(2).to_json() == {"embeds": True, "p": 2, "q": [1], "partners": [[1, 1]]}
    five = classify_one(5)
    assert five.allowed and five.data["q"] == [1, 4] and five.data["partners"] == [[1, 2]]
    assert classify_one(7).to_json() == {"embeds": False, "p": 7, "reason": "not a Markov number"}
    with pytest.raises(ValueError):
        classify_one(1)


def test_pair_examples():
    v = classify_pair(2, 1, 5, 1)
    assert v.allowed and v.data["D"] == 1 and v.data["roots"] == [1, 29]
    assert classify_pair(2, 1, 5, 4).allowed
    v = classify_pair(2, 1, 13, 2)
    assert not v.allowed and "no Markov triple" in v.reason
    v = classify_pair(5, 2, 2, 1)
    assert not v.allowed and "q^2 = -9" in v.reason


def test_triple_examples():
    assert classify_triple([(1, None), (2, 1), (5, 1)]).allowed
    assert classify_triple([(1, None), (2, 1), (5, 4)]).allowed
    assert classify_triple([(2, 1), (5, 1), (29, 7)]).allowed
    assert not classify_triple([(2, 1), (5, 1), (13, 5)]).allowed
    assert not classify_triple([(2, 1), (5, 2), (29, 7)]).allowed
    assert max_disjoint() == 3


pairs = [
    ((x, qx), (y, qy))
    for t in enumerate_triples(2000)
    for x, y in ((t.b, t.c), (t.a, t.c), (t.a, t.b))
    if 2 <= x < y
    for qx in characteristic_residues(t, x).residues
    for qy in characteristic_residues(t, y).residues
]


@given(st.sampled_from(pairs))
def test_pair_symmetric_and_sign_invariant(pair):
    (x, qx), (y, qy) = pair
    v = classify_pair(x, qx, y, qy)
    assert v.to_json() == classify_pair(y, qy, x, qx).to_json()
    assert classify_pair(x, x - qx, y, y - qy).allowed == v.allowed
    assert classify_pair(x, x - qx, y, qy).allowed == v.allowed


@given(st.sampled_from([t for t in enumerate_triples(10**5) if t.a >= 2]))
def test_triples_with_characteristic_residues_are_allowed(t):
    types = [(p, characteristic_residues(t, p).canonical) for p in t]
    assert classify_triple(types).allowed
    flipped = [(p, p - q) for p, q in types]
    assert classify_triple(flipped).allowed
