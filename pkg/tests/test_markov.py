from math import gcd

import pytest
from hypothesis import given, strategies as st
from sympy import factorint

from pinwheels.markov import (
    MarkovTriple,
    characteristic_residues,
    descend,
    enumerate_triples,
    is_markov_number,
    is_markov_triple,
    iter_tree,
    markov_numbers,
    markov_partner,
    mutate,
    mutate_value,
)

TRIPLES = enumerate_triples(10**6)


@pytest.mark.parametrize("t,expected", [((1, 2, 5), True), ((1, 1, 1), True), ((2, 3, 5), False), ((0, 0, 0), False)])
def test_recognition(t, expected):
    assert is_markov_triple(*t) is expected


def test_of_sorts_and_validates():
    assert MarkovTriple.of(5, 1, 2) == (1, 2, 5)
    with pytest.raises(ValueError):
        MarkovTriple.of(2, 3, 5)


def test_mutation_examples():
    assert mutate_value(MarkovTriple(1, 2, 5), 1) == (2, 5, 29)
    for slot in (1, 2, 3):
        assert mutate(MarkovTriple(1, 1, 1), slot) == (1, 1, 2)
    assert mutate_value(MarkovTriple(1, 2, 5), 5) == (1, 1, 2)
    with pytest.raises(ValueError):
        mutate(MarkovTriple(1, 1, 1), 4)


def test_enumeration_examples():
    assert enumerate_triples(34) == [(1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29), (1, 13, 34)]
    assert enumerate_triples(1) == [(1, 1, 1)]
    small = enumerate_triples(1000)
    assert len(small) == 13
    assert {t.c for t in small} == {1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985}


def test_traversal_lists_levels_left_to_right():
    first = [tuple(t) for t in iter_tree(10**6)][:9]
    assert first == [
        (1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29),
        (1, 13, 34), (5, 13, 194), (5, 29, 433), (2, 29, 169),
    ]


def test_traversal_visits_each_triple_once():
    seen = list(iter_tree(10**6))
    assert len(seen) == len(set(seen)) == len(TRIPLES)


@pytest.mark.parametrize("p,expected", [(5, True), (3, False), (29, True), (7, False), (1, True)])
def test_markov_numbers(p, expected):
    assert is_markov_number(p) is expected


def test_residue_examples():
    assert characteristic_residues(MarkovTriple(1, 2, 5), 5).residues == {1, 4}
    assert characteristic_residues(MarkovTriple(1, 1, 2), 2).residues == {1}
    assert characteristic_residues(MarkovTriple(2, 5, 29), 29).residues == {7, 22}
    assert characteristic_residues(MarkovTriple(1, 2, 5), 1).residues == frozenset()
    with pytest.raises(ValueError):
        characteristic_residues(MarkovTriple(1, 2, 5), 3)


def test_partner_examples():
    assert markov_partner(5, 1) == (1, 2, 5)
    assert markov_partner(5, 2) is None
    assert markov_partner(2, 1) == (1, 1, 2)


triple = st.sampled_from(TRIPLES)


@given(triple, st.sampled_from([1, 2, 3]))
def test_mutation_is_an_involution(t, slot):
    new_value = 3 * t[(slot) % 3] * t[(slot + 1) % 3] - t[slot - 1]
    s = mutate(t, slot)
    assert is_markov_triple(*s)
    assert mutate_value(s, new_value) == t


@given(triple)
def test_descent_reaches_root(t):
    path = list(descend(t))
    assert path[-1] == (1, 1, 1)
    maxima = [s.c for s in path]
    assert all(b < a for a, b in zip(maxima, maxima[1:]))


@given(triple)
def test_entries_coprime_and_not_divisible_by_three(t):
    a, b, c = t
    assert gcd(a, b) == gcd(a, c) == gcd(b, c) == 1
    assert all(x % 3 for x in t)


@given(triple)
def test_residues_square_to_minus_nine_and_are_symmetric(t):
    for p in set(t) - {1}:
        rs = characteristic_residues(t, p).residues
        assert rs
        assert {p - r for r in rs} == rs
        assert all((r * r + 9) % p == 0 for r in rs)


def test_odd_prime_factors_are_one_mod_four():
    for p in markov_numbers(10**6):
        assert all(f % 4 == 1 for f in factorint(p) if f != 2)
