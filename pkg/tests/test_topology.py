from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from pinwheels.topology import (
    PinwheelType,
    boundary_divisibility,
    chern_divisibility_check,
    fibonacci_branch,
    odd_fibonacci,
    reeb_stabiliser,
    topology_profile,
)


def test_type_validation_and_normal_form():
    with pytest.raises(ValueError):
        PinwheelType(1, 0)
    with pytest.raises(ValueError):
        PinwheelType(6, 3)
    assert PinwheelType(5, 4).normalize() == PinwheelType(5, 1)


@pytest.mark.parametrize("p,q,out", [(2, 1, (4, "special")), (5, 1, (1, "p=1 mod 4")), (4, 1, (2, "p=0 mod 4"))])
def test_stabiliser(p, q, out):
    assert reeb_stabiliser(p, q) == out


@given(st.integers(2, 400), st.integers(1, 399))
def test_stabiliser_mod_four_table(p, q):
    assume(q < p and gcd(p, q) == 1 and p * q != 2)
    g, _ = reeb_stabiliser(p, q)
    assert g == {0: 2, 1: 1, 2: 4, 3: 1}[p % 4]


def test_profiles():
    prof = topology_profile(2, 1)
    assert (prof.h1_boundary_order, prof.h1_ball_order, prof.h2_cohom_ball_order, prof.chern_residue) == (4, 2, 2, 1)
    prof = topology_profile(5, 4)
    assert (prof.h1_boundary_order, prof.chern_residue) == (25, 4)
    assert topology_profile(5, 1).chern_residue == 1


@pytest.mark.parametrize("p,d,ok", [(5, 3, True), (3, 3, False), (7, 1, True)])
def test_chern_divisibility(p, d, ok):
    assert chern_divisibility_check(p, d) is ok


def test_boundary_divisibility():
    ps = [2, 5, 29]
    assert boundary_divisibility(ps, {2}) == 100
    assert boundary_divisibility(ps, {1, 2}) == 4
    assert boundary_divisibility(ps, {0, 1, 2}) == 1
    with pytest.raises(ValueError):
        boundary_divisibility(ps, {3})


@pytest.mark.parametrize("p,out", [(5, (11, Fraction(2, 5))), (13, (29, Fraction(5, 13))), (29, None), (1, (1, Fraction(1)))])
def test_fibonacci_branch(p, out):
    assert fibonacci_branch(p) == out


def test_fibonacci_branch_matches_recursion():
    fibs = [1, 1]
    while fibs[-1] < 10**7:
        fibs.append(fibs[-1] + fibs[-2])
    odd = [f for i, f in enumerate(fibs, start=1) if i % 2 == 1 and f <= 10**7]
    assert odd_fibonacci(10**7) == odd
    hits = [p for p in range(1, 2000) if fibonacci_branch(p) is not None]
    assert hits == [f for f in odd if f < 2000]
