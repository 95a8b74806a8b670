from fractions import Fraction

import pytest

from pinwheels.germs import GermBranch, local_adjunction_K
from pinwheels.milnor import branch_from_profile, implicit_equation, milnor_number, oracle_grid


@pytest.mark.parametrize("Q,Rs,mu", [(2, (3,), 2), (2, (4, 5), 4), (1, (2,), 0), (3, (4,), 6)])
def test_examples(Q, Rs, mu):
    assert milnor_number(branch_from_profile(Q, Rs)) == mu


def test_implicit_equation_of_cusp():
    F = implicit_equation(GermBranch(2, (3,)))
    assert F.as_expr().expand() in {(-F.gens[0] ** 3 + F.gens[1] ** 2), (F.gens[0] ** 3 - F.gens[1] ** 2)}


def test_grid_agrees_with_closed_form():
    cases = list(oracle_grid())
    assert len(cases) >= 20
    for Q, Rs in cases:
        assert milnor_number(branch_from_profile(Q, Rs)) == local_adjunction_K(Q, Rs), (Q, Rs)


def test_coefficients_do_not_change_the_answer():
    b = branch_from_profile(3, (5, 7), [Fraction(2), Fraction(-1, 3)])
    assert milnor_number(b) == local_adjunction_K(3, (5, 7))
