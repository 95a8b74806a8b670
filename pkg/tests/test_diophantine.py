import pytest
from hypothesis import given, strategies as st

from pinwheels.diophantine import (
    ROSENBERGER_TUPLES,
    RosenbergerEquation,
    descend,
    fundamental_solutions,
    has_positive_solution,
    is_fundamental,
    one_parameter_family,
    verify_rosenberger_table,
    vieta_jump,
)

MARKOV = RosenbergerEquation(1, 1, 1, 3)


def test_validation():
    with pytest.raises(ValueError):
        RosenbergerEquation(1, 2, 2, 4)  # not coprime
    with pytest.raises(ValueError):
        RosenbergerEquation(1, 1, 2, 3)  # 2 does not divide 3
    with pytest.raises(ValueError):
        RosenbergerEquation(2, 1, 1, 2)  # unsorted
    with pytest.raises(ValueError):
        RosenbergerEquation.parse("1,1,1")
    assert RosenbergerEquation.parse("1, 2, 3, 6").as_tuple() == (1, 2, 3, 6)


def test_jump_examples():
    assert vieta_jump(MARKOV, (1, 2, 5), 3) == (1, 2, 1)
    for slot in (1, 2, 3):
        assert sorted(vieta_jump(MARKOV, (1, 1, 1), slot)) == [1, 1, 2]
    eq = RosenbergerEquation(1, 1, 1, 1)
    assert vieta_jump(eq, (3, 3, 3), 1) == (6, 3, 3)
    assert eq.is_solution((6, 3, 3))
    with pytest.raises(ValueError):
        vieta_jump(MARKOV, (1, 1, 2), 4)
    with pytest.raises(ValueError):
        vieta_jump(MARKOV, (1, 1, 3), 1)


@pytest.mark.parametrize("eq,witness", [((1, 1, 1, 3), (1, 1, 1)), ((1, 1, 2, 4), (1, 1, 1))])
def test_solvable_examples(eq, witness):
    ok, cert = has_positive_solution(RosenbergerEquation(*eq))
    assert ok and cert.witness == witness
    assert cert.to_json()["witness"] == list(witness)


def test_unsolvable_has_empty_record():
    ok, cert = has_positive_solution(one_parameter_family(2))
    assert one_parameter_family(2).as_tuple() == (1, 1, 2, 6)
    assert not ok and cert.witness is None
    assert "bound" in cert.to_json()


def test_table_scan():
    report = verify_rosenberger_table()
    assert report.ok
    assert set(report.solvable) == ROSENBERGER_TUPLES
    assert (1, 1, 3, 3) not in report.solvable


def test_family_solvable_only_at_one():
    for t in range(1, 51):
        ok, cert = has_positive_solution(one_parameter_family(t))
        assert ok is (t == 1)
    sols, _ = fundamental_solutions(one_parameter_family(1))
    assert sols == [(1, 1, 1)]


solvable = st.sampled_from(sorted(ROSENBERGER_TUPLES)).map(lambda t: RosenbergerEquation(*t))


@given(solvable, st.lists(st.sampled_from([1, 2, 3]), min_size=1, max_size=12))
def test_jumps_preserve_solutions_and_descent_terminates(eq, slots):
    _, cert = has_positive_solution(eq)
    sol = cert.witness
    for s in slots:
        nxt = vieta_jump(eq, sol, s)
        assert eq.is_solution(nxt)
        if min(nxt) >= 1:
            sol = nxt
    path = descend(eq, sol)
    sums = [sum(s) for s in path]
    assert all(b < a for a, b in zip(sums, sums[1:]))
    assert is_fundamental(eq, path[-1])
