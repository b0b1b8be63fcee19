from fractions import Fraction as Q

import pytest

from h4rep.partitions import Partition
from h4rep.singular import (
    SingularAnomaly,
    SingularCoefficients,
    closed_form,
    dumps,
    f1_implied,
    keys,
    power,
    removal_constant,
    solve_singular,
    verify_singular,
)


@pytest.mark.parametrize("i", range(1, 7))
def test_solver_matches_closed_form(i):
    assert solve_singular(i, 1) == closed_form(i)


def test_grade_four_coefficients():
    c = closed_form(4)
    want = {
        ((), 4): 1, ((1,), 3): -1, ((2,), 2): Q(-1, 2), ((1, 1), 2): Q(1, 2),
        ((3,), 1): Q(-1, 3), ((2, 1), 1): Q(1, 2), ((1, 1, 1), 1): Q(-1, 6),
    }
    assert {(tuple(r), p): c.C(r, p) for (r, p) in want} == want
    assert len(c.nonzero()) == 7


def test_small_cases_render():
    assert closed_form(1).pretty() == "E(-1)"
    assert closed_form(2).pretty() == "E(-2) - I(-1) E(-1)"
    assert solve_singular(1, 3).pretty() == "E(-1)^3"


@pytest.mark.parametrize("i,m", [(1, 2), (2, 2), (3, 2), (2, 3)])
def test_higher_charge_is_power(i, m):
    assert solve_singular(i, m) == power(closed_form(i), m)


@pytest.mark.parametrize("i,m", [(1, 1), (3, 1), (2, 2)])
def test_verify_singular(i, m):
    c = solve_singular(i, m)
    for j in (Q(0), Q(1, 3)):
        report = verify_singular(c, j, full=(i * m <= 3))
        assert all(ok for _, ok in report), report


def test_literal_multiplicities_miss_the_singular_vector():
    # the literal multiplicity reading still has a one-dimensional solution for m = 2,
    # but that vector is not annihilated by the positive modes
    lit = solve_singular(2, 2, literal=True)
    assert lit != power(closed_form(2), 2)
    assert not all(ok for _, ok in verify_singular(lit))
    assert solve_singular(3, 1, literal=True) == closed_form(3)


@pytest.mark.parametrize("i", range(1, 6))
def test_f1_follows_from_j_constraints(i):
    assert f1_implied(i)


def test_removal_constant_is_order_independent():
    c = closed_form(6)
    for rest, part in [((2, 1), 3), ((3, 1, 1), 1), ((2, 2, 1), 1)]:
        n = len(rest)
        vals = {removal_constant(rest, part, order) for order in ([0] * n, [n - 1 - t for t in range(n)])}
        assert vals == {c.C(rest, part)}


def test_keys_and_errors():
    assert all(len(mu) == 2 and max(mu) <= 2 for _, mu in keys(2, 2))
    with pytest.raises(ValueError):
        solve_singular(0, 1)
    with pytest.raises(ValueError):
        SingularCoefficients(2, 1, {(Partition([1, 1]), Partition([1, 1])): Q(1)})
    with pytest.raises(ValueError):
        power(solve_singular(1, 2), 2)
    assert issubclass(SingularAnomaly, ArithmeticError)


def test_dumps_formats():
    c = closed_form(2)
    assert dumps(c, "csv").splitlines()[0] == "lambda,mu,coeff"
    assert '"coeff": "-1"' in dumps(c, "json")
