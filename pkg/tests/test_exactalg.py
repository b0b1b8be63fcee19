from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from h4rep.exactalg import (
    T,
    ExactMatrix,
    PoleError,
    Poly,
    RatFunc,
    evaluate,
    format_rational,
    kernel,
    parse_rational,
    rank,
    rref,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    # bias towards rank deficiency by drawing from a small pool
    pool = draw(st.lists(rationals, min_size=1, max_size=4))
    rows = [[draw(st.sampled_from(pool + [Q(0)])) for _ in range(c)] for _ in range(r)]
    return ExactMatrix(rows, c)


def test_parse_and_format():
    assert parse_rational("3/6") == Q(1, 2)
    assert parse_rational(" -4 ") == -4
    assert format_rational(Q(-2, 4)) == "-1/2"
    assert format_rational(Q(5)) == "5"
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(ValueError):
        parse_rational("1e3")


@given(matrices())
def test_backends_agree(m):
    a = rref(m, backend="python")
    b = rref(m, backend="flint")
    assert a.form == b.form
    assert a.pivots == b.pivots
    assert a.rank == b.rank == rank(m)


@given(matrices())
def test_kernel_is_kernel_and_rank_nullity(m):
    ks = kernel(m)
    assert len(ks) + rank(m) == m.ncols
    for v in ks:
        for row in m.rows:
            assert sum(x * y for x, y in zip(row, v)) == 0


@given(matrices())
def test_transpose_rank(m):
    assert rank(m) == rank(m.transpose())


def test_identity_and_zero():
    assert rank(ExactMatrix.identity(4)) == 4
    assert rank(ExactMatrix.zeros(3, 5)) == 0
    assert len(kernel(ExactMatrix.zeros(2, 3))) == 3


@given(st.lists(rationals, max_size=5), st.lists(rationals, max_size=5), rationals)
def test_poly_ring_ops(a, b, x):
    p, q = Poly(a), Poly(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert hash(Poly(a)) == hash(Poly(a))


def test_ratfunc_normalises():
    f = RatFunc(T * T - 1, T - 1)
    assert f == RatFunc(T + 1)
    g = RatFunc(2 * T, 4 * T + 2)
    assert g(Q(1)) == Q(1, 3)
    assert g.den.coeffs[-1] == 1  # monic denominator


def test_symbolic_rank_and_evaluation():
    # det = t (t - 1): rank 2 generically, 1 at t = 0 and t = 1
    m = ExactMatrix([[T, Q(1)], [Q(0), T - 1]], 2)
    assert m.kind == "poly"
    assert rank(m) == 2
    assert rank(evaluate(m, 0)) == 1
    assert rank(evaluate(m, 1)) == 1
    assert rank(evaluate(m, 5)) == 2


def test_pole_error():
    m = ExactMatrix([[RatFunc(1, T - 2)]], 1)
    with pytest.raises(PoleError) as exc:
        evaluate(m, 2)
    assert (exc.value.row, exc.value.col) == (0, 0)


def test_symmetry_and_product():
    a = ExactMatrix([[1, 2], [2, 5]])
    assert a.is_symmetric()
    assert (a @ ExactMatrix.identity(2)) == a
    assert not ExactMatrix([[1, 2], [3, 4]]).is_symmetric()
