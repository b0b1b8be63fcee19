from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from h4rep.affmodules import ParameterError, relaxed, relaxed_reducible, verma
from h4rep.characters import expand
from h4rep.exactalg import evaluate, kernel
from h4rep.h4finite import Label
from h4rep.shapovalov import (
    GeneratorError,
    ShapovalovForm,
    StringFunction,
    cell_report,
    family_module,
    irreducible_dims,
    rank_string,
    rank_table,
    shap_matrix,
    string_function,
    symbolic_matrix,
    triangularity_check,
)

J, H = Q(1, 3), Q(2, 7)


def test_verma_grade_one():
    k = Q(2)
    V = verma(Q(1, 2), J, "+", k=k)
    assert shap_matrix(V, 1, 1).entries.rows == ((k - Q(1, 2),),)
    assert shap_matrix(V, 0, 0).entries.rows == ((1,),)


modules = st.sampled_from([
    ("verma+", Q(1, 2), J, None),
    ("verma-", Q(-2, 3), J, None),
    ("relaxed", Q(1, 2), J, H),
    ("relaxed", 2, J, H),
    ("relaxed+", 1, None, H),
    ("relaxed-", 1, None, H),
    ("vacuum", 0, 0, None),
])


@settings(max_examples=25)
@given(modules, st.integers(-2, 2), st.integers(0, 2))
def test_gram_matrices_symmetric(spec, m, n):
    fam, i, j, h = spec
    M = family_module(fam, i, j, h, N=2)
    assert shap_matrix(M, m, n).is_symmetric()


def test_symbolic_grade_one():
    S = symbolic_matrix(1, H, 1)
    assert S.entries.shape == (4, 4)
    assert S.is_symmetric()
    assert len(kernel(S.entries)) == 1
    assert len(kernel(evaluate(S.entries, Q(1, 5)))) == 1
    # the extra drop happens where the charge meets h/i
    assert len(kernel(evaluate(S.entries, H))) == 3


def test_symbolic_agrees_with_numeric():
    S = symbolic_matrix(Q(1, 2), H, 2)
    for j in (Q(1, 5), Q(7, 3)):
        M = relaxed(Q(1, 2), j, H, N=2)
        num = ShapovalovForm(M, 2).rank(0, 2)
        assert len(S.basis) - len(kernel(evaluate(S.entries, j))) == num
    with pytest.raises(ParameterError):
        symbolic_matrix(1, H, 1, family="relaxed+")


def test_generator_independence():
    w, n = (-2, 2), 3
    M = relaxed(Q(1, 2), J, H, N=n)
    assert rank_table(M, w, n, 0, kernel=True).cells == rank_table(M, w, n, 2, kernel=True).cells
    M = relaxed(1, J, H, N=n)
    assert rank_table(M, w, n, 0, kernel=True).cells == rank_table(M, w, n, -3, kernel=True).cells
    P = relaxed_reducible(1, H, "+", N=n)
    assert rank_table(P, w, n, 1, kernel=True).cells == rank_table(P, w, n, 3, kernel=True).cells


def test_generator_errors():
    with pytest.raises(GeneratorError):
        ShapovalovForm(relaxed_reducible(1, H, "+", N=1), 0)
    with pytest.raises(GeneratorError):
        ShapovalovForm(relaxed_reducible(1, H, "-", N=1), 1)
    with pytest.raises(GeneratorError):
        ShapovalovForm(family_module("relaxed0", 0, J, 0, N=1))
    assert issubclass(GeneratorError, ParameterError)
    with pytest.raises(ParameterError):
        family_module("bogus")


@pytest.mark.parametrize("i", [1, 2, Q(1, 2)])
def test_verma_rank_equals_irreducible_character(i):
    w, n = (-3, 3), 4
    V = verma(i, J, "+", N=n)
    assert irreducible_dims(V, w, n).same_cells(expand(Label("L+", i, J), w, n), w, (0, n))


def test_cell_report_consistent():
    V = verma(1, J, "+", N=2)
    for row in cell_report(V, (-1, 1), 2):
        assert row["rank"] + row["kernel_dim"] == row["dim_verma"] == V.dim(row["m"], row["n"])
    kd = {(r["m"], r["n"]): r["kernel_dim"] for r in cell_report(V, (-1, 1), 2)}
    # the singular vector sits at (1, 1); F_0 carries the submodule to lower charges
    assert [kd[(m, 0)] for m in (-1, 0, 1)] == [0, 0, 0]
    assert [kd[(m, 1)] for m in (-1, 0, 1)] == [1, 1, 1]


def test_string_function():
    s = string_function(Q(1, 2), H, 4)
    assert isinstance(s, StringFunction)
    assert s.coeffs[0] == 1
    assert s.to_json()["delta0"] == str(s.delta0)
    # with i not an integer the relaxed module is irreducible and every charge carries eta^-4
    assert s.coeffs == tuple(expand(Label("E", Q(1, 2), J, H), (0, 0), 4).row(n).get(0, 0) for n in range(5))
    M = relaxed(Q(1, 2), J, H, N=4)
    assert rank_string(M, 4) == s.coeffs
    with pytest.raises(ParameterError):
        string_function(0, H, 3)


def test_triangularity():
    rep = triangularity_check(J, H, nmax=3, mrange=(-1, 1))
    assert rep.ok
    assert [c["size"] for c in rep.cells if c["m"] == 0] == [1, 4, 14, 40]
    with pytest.raises(ParameterError):
        triangularity_check(J, 0)
