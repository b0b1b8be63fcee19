from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from h4rep import affinepbw as pbw
from h4rep.affinepbw import E_
from h4rep.affmodules import (
    WeightTable,
    WindowError,
    generated_submodule_table,
    negative_words,
    quotient_table,
    relaxed,
    relaxed_reducible,
    rhw_kernel,
    rhw_kernel_dim,
    twist_label,
    vacuum,
    verma,
    weight_table,
)
from h4rep.characters import expand
from h4rep.h4finite import AutomorphismSpec, Label
from h4rep.shapovalov import irreducible_dims


def four_colour_counts(nmax):
    # coefficients of prod (1 - q^n)^-4, one factor at a time
    c = [1] + [0] * nmax
    for n in range(1, nmax + 1):
        for _ in range(4):
            for t in range(n, nmax + 1):
                c[t] += c[t - n]
    return c


def test_negative_word_counts():
    want = four_colour_counts(6)
    assert want == [1, 4, 14, 40, 105, 252, 574]
    assert [len(negative_words(n)) for n in range(7)] == want


def test_negative_words_are_canonical():
    for w in negative_words(4):
        assert pbw.is_canonical(w)
        assert all(r < 0 for r, _ in w)


def test_verma_dims_stabilise_far_below():
    # far below the top every word has room in the bottom layer
    V = verma(Q(1, 2), Q(1, 3), "+", N=4)
    for n in range(5):
        assert V.dim(-n - 1, n) == len(negative_words(n))
        assert V.dim(n + 1, n) == 0
        assert V.dim(n, n) == 1


def test_window_errors():
    V = verma(1, 0, "+", N=2, mwin=(-1, 1))
    with pytest.raises(WindowError):
        V.weight_basis(0, 3)
    with pytest.raises(WindowError):
        V.weight_basis(2, 0)
    with pytest.raises(WindowError):
        V.act_word(((-1, E_), (-1, E_)), V.ground(0))
    with pytest.raises(ValueError):
        verma(1, 0, "+", N=-1)


modes = st.tuples(st.integers(-2, 2), st.integers(0, 3))
modules = st.sampled_from([
    relaxed(Q(1, 2), Q(1, 3), Q(2, 7), k=Q(3, 5), N=8),
    verma(Q(2, 3), Q(1, 5), "+", k=Q(1), N=8),
    verma(Q(-3, 2), Q(1, 5), "-", k=Q(2), N=8),
    relaxed_reducible(2, Q(1, 3), "+", N=8),
])


@settings(max_examples=40)
@given(modules, modes, modes, st.integers(0, 2), st.integers(-1, 1), st.data())
def test_module_respects_brackets(M, x, y, n, m, data):
    basis = [b for mm in range(m - 1, m + 2) for b in M.weight_basis(mm, n)]
    b = data.draw(st.sampled_from(basis))
    v = {b: Q(1)}
    lhs = M.act(x, M.act(y, v, False), False)
    rhs = M.act(y, M.act(x, v, False), False)
    diff = dict(lhs)
    for key, val in rhs.items():
        nv = diff.get(key, 0) - val
        if nv:
            diff[key] = nv
        else:
            diff.pop(key, None)
    assert diff == M.act(pbw.bracket_element(x, y, M.k), v, False)


def test_sugawara_eigenvalue():
    M = relaxed(Q(1, 2), Q(1, 3), Q(2, 7), k=Q(3, 5), N=4)
    d0 = M.anchor_weight
    for m, n in [(0, 0), (1, 1), (-1, 2), (0, 2)]:
        for b in M.weight_basis(m, n)[:6]:
            assert M.sugawara(0, {b: Q(1)}) == {b: d0 + n}
    V = verma(Q(1, 2), Q(1, 3), "+", N=3)
    assert V.sugawara(1, V.ground()) == {}
    assert V.sugawara(0, V.ground()) == {((), 0): V.anchor_weight}


def test_vacuum_kernels():
    Vac = vacuum(0, N=3)
    assert rhw_kernel(Vac, 0, 0, "relaxed") == [{((), 0): 1}]
    # the level pairs I_{-1} with J_1 and J_{-1} with itself, so nothing survives at grade 1
    assert rhw_kernel_dim(Vac, 0, 1, "relaxed") == 0
    assert rhw_kernel_dim(Vac, 0, 1, "singular") == 0


def test_singular_vector_cells():
    V = verma(2, Q(1, 3), "+", N=4)
    assert rhw_kernel_dim(V, 1, 2) == 1
    assert rhw_kernel_dim(V, 1, 1) == 0
    assert rhw_kernel_dim(V, 2, 4) == 1
    V = verma(Q(1, 2), Q(1, 3), "+", N=3)
    assert all(rhw_kernel_dim(V, m, n) == 0 for n in range(1, 4) for m in range(-n - 1, n + 2))


@pytest.mark.parametrize("i", [1, 2, -1])
def test_generated_submodule_quotient(i):
    V = verma(i, Q(1, 3), "+", N=4)
    w = (-3, 3)
    sub = generated_submodule_table(V, rhw_kernel(V, 1 if i > 0 else -1, abs(i)), w, 4)
    q = quotient_table(V, sub)
    assert q.same_cells(irreducible_dims(V, w, 4), w, (0, 4))
    assert q.same_cells(expand(Label("L+", i, Q(1, 3)), w, 4), w, (0, 4))


def test_weight_table_round_trip():
    t = weight_table(verma(1, Q(1, 3), "+", N=2), (-2, 2), 2)
    assert isinstance(t, WeightTable)
    assert t.dim(0, 0) == 1 and t.dim(1, 1) == 1 and t.dim(0, 1) == 3 and t.dim(-2, 2) == 14
    assert t.dim(0, -1) == 0
    with pytest.raises(KeyError):
        t.dim(-5, 5)
    js = t.to_json()
    assert js == weight_table(verma(1, Q(1, 3), "+", N=2), (-2, 2), 2).to_json()


def test_twist_labels():
    lab = Label("V+", 2, Q(1, 3))
    c = AutomorphismSpec.conj()
    assert twist_label(c, lab) == Label("V-", -2, Q(-1, 3))
    assert twist_label(c, twist_label(c, lab)) == lab
    assert twist_label(AutomorphismSpec.sflow(1), Label("L0", 0, Q(1, 3), 0)) == Label("L+", 1, Q(1, 3))
    back = twist_label(AutomorphismSpec.sflow(-1), Label("L+", 1, Q(1, 3)))
    assert back == Label("L0", 0, Q(1, 3), 0)
    assert twist_label(AutomorphismSpec.ashift(Q(1, 2)), Label("E", 1, Q(1, 3), Q(2, 7))) == Label(
        "E", 1, Q(5, 6), Q(2, 7) + Q(1, 2))
