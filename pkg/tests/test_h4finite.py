from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from h4rep import h4finite as fin
from h4rep.h4finite import E, F, I, J, AutomorphismSpec, BilinearParams, Label, build_module

rat = st.fractions(min_value=-5, max_value=5, max_denominator=4)
elements = st.builds(fin.H4Element, rat, rat, rat, rat)
nonzero = rat.filter(bool)


def test_structure_constants():
    assert fin.bracket(E, F) == I
    assert fin.bracket(J, E) == E
    assert fin.bracket(J, F) == -F
    assert not fin.bracket(I, J) and not fin.bracket(I, E)


@given(elements, elements, elements)
def test_jacobi_and_antisymmetry(x, y, z):
    b = fin.bracket
    assert b(x, y) == -b(y, x)
    assert not (b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y)))


@given(elements, elements, elements, nonzero, rat)
def test_form_invariant_and_symmetric(x, y, z, a, bb):
    p = BilinearParams(a, bb)
    assert fin.kappa(x, y, p) == fin.kappa(y, x, p)
    assert fin.kappa(fin.bracket(x, y), z, p) == fin.kappa(x, fin.bracket(y, z), p)


def test_form_values():
    p = BilinearParams(1, 0)
    assert fin.kappa(E, F, p) == fin.kappa(I, J, p) == 1
    assert fin.kappa(J, J, p) == 0 and fin.kappa(E, E, p) == 0


specs = st.one_of(
    st.just(AutomorphismSpec.conj()),
    nonzero.map(AutomorphismSpec.rescale),
    rat.map(AutomorphismSpec.shift),
)


@given(specs, specs, elements, elements)
def test_automorphisms_preserve_bracket(s1, s2, x, y):
    phi = s1 @ s2
    ap = lambda u: fin.apply_automorphism(phi, u)  # noqa: E731
    assert ap(fin.bracket(x, y)) == fin.bracket(ap(x), ap(y))


@given(nonzero, rat, nonzero, rat)
def test_pullback_of_form(alpha, beta, a, b):
    p = BilinearParams(a, b)
    assert fin.pullback_params(AutomorphismSpec.rescale(alpha), p) == BilinearParams(a / alpha**2, b)
    assert fin.pullback_params(AutomorphismSpec.shift(beta), p) == BilinearParams(a, b - 2 * beta * a)
    assert fin.pullback_params(AutomorphismSpec.conj(), p) == p


def test_affine_generators_rejected_on_finite_algebra():
    with pytest.raises(fin.ParameterError):
        fin.apply_automorphism(AutomorphismSpec.sflow(1), E)


# ----------------------------------------------------------------- modules

MODULES = [
    ("hw-verma", Q(2, 3), Q(1, 5), None),
    ("lw-verma", Q(-3, 2), Q(1, 4), None),
    ("dense-irr", Q(3, 7), Q(1, 3), Q(2, 5)),
    ("dense-irr", Q(0), Q(1, 3), Q(2)),
    ("dense-plus", Q(2), None, Q(3)),
    ("dense-minus", Q(-1, 2), None, Q(5, 3)),
    ("dense-zero", Q(0), Q(1, 4), None),
]


def _mat(M, g, lo=-4, hi=4):
    return M.action_matrix(g, lo, hi)


def _mul(a, b):
    n = len(a)
    return [[sum(a[r][t] * b[t][c] for t in range(n)) for c in range(n)] for r in range(n)]


def _sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _interior(M, lo=-4, hi=4):
    # rows/cols away from the window edges, where products are not truncated
    st_ = M.states(lo, hi)
    return [n for n, s in enumerate(st_) if lo < s < hi]


@pytest.mark.parametrize("kind,i,j,h", MODULES)
def test_module_relations(kind, i, j, h):
    M = build_module(kind, i, j, h)
    e, f, ii, jj = (_mat(M, g) for g in "EFIJ")
    idx = _interior(M)
    ef = _sub(_mul(e, f), _mul(f, e))
    je = _sub(_mul(jj, e), _mul(e, jj))
    jf = _sub(_mul(jj, f), _mul(f, jj))
    for r in idx:
        for c in idx:
            assert ef[r][c] == ii[r][c]
            assert je[r][c] == e[r][c]
            assert jf[r][c] == -f[r][c]


@pytest.mark.parametrize("kind,i,j,h", MODULES)
def test_casimir_constant(kind, i, j, h):
    M = build_module(kind, i, j, h)
    vals = {M.casimir(s) for s in M.states(-4, 4)}
    assert len(vals) == 1
    assert vals.pop() == M.h


def test_build_errors():
    with pytest.raises(fin.ParameterError):
        build_module("one-dim", 1, 0)
    with pytest.raises(fin.ParameterError):
        build_module("dense-irr", 2, Q(1, 2), 3)  # h/i = 3/2 in j + Z
    with pytest.raises(fin.ParameterError):
        build_module("dense-plus", 2, Q(1, 3), 3)
    with pytest.raises(fin.ParameterError):
        build_module("dense-zero", 1, 0)
    with pytest.raises(fin.ParameterError):
        build_module("dense-irr", 0, Q(1, 3), 0)


def test_I_trivial_on_finite_dimensional():
    assert fin.check_I_trivial(build_module("one-dim", 0, Q(2)))
    with pytest.raises(fin.InapplicableError):
        fin.check_I_trivial(build_module("dense-irr", 1, Q(1, 3), Q(1, 2)))


def _inverse(spec):
    inv = []
    for g in reversed(spec.word):
        if g[0] == "conj":
            inv.append(g)
        elif g[0] == "rescale":
            inv.append(("rescale", 1 / g[1]))
        else:
            inv.append((g[0], -g[1]))
    return AutomorphismSpec(tuple(inv))


def _twisted(M, spec, lo=-4, hi=4):
    inv = _inverse(spec)
    mats = {g: _mat(M, g, lo, hi) for g in "EFIJ"}

    def op(x):
        y = fin.apply_automorphism(inv, x)
        n = len(mats["E"])
        out = [[Q(0)] * n for _ in range(n)]
        for c, g in zip(y.coeffs(), "EFIJ"):
            if c:
                out = [[a + c * b for a, b in zip(r, s)] for r, s in zip(out, mats[g])]
        return out

    return {g: op(x) for g, x in zip("EFIJ", (E, F, I, J))}


@pytest.mark.parametrize("spec", [AutomorphismSpec.conj(), AutomorphismSpec.rescale(Q(3, 2)), AutomorphismSpec.shift(Q(1, 3)),
                                  AutomorphismSpec.shift(2) @ AutomorphismSpec.conj()])
@pytest.mark.parametrize("kind,i,j,h", [m for m in MODULES if m[0] not in ("dense-zero",)])
def test_twisted_action_matches_label(spec, kind, i, j, h):
    M = build_module(kind, i, j, h)
    lab = fin.twist_labels(spec, M.label)
    T = _twisted(M, spec)
    idx = _interior(M)
    # I is scalar, Casimir is scalar
    i2 = {T["I"][r][r] for r in idx}
    assert i2 == {lab.i}
    q = [[a + b for a, b in zip(r, s)] for r, s in zip(_mul(T["F"], T["E"]), _mul(T["I"], T["J"]))]
    cas = {q[r][r] for r in idx}
    assert len(cas) == 1
    twisted = build_module(
        {"V+": "hw-verma", "V-": "lw-verma", "R": "dense-irr", "R+": "dense-plus", "R-": "dense-minus", "L0": "one-dim"}[lab.family],
        lab.i, None if lab.family in ("R+", "R-") else lab.j, lab.h)
    assert cas.pop() == twisted.h
    # J eigenvalues agree modulo Z; for Vermas the extremal vector has the labelled charge
    jvals = {T["J"][r][r] for r in idx}
    assert all((v - lab.j).denominator == 1 for v in jvals)
    if lab.family in ("V+", "V-"):
        kill = T["E"] if lab.family == "V+" else T["F"]
        n0 = M.states(-4, 4).index(0)
        assert not any(row[n0] for row in kill)
        assert T["J"][n0][n0] == lab.j


@given(rat, rat, rat)
def test_conj_twice_is_identity_on_labels(i, j, h):
    spec = AutomorphismSpec.conj() @ AutomorphismSpec.conj()
    for lab in (Label("V+", i, j), Label("V-", i, j), Label("R", i, j, h)):
        assert fin.twist_labels(spec, lab) == lab
