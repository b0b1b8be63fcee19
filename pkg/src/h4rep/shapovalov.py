"""Shapovalov forms on induced modules.

The form is normalised on a cyclic generator ``|g>`` of the bottom layer and
made contravariant with respect to ``E_n^+ = F_-n``, ``F_n^+ = E_-n``,
``I_n^+ = I_-n``, ``J_n^+ = J_-n``.  Distinct ``J_0``-eigenspaces are
orthogonal, so each cell ``(m, n)`` has its own Gram matrix.

To make entries polynomial in the weight parameter the bottom layer is
rebased around ``g``: states below ``g`` are ``F_0``-powers of ``|g>`` and
states above are ``E_0``-powers, each with coefficient 1.  Only the products
``e(s) f(s+1)`` of the original layer enter, so the rebased layer is
isomorphic to the original one wherever those products are nonzero; when one
vanishes, the direction of the zero is fixed by which side of the link ``g``
sits on, as for a cyclic generator.  A basis vector ``(W, s)`` is then exactly
``W F_0^{g-s} |g>`` (or ``W E_0^{s-g} |g>``).

Gram rows are computed recursively: for ``b = w1 . b'`` with ``w1`` the
leftmost mode, ``<b, x> = <b', w1^+ x>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import flint

from . import affinepbw as pbw
from .affinepbw import E_, F_, I_, J_, ONE, ZERO, word_charge
from .affmodules import InducedModule, WeightTable, basis_key, negative_words
from .exactalg import T, ExactMatrix, Poly, as_scalar, rank
from .h4finite import ParameterError, build_module


class GeneratorError(ParameterError):
    """The requested generator does not generate the module."""


def _fq(x):
    return flint.fmpq(x.numerator, x.denominator)


class CyclicBottom:
    """Bottom layer rebased around the generator offset ``g``."""

    def __init__(self, base, g: int):
        if not base.has_state(g):
            raise GeneratorError(f"bottom layer has no state at offset {g}")
        self.base = base
        self.g = g
        self.kind = base.kind
        self.i, self.j, self.h = base.i, base.j, base.h

    def has_state(self, s):
        return self.base.has_state(s)

    def jval(self, s):
        return self.j + s

    def e(self, s):
        if not (self.has_state(s) and self.has_state(s + 1)):
            return ZERO
        return self.base.link(s) if s + 1 <= self.g else ONE

    def f(self, s):
        if not (self.has_state(s) and self.has_state(s - 1)):
            return ZERO
        return ONE if s <= self.g else self.base.link(s - 1)

    def link(self, s):
        return self.e(s) * self.f(s + 1)

    def norm(self, s):
        """``<s|s>`` given ``<g|g> = 1``."""
        val = ONE
        lo, hi = (s, self.g) if s < self.g else (self.g, s)
        for t in range(lo, hi):
            val = val * self.base.link(t)
        return val


def default_generator(bottom) -> int:
    """A cyclic generator offset for the bottom layer."""
    if bottom.kind == "dense-plus":
        return 1  # any state strictly above h/i
    if bottom.kind == "dense-zero":
        raise GeneratorError("the dense module with i = h = 0 is not cyclic on any state")
    return 0


def _check_generator(bottom, g):
    if bottom.kind == "dense-plus" and g < 1:
        raise GeneratorError("for R^+ the generator must lie strictly above h/i")
    if bottom.kind == "dense-minus" and g > 0:
        raise GeneratorError("for R^- the generator must lie at or below h/i")
    if bottom.kind == "dense-zero":
        raise GeneratorError("the dense module with i = h = 0 is not cyclic on any state")


class ShapovalovForm:
    """Gram matrices of one form (fixed generator) on an induced module."""

    def __init__(self, module: InducedModule, generator: int | None = None):
        base = module.bottom
        g = default_generator(base) if generator is None else generator
        _check_generator(base, g)
        self.base_module = module
        self.g = g
        self.bottom = CyclicBottom(base, g)
        self.M = InducedModule(self.bottom, module.k, module.N, None)
        self.symbolic = isinstance(base.j, Poly) or any(isinstance(x, Poly) for x in (base.i, base.h))
        self._gram: dict = {}
        self._basis: dict = {}

    def basis(self, m, n):
        key = (m, n)
        if key not in self._basis:
            out = [(w, m - word_charge(w)) for w in negative_words(n) if self.bottom.has_state(m - word_charge(w))]
            out.sort(key=basis_key)
            self._basis[key] = out
        return self._basis[key]

    def _action(self, md, src, tgt_cell):
        tgt = self.basis(*tgt_cell)
        pos = {b: r for r, b in enumerate(tgt)}
        cols = []
        for b in src:
            im = self.M.act_mode(md, {b: ONE}, check=False)
            cols.append({pos[k]: v for k, v in im.items()})
        return cols, len(tgt)

    def gram(self, m: int, n: int):
        """Gram matrix of cell ``(m, n)``; flint ``fmpq_mat`` or list of lists when symbolic."""
        key = (m, n)
        if key in self._gram:
            return self._gram[key]
        basis = self.basis(m, n)
        size = len(basis)
        if n == 0:
            val = self.bottom.norm(basis[0][1]) if basis else ONE
            K = [[val]] if basis else []
            out = K if self.symbolic else flint.fmpq_mat(size, size, [_fq(val)] if basis else [])
            self._gram[key] = out
            return out
        groups: dict = {}
        for r, (w, s) in enumerate(basis):
            groups.setdefault(w[0], []).append(r)
        if self.symbolic:
            K = [[ZERO] * size for _ in range(size)]
        else:
            K = flint.fmpq_mat(size, size)
        for w1, rows in groups.items():
            sub_cell = (m - _charge(w1), n + w1[0])
            Kp = self.gram(*sub_cell)
            sub_basis = self.basis(*sub_cell)
            sub_pos = {b: r for r, b in enumerate(sub_basis)}
            cols, _ = self._action(pbw.adjoint_mode(w1), basis, sub_cell)
            prow = [sub_pos[(basis[r][0][1:], basis[r][1])] for r in rows]
            if self.symbolic:
                for r, pr in zip(rows, prow):
                    krow = Kp[pr]
                    for c, col in enumerate(cols):
                        acc = ZERO
                        for t, v in col.items():
                            if krow[t]:
                                acc = acc + krow[t] * v
                        K[r][c] = acc
            else:
                A = flint.fmpq_mat(len(rows), len(sub_basis), [Kp[pr, t] for pr in prow for t in range(len(sub_basis))])
                Mx = flint.fmpq_mat(len(sub_basis), size)
                for c, col in enumerate(cols):
                    for t, v in col.items():
                        Mx[t, c] = _fq(v)
                B = A * Mx
                for a, r in enumerate(rows):
                    for c in range(size):
                        K[r, c] = B[a, c]
        self._gram[key] = K
        return K

    def matrix(self, m, n) -> ExactMatrix:
        K = self.gram(m, n)
        size = len(self.basis(m, n))
        if self.symbolic:
            return ExactMatrix(K, size)
        return ExactMatrix([[Fraction(int(K[r, c].p), int(K[r, c].q)) for c in range(size)] for r in range(size)], size)

    def rank(self, m, n) -> int:
        size = len(self.basis(m, n))
        if size == 0:
            return 0
        if self.symbolic:
            return rank(self.matrix(m, n))
        return self.gram(m, n).rank()


def _charge(md):
    return 1 if md[1] == E_ else -1 if md[1] == F_ else 0


# ---------------------------------------------------------------- interface

@dataclass
class ShapovalovMatrix:
    context: dict
    cell: tuple
    basis: list
    entries: ExactMatrix

    def is_symmetric(self) -> bool:
        return self.entries.is_symmetric()

    def rank(self) -> int:
        return rank(self.entries) if self.entries.nrows else 0


def family_module(family: str, i=0, j=0, h=None, k=ONE, N=6) -> InducedModule:
    """Induced module for a family name used across the package.

    ``verma+``, ``verma-``, ``vacuum`` (one-dimensional bottom), ``relaxed``
    (irreducible dense bottom), ``relaxed+``, ``relaxed-`` (reducible dense
    bottoms with ``j = h/i``) and ``relaxed0`` (``i = h = 0``).
    """
    kinds = {
        "verma+": "hw-verma",
        "verma-": "lw-verma",
        "vacuum": "one-dim",
        "relaxed": "dense-irr",
        "relaxed+": "dense-plus",
        "relaxed-": "dense-minus",
        "relaxed0": "dense-zero",
    }
    if family not in kinds:
        raise ParameterError(f"unknown family {family!r}")
    kind = kinds[family]
    jj = None if kind in ("dense-plus", "dense-minus") else j
    return InducedModule(build_module(kind, i, jj, h), k, N)


def shap_matrix(module: InducedModule, m: int, n: int, generator: int | None = None) -> ShapovalovMatrix:
    """Gram matrix of cell ``(m, n)`` with a fixed generator (default per family)."""
    form = ShapovalovForm(module, generator)
    return ShapovalovMatrix(
        {"i": module.i, "j": module.j, "h": module.bottom.h, "k": module.k, "generator": form.g},
        (m, n),
        form.basis(m, n),
        form.matrix(m, n),
    )


def symbolic_matrix(i, h, n: int, k=ONE, family="relaxed") -> ShapovalovMatrix:
    """Gram matrix of the cell of charge ``j`` and grade ``n``, generator at ``j + n``, ``j`` formal.

    The formal parameter is the ``J_0``-eigenvalue of the cell.  Only the
    irreducible dense family is supported.
    """
    if family != "relaxed":
        raise ParameterError("symbolic mode supports the relaxed family")
    bottom = build_module("dense-irr", i, T, h)
    g = n
    M = InducedModule(bottom, k, n)
    form = ShapovalovForm(M, g)
    return ShapovalovMatrix({"i": i, "h": h, "k": k, "generator": g}, (0, n), form.basis(0, n), form.matrix(0, n))


# ------------------------------------------------------------ rank tables

def rank_table(module: InducedModule, mrange, nmax, generator=None, kernel=False) -> WeightTable:
    """Per-cell rank (or kernel dimension) of the form on the window."""
    form = ShapovalovForm(module, generator)
    cells = {}
    for n in range(nmax + 1):
        for m in range(mrange[0], mrange[1] + 1):
            r = form.rank(m, n)
            cells[(m, n)] = len(form.basis(m, n)) - r if kernel else r
    return WeightTable(module.i, module.j, module.anchor_weight, cells, z_uniform=False)


def irreducible_dims(module: InducedModule, mrange, nmax, generator=None) -> WeightTable:
    """Dimensions of the irreducible quotient: the rank of the form on each cell."""
    t = rank_table(module, mrange, nmax, generator)
    t.z_uniform = module.is_dense() and t.check_uniform()
    return t


def cell_report(module: InducedModule, mrange, nmax, generator=None) -> list[dict]:
    form = ShapovalovForm(module, generator)
    out = []
    for n in range(nmax + 1):
        for m in range(mrange[0], mrange[1] + 1):
            d = len(form.basis(m, n))
            r = form.rank(m, n)
            out.append({"m": m, "n": n, "dim_verma": d, "rank": r, "kernel_dim": d - r})
    return out


# --------------------------------------------------------- string functions

@dataclass
class StringFunction:
    delta0: Fraction
    coeffs: tuple

    def to_json(self):
        from .exactalg import format_rational

        return {"delta0": format_rational(self.delta0), "coeffs": list(self.coeffs)}


class StabilityError(ArithmeticError):
    pass


def limit_string_coeffs(i, h, qmax: int, offset: int, k=ONE) -> tuple:
    """Grade ``0..qmax`` dimensions of ``L^-_{i,h/i+1}`` at ``J_0 = h/i + offset``.

    Dimensions come from the rank of the form on the lowest-weight Verma module.
    """
    i, h = as_scalar(i), as_scalar(h)
    V = InducedModule(build_module("lw-verma", i, h / i + 1), k, qmax)
    form = ShapovalovForm(V)
    m = offset - 1
    return tuple(form.rank(m, d) for d in range(qmax + 1))


def string_function(i, h, qmax: int = 6, k=ONE) -> StringFunction:
    """Limiting string function of the irreducible relaxed module with labels ``i != 0, h``.

    Read at ``J_0 = h/i + qmax + 1`` and re-read at ``qmax + 2``; the two must agree.
    """
    i, h = as_scalar(i), as_scalar(h)
    if i == 0:
        raise ParameterError("the limit procedure needs i != 0")
    a = limit_string_coeffs(i, h, qmax, qmax + 1, k)
    b = limit_string_coeffs(i, h, qmax, qmax + 2, k)
    if a != b:
        raise StabilityError(f"string coefficients not stable: {a} vs {b}")
    return StringFunction(pbw.relaxed_conformal_weight(i, h, k), a)


def rank_string(module: InducedModule, qmax: int, m: int = 0, generator=None) -> tuple:
    form = ShapovalovForm(module, generator)
    return tuple(form.rank(m, d) for d in range(qmax + 1))


# ------------------------------------------------- zero-charge triangularity

def triangular_order(basis):
    def key(b):
        w, s = b
        nj = sum(1 for _, g in w if g == J_)
        ni = sum(1 for _, g in w if g == I_)
        return (nj, -ni, basis_key(b))

    return sorted(basis, key=key)


@dataclass
class TriangularityReport:
    j: Fraction
    h: Fraction
    cells: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["upper_triangular"] and c["diagonal_h"] and c["full_rank"] for c in self.cells)


def triangularity_check(j, h, nmax: int = 4, mrange=(0, 0), k=ONE) -> TriangularityReport:
    """``F_0 E_0`` is upper-triangular with diagonal ``h`` on every cell and the form has full rank."""
    j, h = as_scalar(j), as_scalar(h)
    if h == 0:
        raise ParameterError("the irreducibility check needs h != 0 (h = 0 gives a reducible module)")
    M = InducedModule(build_module("dense-irr", 0, j, h), k, nmax)
    form = ShapovalovForm(M)
    rep = TriangularityReport(j, h)
    for n in range(nmax + 1):
        for m in range(mrange[0], mrange[1] + 1):
            basis = triangular_order(M.weight_basis(m, n) if M.in_window(m, n) else form.basis(m, n))
            pos = {b: r for r, b in enumerate(basis)}
            size = len(basis)
            mat = [[ZERO] * size for _ in range(size)]
            for c, b in enumerate(basis):
                v = M.act_mode((0, E_), {b: ONE}, check=False)
                v = M.act_mode((0, F_), v, check=False)
                for key, val in v.items():
                    mat[pos[key]][c] = val
            upper = all(not mat[r][c] for r in range(size) for c in range(r))
            diag = all(mat[r][r] == h for r in range(size))
            rk = form.rank(m, n)
            rep.cells.append({"m": m, "n": n, "size": size, "upper_triangular": upper,
                              "diagonal_h": diag, "full_rank": rk == size, "matrix": mat})
    return rep
