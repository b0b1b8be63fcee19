"""Graded modules induced from h4 weight modules.

A vector is a dict ``{(word, s): coefficient}`` where ``word`` is a canonical
word in strictly negative modes and ``s`` is an offset of the bottom layer.
All zero-mode content lives in the offset: the bottom layer absorbs ``F_0`` and
``E_0``, so an induced basis is "negative words times bottom states".

Cells are labelled by ``(m, n)``: ``J_0``-charge ``j + m`` and grade ``n`` above
the bottom layer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import affinepbw as pbw
from .affinepbw import E_, F_, I_, J_, ONE, ZERO, word_charge, word_grade
from .exactalg import ExactMatrix, as_scalar, format_rational, rref, rational_rank_rows
from .h4finite import (
    AutomorphismSpec,
    FiniteWeightModule,
    Label,
    ParameterError,
    UncataloguedError,
    build_module,
)


class WindowError(ValueError):
    """An operation would leave the declared truncation window."""


# ------------------------------------------------------------------ words

@lru_cache(maxsize=None)
def negative_words(n: int) -> tuple:
    """All canonical words in strictly negative modes of total grade ``n``."""
    modes = [(-d, g) for d in range(n, 0, -1) for g in range(4)]
    modes.sort()
    out = []

    def rec(start, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(modes)):
            md = modes[idx]
            if -md[0] <= left:
                acc.append(md)
                rec(idx, left + md[0], acc)
                acc.pop()

    rec(0, n, [])
    return tuple(sorted(out))


def basis_key(b):
    w, s = b
    return (word_charge(w), w, s)


# ----------------------------------------------------------------- modules

@dataclass(frozen=True)
class InducedModule:
    """Affine induction of ``bottom`` at level ``k`` truncated at grade ``N``.

    ``mwin`` bounds the charge offsets ``m`` that operations may visit; ``None``
    leaves the charge unbounded.
    """

    bottom: FiniteWeightModule
    k: object = ONE
    N: int = 6
    mwin: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "k", as_scalar(self.k))
        if self.N < 0:
            raise ValueError("grade bound must be nonnegative")
        if self.mwin is not None and not (self.mwin[0] <= 0 <= self.mwin[1]):
            raise ValueError("charge window must contain the anchor")

    @property
    def i(self):
        return self.bottom.i

    @property
    def j(self):
        return self.bottom.j

    def in_window(self, m: int, n: int) -> bool:
        if n < 0 or n > self.N:
            return False
        return self.mwin is None or self.mwin[0] <= m <= self.mwin[1]

    def weight_basis(self, m: int, n: int) -> list:
        if not self.in_window(m, n):
            raise WindowError(f"cell ({m}, {n}) outside the window")
        out = []
        for w in negative_words(n):
            s = m - word_charge(w)
            if self.bottom.has_state(s):
                out.append((w, s))
        out.sort(key=basis_key)
        return out

    def dim(self, m: int, n: int) -> int:
        return len(self.weight_basis(m, n))

    # -------------------------------------------------------------- action

    def _bottom_act(self, tail, s):
        """Apply the zero modes of ``tail`` (right to left) to state ``s``."""
        c = ONE
        B = self.bottom
        for _, g in reversed(tail):
            if g == E_:
                c = c * B.e(s)
                s += 1
            elif g == F_:
                c = c * B.f(s)
                s -= 1
            elif g == J_:
                c = c * B.jval(s)
            else:
                c = c * B.i
            if not c:
                return None, s
        return c, s

    def act_mode(self, md, v: dict, check=True) -> dict:
        """``md . v`` for a single mode."""
        out: dict = {}
        k = self.k
        for (w, s), c in v.items():
            for t, c2 in pbw._left_mul(k, md, w):
                # split the canonical word at the first nonnegative mode
                cut = len(t)
                while cut and t[cut - 1][0] >= 0:
                    cut -= 1
                tail = t[cut:]
                if tail and tail[-1][0] > 0:
                    continue
                c3, s2 = self._bottom_act(tail, s) if tail else (ONE, s)
                if c3 is None:
                    continue
                key = (t[:cut], s2)
                val = out.get(key, ZERO) + c * c2 * c3
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        if check:
            for (w, s) in out:
                m, n = word_charge(w) + s, word_grade(w)
                if not self.in_window(m, n):
                    raise WindowError(f"result reaches cell ({m}, {n}) outside the window")
        return out

    def act(self, x, v: dict, check=True) -> dict:
        """Action of a mode, a word (applied right to left) or a :class:`UEAElement`."""
        if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], int):
            return self.act_mode(x, v, check)
        terms = x.terms if isinstance(x, pbw.UEAElement) else x
        out: dict = {}
        for w, c in terms.items():
            part = v
            for md in reversed(w):
                part = self.act_mode(md, part, check)
                if not part:
                    break
            for key, val in part.items():
                nv = out.get(key, ZERO) + c * val
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def act_word(self, word, v: dict, check=True) -> dict:
        for md in reversed(word):
            v = self.act_mode(md, v, check)
            if not v:
                break
        return v

    def sugawara(self, n: int, v: dict) -> dict:
        """``L_n . v``."""
        if not v:
            return {}
        grade = max(word_grade(w) for (w, _) in v)
        out: dict = {}
        for c, word in pbw.sugawara_terms(n, grade, self.k):
            part = self.act_word(word, v, check=False)
            for key, val in part.items():
                nv = out.get(key, ZERO) + c * val
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def ground(self, s: int = 0) -> dict:
        if not self.bottom.has_state(s):
            raise WindowError(f"bottom layer has no state at offset {s}")
        return {((), s): ONE}

    def action_matrix(self, md, m: int, n: int):
        """Matrix of ``md`` from cell ``(m, n)`` to its target cell, columns = source basis."""
        src = self.weight_basis(m, n)
        tm, tn = m + _mode_charge(md), n - md[0]
        tgt = self.weight_basis(tm, tn) if self.in_window(tm, tn) and tn >= 0 else []
        pos = {b: r for r, b in enumerate(tgt)}
        M = [[ZERO] * len(src) for _ in tgt]
        for c, b in enumerate(src):
            for key, val in self.act_mode(md, {b: ONE}, check=False).items():
                M[pos[key]][c] = val
        return M, src, tgt

    # ------------------------------------------------------------ labels

    @property
    def anchor_weight(self):
        """Conformal weight of the bottom layer."""
        B = self.bottom
        if B.kind == "hw-verma":
            return pbw.hw_conformal_weight(B.i, B.j, self.k)
        if B.kind == "lw-verma":
            return pbw.hw_conformal_weight(B.i, B.j, self.k, lowest=True)
        if B.kind == "one-dim":
            return ZERO
        return pbw.relaxed_conformal_weight(B.i, B.h, self.k)

    def is_dense(self) -> bool:
        return self.bottom.kind.startswith("dense")


def _mode_charge(md) -> int:
    return 1 if md[1] == E_ else -1 if md[1] == F_ else 0


# ----------------------------------------------------- family constructors

def verma(i, j, sign="+", k=ONE, N=6, mwin=None) -> InducedModule:
    kind = "hw-verma" if sign == "+" else "lw-verma"
    return InducedModule(build_module(kind, i, j), k, N, mwin)


def vacuum(j=0, k=ONE, N=6, mwin=None) -> InducedModule:
    """Induction of the one-dimensional module (``L_{0,j}``)."""
    return InducedModule(build_module("one-dim", 0, j), k, N, mwin)


def relaxed(i, j, h, k=ONE, N=6, mwin=None) -> InducedModule:
    return InducedModule(build_module("dense-irr", i, j, h), k, N, mwin)


def relaxed_reducible(i, h, sign="+", k=ONE, N=6, mwin=None) -> InducedModule:
    kind = "dense-plus" if sign == "+" else "dense-minus"
    return InducedModule(build_module(kind, i, None, h), k, N, mwin)


def relaxed_zero(j, k=ONE, N=6, mwin=None) -> InducedModule:
    return InducedModule(build_module("dense-zero", 0, j, 0), k, N, mwin)


# ------------------------------------------------------------ weight tables

@dataclass
class WeightTable:
    """Dimensions per cell ``(m, n)``.

    ``j0`` and ``delta0`` are the charge and conformal weight of cell ``(0, 0)``;
    the ``-c/24 = -1/6`` shift of the character is kept separately in
    :attr:`cshift`.  Below grade ``floor`` every dimension is zero.
    """

    i: object
    j0: object
    delta0: object
    cells: dict
    z_uniform: bool = False
    floor: int | None = 0
    cshift: Fraction = field(default=Fraction(-1, 6))

    def dim(self, m: int, n: int) -> int:
        if (m, n) in self.cells:
            return self.cells[(m, n)]
        if self.floor is not None and n < self.floor:
            return 0
        if self.z_uniform:
            for (mm, nn), d in self.cells.items():
                if nn == n:
                    return d
        raise KeyError(f"cell ({m}, {n}) not in table")

    def window(self):
        ms = [m for m, _ in self.cells]
        ns = [n for _, n in self.cells]
        return (min(ms), max(ms)), (min(ns), max(ns))

    def restrict(self, mrange, nrange) -> WeightTable:
        """Sub-table on ``mrange x nrange`` (inclusive bounds); raises if uncovered."""
        cells = {
            (m, n): self.dim(m, n)
            for m in range(mrange[0], mrange[1] + 1)
            for n in range(nrange[0], nrange[1] + 1)
        }
        return WeightTable(self.i, self.j0, self.delta0, cells, self.z_uniform, self.floor, self.cshift)

    def same_cells(self, other: WeightTable, mrange, nrange) -> bool:
        return all(
            self.dim(m, n) == other.dim(m, n)
            for m in range(mrange[0], mrange[1] + 1)
            for n in range(nrange[0], nrange[1] + 1)
        )

    def same_labels(self, other: WeightTable) -> bool:
        """Equal ``(i, j0, delta0)``; for z-uniform tables ``j0`` only matters modulo 1."""
        if self.z_uniform and other.z_uniform:
            d = Fraction(self.j0) - Fraction(other.j0)
            return (self.i, self.delta0) == (other.i, other.delta0) and d.denominator == 1
        return (self.i, self.j0, self.delta0) == (other.i, other.j0, other.delta0)

    def check_uniform(self) -> bool:
        rows = {}
        for (m, n), d in self.cells.items():
            if rows.setdefault(n, d) != d:
                return False
        return True

    def row(self, n: int) -> dict:
        return {m: d for (m, nn), d in sorted(self.cells.items()) if nn == n}

    # ----------------------------------------------------------- output

    def to_json(self) -> dict:
        def enc(x):
            return format_rational(x) if isinstance(x, Fraction) else str(x)

        return {
            "i": enc(self.i),
            "j0": enc(self.j0),
            "delta0": enc(self.delta0),
            "rows": [[m, n, d] for (m, n), d in sorted(self.cells.items(), key=lambda t: (t[0][1], t[0][0]))],
            "z_uniform": bool(self.z_uniform),
        }

    def dumps(self, fmt="json") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=1)
        if fmt == "csv":
            lines = ["m,n,dim"]
            for (m, n), d in sorted(self.cells.items(), key=lambda t: (t[0][1], t[0][0])):
                lines.append(f"{m},{n},{d}")
            return "\n".join(lines)
        return self.text()

    def text(self) -> str:
        (m0, m1), (n0, n1) = self.window()
        head = [f"i={format_rational(self.i)} j0={self.j0} delta0={format_rational(self.delta0)}"
                + (" z-uniform" if self.z_uniform else "")]
        width = max(4, max(len(str(d)) for d in self.cells.values()) + 1)
        head.append("n\\m".rjust(5) + "".join(str(m).rjust(width) for m in range(m0, m1 + 1)))
        for n in range(n0, n1 + 1):
            cells = []
            for m in range(m0, m1 + 1):
                cells.append(str(self.cells[(m, n)]).rjust(width) if (m, n) in self.cells else ".".rjust(width))
            head.append(str(n).rjust(5) + "".join(cells))
        return "\n".join(head)


def weight_table(M: InducedModule, mrange=None, nmax=None) -> WeightTable:
    """Brute-force dimension table by enumerating PBW bases."""
    nmax = M.N if nmax is None else nmax
    if mrange is None:
        mrange = M.mwin or (-nmax, nmax)
    cells = {}
    for n in range(0, nmax + 1):
        for m in range(mrange[0], mrange[1] + 1):
            cells[(m, n)] = len(_basis_nowin(M, m, n))
    return WeightTable(M.i, M.j, M.anchor_weight, cells, z_uniform=M.is_dense())


def _basis_nowin(M: InducedModule, m, n):
    return [(w, m - word_charge(w)) for w in negative_words(n) if M.bottom.has_state(m - word_charge(w))]


# ------------------------------------------------------ annihilator kernels

def annihilators(variant: str, n: int) -> list:
    """Modes whose joint kernel is the requested space of vectors at grade ``n``.

    ``singular``: ``E_0, F_1, J_1..J_n`` (these generate the positive part
    together with ``E_0``); ``singular-lw``: ``F_0, E_1, J_1..J_n``;
    ``relaxed``: ``E_1, F_1, I_1, J_1..J_n``.  The ``-full`` variants use every
    mode of index ``1..n`` instead of a generating set.
    """
    base, _, full = variant.partition("-full")
    if variant.endswith("-full"):
        mods = [(r, g) for r in range(1, n + 1) for g in range(4)]
        if base == "singular":
            mods.insert(0, (0, E_))
        elif base == "singular-lw":
            mods.insert(0, (0, F_))
        return mods
    js = [(r, J_) for r in range(1, n + 1)]
    if variant == "singular":
        return [(0, E_), (1, F_)] + js
    if variant == "singular-lw":
        return [(0, F_), (1, E_)] + js
    if variant == "relaxed":
        return [(1, E_), (1, F_), (1, I_)] + js
    raise ValueError(f"unknown annihilator variant {variant!r}")


def annihilation_rows(M: InducedModule, m: int, n: int, variant: str):
    basis = M.weight_basis(m, n)
    rows = []
    for md in annihilators(variant, n):
        images = [M.act_mode(md, {b: ONE}, check=False) for b in basis]
        keys = sorted({key for im in images for key in im}, key=basis_key)
        for key in keys:
            rows.append([im.get(key, ZERO) for im in images])
    return rows, basis


def rhw_kernel(M: InducedModule, m: int, n: int, variant: str = "singular") -> list:
    """Basis of the vectors in cell ``(m, n)`` killed by the annihilators of ``variant``."""
    if not M.in_window(m, n):
        raise WindowError(f"cell ({m}, {n}) outside the window")
    rows, basis = annihilation_rows(M, m, n, variant)
    if not basis:
        return []
    if not rows:
        return [{b: ONE} for b in basis]
    red = rref(ExactMatrix(rows, len(basis)))
    out = []
    for vec in red.kernel_vectors():
        out.append({b: c for b, c in zip(basis, vec) if c})
    return out


def rhw_kernel_dim(M: InducedModule, m: int, n: int, variant: str = "singular") -> int:
    rows, basis = annihilation_rows(M, m, n, variant)
    return len(basis) - rational_rank_rows(rows, len(basis))


def _span_add(span: list, pivots: list, v: dict) -> bool:
    """Reduce ``v`` against an echelon list; append and return True if independent."""
    v = dict(v)
    for (p, row) in zip(pivots, span):
        c = v.get(p)
        if c:
            for key, val in row.items():
                nv = v.get(key, ZERO) - c * val
                if nv:
                    v[key] = nv
                else:
                    v.pop(key, None)
    if not v:
        return False
    p = min(v, key=basis_key)
    c = v[p]
    span.append({key: val / c for key, val in v.items()})
    pivots.append(p)
    return True


def generated_submodule_table(M: InducedModule, seeds: list, mrange, nmax: int) -> WeightTable:
    """Dimensions of the submodule generated by weight vectors killed by all positive modes.

    The seeds are first closed under ``E_0`` and ``F_0`` inside their grade
    (``J_0`` and ``I_0`` act by scalars), then every cell is spanned by the
    images of that layer under the negative-mode PBW words.
    """
    if not seeds:
        cells = {(m, n): 0 for n in range(nmax + 1) for m in range(mrange[0], mrange[1] + 1)}
        return WeightTable(M.i, M.j, M.anchor_weight, cells)

    def cell_of(v):
        (w, s) = next(iter(v))
        return word_charge(w) + s, word_grade(w)

    n0 = cell_of(seeds[0])[1]
    if any(cell_of(v)[1] != n0 for v in seeds):
        raise ValueError("seeds must share one grade")
    lo, hi = mrange[0] - (nmax - n0), mrange[1] + (nmax - n0)
    layer: dict = {}
    queue = list(seeds)
    while queue:
        v = queue.pop()
        m = cell_of(v)[0]
        if not lo <= m <= hi:
            continue
        span, piv = layer.setdefault(m, ([], []))
        if not _span_add(span, piv, v):
            continue
        for md in ((0, E_), (0, F_)):
            img = M.act_mode(md, v, check=False)
            if img:
                queue.append(img)
    cells = {}
    for n in range(nmax + 1):
        for m in range(mrange[0], mrange[1] + 1):
            if n < n0:
                cells[(m, n)] = 0
                continue
            span, piv = [], []
            for w in negative_words(n - n0):
                src = layer.get(m - word_charge(w))
                if not src:
                    continue
                for v in src[0]:
                    _span_add(span, piv, M.act_word(w, v, check=False))
            cells[(m, n)] = len(span)
    return WeightTable(M.i, M.j, M.anchor_weight, cells)


def quotient_table(M: InducedModule, sub: WeightTable) -> WeightTable:
    """Cell-wise ``dim M - dim sub`` on the window of ``sub``."""
    cells = {(m, n): len(_basis_nowin(M, m, n)) - d for (m, n), d in sub.cells.items()}
    return WeightTable(M.i, M.j, M.anchor_weight, cells)


# ------------------------------------------------------------ label twists

def _norm_hw(fam, i, j):
    # L^+_{0,j} and L^-_{0,j} are both the induced one-dimensional module
    if fam in ("L+", "L-") and i == 0:
        return Label("L0", 0, j, 0)
    return Label(fam, i, j)


def _affine_twist_gen(g, lab: Label) -> Label:
    fam, i, j, h = lab.family, lab.i, lab.j, lab.h
    name = g[0]
    if name == "conj":
        if fam in ("V+", "V-", "L+", "L-"):
            other = fam[0] + ("-" if fam[1] == "+" else "+")
            return _norm_hw(other, -i, -j) if fam[0] == "L" else Label(other, -i, -j)
        if fam == "L0":
            return Label("L0", 0, -j, 0)
        if fam in ("E", "R"):
            return Label(fam, -i, -j, h + i)
        if fam in ("E+", "E-", "R+", "R-"):
            return Label(fam[0] + ("-" if fam[1] == "+" else "+"), -i, None, h + i)
        if fam == "R0":
            return Label("R0", 0, -j, 0)
    elif name in ("shift", "ashift"):
        b = g[1]
        if fam in ("V+", "V-", "L+", "L-", "L0"):
            return Label(fam, i, j + b, h)
        if fam in ("E", "R"):
            return Label(fam, i, j + b, h + b * i)
        if fam in ("E+", "E-", "R+", "R-"):
            return Label(fam, i, None, h + b * i)
        if fam == "R0":
            return Label("R0", 0, j + b, 0)
    elif name == "sflow":
        ell = g[1]
        if ell == 0:
            return lab
        if abs(ell) != 1:
            # compose unit steps; an intermediate failure means the image is not catalogued
            step = ("sflow", 1 if ell > 0 else -1)
            for _ in range(abs(ell)):
                lab = _affine_twist_gen(step, lab)
            return lab
        if fam == "L0":
            return Label("L+" if ell == 1 else "L-", ell, j)
        if fam in ("L+", "V+") and ell == -1:
            return _norm_hw(fam[0] + "-", i - 1, j) if fam[0] == "L" else Label("V-", i - 1, j)
        if fam in ("L-", "V-") and ell == 1:
            return _norm_hw(fam[0] + "+", i + 1, j) if fam[0] == "L" else Label("V+", i + 1, j)
    raise UncataloguedError(f"no recorded image of {lab} under {name}")


def twist_label(spec: AutomorphismSpec, label: Label) -> Label:
    """Image of an affine module label under the twist functor of ``spec``.

    ``shift`` here is the affine shift that moves ``J_0`` by a multiple of the
    level (it sends ``V^+_{i,j}`` to ``V^+_{i,j+beta}``).
    """
    for g in reversed(spec.word):
        label = _affine_twist_gen(g, label)
    return label


__all__ = [
    "InducedModule",
    "WeightTable",
    "WindowError",
    "ParameterError",
    "negative_words",
    "weight_table",
    "rhw_kernel",
    "rhw_kernel_dim",
    "generated_submodule_table",
    "quotient_table",
    "twist_label",
    "verma",
    "vacuum",
    "relaxed",
    "relaxed_reducible",
    "relaxed_zero",
]
