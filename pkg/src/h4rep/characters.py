"""Closed-form characters expanded into weight tables, and their twists.

A character ``sum dim(m, n) y^i z^(j0+m) q^(delta0+n-1/6)`` is stored as a
:class:`WeightTable`.  The product formulas are expanded directly as
two-variable truncated series, with the geometric-series convention
``1/(1-x) = sum_{p>=0} x^p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import affinepbw as pbw
from .affmodules import WeightTable, WindowError
from .exactalg import as_scalar, format_rational
from .h4finite import AutomorphismSpec, Label, ParameterError

ONE = Fraction(1)


# ------------------------------------------------------------------ QSeries

@dataclass(frozen=True)
class QSeries:
    """Truncated series ``q^offset * sum_{d<=qmax} c_d q^d``."""

    coeffs: tuple
    qmax: int
    offset: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if self.qmax < 0:
            raise ValueError("qmax must be nonnegative")
        c = tuple(Fraction(x) for x in self.coeffs[: self.qmax + 1])
        c = c + (Fraction(0),) * (self.qmax + 1 - len(c))
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "offset", as_scalar(self.offset))

    @classmethod
    def one(cls, qmax):
        return cls((1,), qmax)

    def _check(self, o):
        if self.qmax != o.qmax:
            raise ValueError("truncation orders differ")

    def __add__(self, o):
        self._check(o)
        if self.offset != o.offset:
            raise ValueError("offsets differ")
        return QSeries(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)), self.qmax, self.offset)

    def __mul__(self, o):
        if not isinstance(o, QSeries):
            o = as_scalar(o)
            return QSeries(tuple(o * a for a in self.coeffs), self.qmax, self.offset)
        self._check(o)
        out = [Fraction(0)] * (self.qmax + 1)
        for a, x in enumerate(self.coeffs):
            if x:
                for b in range(self.qmax + 1 - a):
                    out[a + b] += x * o.coeffs[b]
        return QSeries(tuple(out), self.qmax, self.offset + o.offset)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QSeries.one(self.qmax)
        for _ in range(e):
            out = out * self
        return out

    def ints(self) -> tuple:
        return tuple(int(c) for c in self.coeffs)

    def to_json(self):
        return {"offset": format_rational(self.offset), "qmax": self.qmax,
                "coeffs": [format_rational(c) for c in self.coeffs]}


def inverse_product(power: int, qmax: int) -> QSeries:
    """``prod_{n>=1} (1 - q^n)^(-power)`` truncated at ``q^qmax``."""
    c = [Fraction(0)] * (qmax + 1)
    c[0] = ONE
    for n in range(1, qmax + 1):
        for _ in range(power):
            for d in range(n, qmax + 1):
                c[d] += c[d - n]
    return QSeries(tuple(c), qmax)


def eta_inv4(qmax: int) -> QSeries:
    """``eta(q)^-4`` with the ``-c/24 = -1/6`` exponent kept in the offset."""
    s = inverse_product(4, qmax)
    return QSeries(s.coeffs, qmax, Fraction(-1, 6))


@lru_cache(maxsize=None)
def relaxed_row(qmax: int) -> tuple:
    return inverse_product(4, qmax).ints()


# ------------------------------------------------------- two-variable series

def _times_geometric(series: dict, a: int, b: int, zlo: int, zhi: int, qmax: int) -> dict:
    """``series / (1 - z^a q^b)`` on the box, by ordered recursion ``out[t] = s[t] + out[t - (a,b)]``."""
    keys_m = range(zlo, zhi + 1)
    out: dict = {}
    ms = list(keys_m) if a >= 0 else list(reversed(keys_m))
    for n in range(qmax + 1):
        for m in ms:
            v = series.get((m, n), 0)
            prev = (m - a, n - b)
            if prev[1] >= 0 and zlo <= prev[0] <= zhi:
                v += out.get(prev, 0)
            if v:
                out[(m, n)] = v
    return out


def _times_poly(series: dict, terms, zlo, zhi, qmax) -> dict:
    """Multiply by ``sum c z^a q^b`` over ``terms = [(c, a, b)]``."""
    out: dict = {}
    for (m, n), v in series.items():
        for c, a, b in terms:
            t = (m + a, n + b)
            if t[1] <= qmax and zlo <= t[0] <= zhi:
                out[t] = out.get(t, 0) + c * v
    return {t: v for t, v in out.items() if v}


def product_table(factors, mrange, qmax, prefactor=None) -> dict:
    """Expand ``prefactor * prod 1/(1 - z^a q^b)`` over the window.

    ``factors`` lists ``(a, b, count)`` with ``b >= 0``; ``count`` may be
    ``None`` meaning ``n = 1, 2, ...`` with ``b`` the offset of ``q^(n+b)``.
    Intermediate charges are kept in a margin of ``qmax`` around the window,
    which suffices because every factor with ``q``-degree zero is applied first
    and all others change the charge by at most their degree.
    """
    zlo, zhi = mrange[0] - qmax, mrange[1] + qmax
    s = {(0, 0): 1}
    flat = []
    for a, b, count in factors:
        if count is None:
            flat.extend((a, b + n) for n in range(1, qmax + 1 - b) if b + n >= 0)
        else:
            flat.extend([(a, b)] * count)
    flat.sort(key=lambda t: t[1])
    for a, b in flat:
        if b > qmax:
            continue
        s = _times_geometric(s, a, b, zlo, zhi, qmax)
    if prefactor:
        s = _times_poly(s, prefactor, zlo, zhi, qmax)
    return {
        (m, n): s.get((m, n), 0)
        for n in range(qmax + 1)
        for m in range(mrange[0], mrange[1] + 1)
    }


# ------------------------------------------------------------ closed forms

def _sgn(x):
    return (x > 0) - (x < 0)


def _is_int(x):
    return Fraction(x).denominator == 1


@dataclass(frozen=True)
class ClosedFormChar:
    """A catalogued character formula for one module label at level ``k``."""

    label: Label
    k: Fraction = ONE

    def recipe(self) -> str:
        lab = self.label
        fam, i = lab.family, lab.i
        vp = "1/prod (1-z^-1 q^(n-1))(1-q^n)^2(1-z q^n)"
        vm = "1/prod (1-z q^(n-1))(1-q^n)^2(1-z^-1 q^n)"
        if fam == "V+":
            return vp
        if fam == "V-":
            return vm
        if fam == "L0" or (fam in ("L+", "L-") and i == 0):
            return "1/prod (1-z^-1 q^n)(1-q^n)^2(1-z q^n)"
        if fam in ("L+", "L-"):
            base = vp if fam == "L+" else vm
            if _is_int(i):
                s = "" if i > 0 else "^-1"
                return f"(1-z{s} q^{abs(int(i))}) {base}"
            return base
        if fam in ("R", "R+", "R-", "R0"):
            return "delta(z)/eta^4"
        if fam == "E":
            if i != 0 and _is_int(i):
                return f"(1-q^{abs(int(i))}) delta(z)/eta^4"
            return "delta(z)/eta^4"
        if fam in ("E+", "E-"):
            return "L^+ + L^-" if _is_int(i) else "delta(z)/eta^4"
        raise ParameterError(f"no closed form for {fam}")


def anchor(label: Label, k=ONE):
    """``(j0, delta0)`` of cell ``(0, 0)`` for the label's table."""
    fam, i, j, h = label.family, label.i, label.j, label.h
    k = as_scalar(k)
    if fam in ("V+", "L+"):
        return j, pbw.hw_conformal_weight(i, j, k)
    if fam in ("V-", "L-"):
        return j, pbw.hw_conformal_weight(i, j, k, lowest=True)
    if fam == "L0":
        return j, Fraction(0)
    if fam in ("R+", "R-", "E+", "E-"):
        return h / i, pbw.relaxed_conformal_weight(i, h, k)
    return j, pbw.relaxed_conformal_weight(i, h, k)


def _verma_cells(sign, mrange, qmax, prefactor=None):
    s = -1 if sign == "+" else 1
    return product_table([(s, -1, None), (0, 0, None), (0, 0, None), (-s, 0, None)], mrange, qmax, prefactor)


def expand(c, mrange=(-6, 6), qmax: int = 6) -> WeightTable:
    """Expand a closed form (``ClosedFormChar`` or ``Label``) on the window."""
    if isinstance(c, Label):
        c = ClosedFormChar(c)
    lab, k = c.label, as_scalar(c.k)
    fam, i = lab.family, lab.i
    if qmax < 0:
        raise ValueError("qmax must be nonnegative")
    c.recipe()  # rejects uncatalogued families
    j0, d0 = anchor(lab, k)
    uniform = False
    if fam in ("V+", "V-"):
        cells = _verma_cells(fam[1], mrange, qmax)
    elif fam == "L0" or (fam in ("L+", "L-") and i == 0):
        cells = product_table([(-1, 0, None), (0, 0, None), (0, 0, None), (1, 0, None)], mrange, qmax)
    elif fam in ("L+", "L-"):
        pre = [(1, 0, 0), (-1, _sgn(i), abs(int(i)))] if _is_int(i) else None
        cells = _verma_cells(fam[1], mrange, qmax, pre)
    elif fam in ("E+", "E-") and _is_int(i):
        # both reducible families carry L^+_{i,h/i} at m = 0 and L^-_{i,h/i+1} at m = 1
        lo = expand(Label("L+", i, lab.h / i), mrange, qmax)
        hi = expand(Label("L-", i, lab.h / i + 1), (mrange[0] - 1, mrange[1] - 1), qmax)
        cells = {(m, n): lo.cells[(m, n)] + hi.cells[(m - 1, n)] for (m, n) in lo.cells}
    else:
        row = list(relaxed_row(qmax))
        if fam == "E" and i != 0 and _is_int(i):
            d = abs(int(i))
            row = [row[n] - (row[n - d] if n >= d else 0) for n in range(qmax + 1)]
        cells = {(m, n): row[n] for n in range(qmax + 1) for m in range(mrange[0], mrange[1] + 1)}
        uniform = True
    return WeightTable(i, j0, d0, cells, uniform)


# ---------------------------------------------------------------- twisting

def _twist_gen(g, t: WeightTable, k) -> tuple:
    """Image of ``(i, j0, delta0)`` and the cell map ``(m, n) -> (m', n')``."""
    name = g[0]
    if name == "conj":
        return (-t.i, -t.j0, t.delta0), (lambda m, n: (-m, n)), (lambda m, n: (-m, n)), t.z_uniform, t.floor
    if name == "ashift":
        b = as_scalar(g[1])
        return (t.i, t.j0 + b * k, t.delta0 + b * t.i), (lambda m, n: (m, n)), (lambda m, n: (m, n)), t.z_uniform, t.floor
    if name == "sflow":
        ell = int(g[1])
        if ell == 0:
            return (t.i, t.j0, t.delta0), (lambda m, n: (m, n)), (lambda m, n: (m, n)), t.z_uniform, t.floor
        return ((t.i + ell * k, t.j0, t.delta0 + ell * t.j0),
                (lambda m, n: (m, n + ell * m)), (lambda m, n: (m, n - ell * m)), False, None)
    raise ParameterError(f"{name} acts on labels but not on characters as a re-indexing; use ashift or sflow")


def twist_table(spec: AutomorphismSpec, t: WeightTable, mrange=None, nrange=None, k=ONE) -> WeightTable:
    """Character of the twisted module, filled on the target window by preimage lookup.

    ``conj`` sends ``(y, z) -> (1/y, 1/z)``; ``ashift(beta)`` multiplies by
    ``z^(beta k)`` and sends ``y -> y q^beta``; ``sflow(l)`` multiplies by
    ``y^(l k)`` and sends ``z -> z q^l``.  The label ``shift`` is read as
    ``ashift``.  Cells whose preimage is not known raise :class:`WindowError`.
    """
    k = as_scalar(k)
    if mrange is None or nrange is None:
        (m0, m1), (n0, n1) = t.window()
        mrange = mrange or (m0, m1)
        nrange = nrange or (n0, n1)
    gens = [("ashift",) + tuple(g[1:]) if g[0] == "shift" else g for g in spec.word]
    # cell (m, n) of the final table pulls back through the generators in order
    labels = []
    cur = t
    for g in reversed(gens):
        (i, j0, d0), fwd, back, uni, floor = _twist_gen(g, cur, k)
        labels.append((back, cur))
        cur = WeightTable(i, j0, d0, {}, uni, floor, cur.cshift)
    cells = {}
    for n in range(nrange[0], nrange[1] + 1):
        for m in range(mrange[0], mrange[1] + 1):
            mm, nn = m, n
            for back, _ in reversed(labels):
                mm, nn = back(mm, nn)
            try:
                cells[(m, n)] = t.dim(mm, nn)
            except KeyError as exc:
                raise WindowError(f"preimage ({mm}, {nn}) of cell ({m}, {n}) not in the source table") from exc
    floor = cur.floor if cur.floor is not None else None
    return WeightTable(cur.i, cur.j0, cur.delta0, cells, cur.z_uniform, floor, cur.cshift)


def min_grade(t: WeightTable) -> dict:
    """Lowest grade carrying a nonzero dimension, per charge."""
    out = {}
    for (m, n), d in sorted(t.cells.items()):
        if d and m not in out:
            out[m] = n
    return out


__all__ = [
    "QSeries",
    "ClosedFormChar",
    "eta_inv4",
    "inverse_product",
    "expand",
    "twist_table",
    "anchor",
    "min_grade",
]
