"""Exact scalars and exact linear algebra.

Three scalar kinds are used throughout the package:

* ``Fraction`` for rationals (stdlib, always in lowest terms);
* :class:`Poly`, a univariate polynomial over Q in a formal parameter ``t``;
* :class:`RatFunc`, a ratio of two such polynomials.

Polynomial arithmetic is delegated to FLINT's ``fmpq_poly``.  Matrices are
:class:`ExactMatrix` values and :func:`rref` is the one elimination routine
everything else is built on.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

__all__ = [
    "Poly",
    "RatFunc",
    "ExactMatrix",
    "RREF",
    "PoleError",
    "as_scalar",
    "parse_rational",
    "format_rational",
    "rref",
    "rank",
    "evaluate",
    "kernel",
    "T",
]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""

    def __init__(self, row, col, value):
        super().__init__(f"entry ({row}, {col}) has a pole at t = {format_rational(value)}")
        self.row = row
        self.col = col
        self.value = value


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def _frac(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or an integer string.  Floats are rejected."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = text.strip()
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"rationals must be given as p/q, not {text!r}")
    return Fraction(s)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Poly:
    """Polynomial over Q in ``t``; coefficients stored lowest degree first."""

    __slots__ = ("_p",)

    def __init__(self, coeffs: Iterable = ()):
        if isinstance(coeffs, flint.fmpq_poly):
            self._p = coeffs
        else:
            self._p = flint.fmpq_poly([_fmpq(c) for c in coeffs])

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other._p
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return flint.fmpq_poly([_fmpq(other)])
        return None

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(_frac(c) for c in self._p.coeffs())

    @property
    def degree(self) -> int:
        return self._p.degree()

    def is_constant(self) -> bool:
        return self._p.degree() <= 0

    def constant(self) -> Fraction:
        cs = self._p.coeffs()
        return _frac(cs[0]) if cs else Fraction(0)

    def __call__(self, value) -> Fraction:
        return _frac(self._p(_fmpq(Fraction(value))))

    def __bool__(self):
        return self._p.degree() >= 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o

    def __hash__(self):
        c = self.coeffs
        return hash(c[0]) if len(c) == 1 else hash(("Poly", c))

    def __neg__(self):
        return Poly(-self._p)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(o - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p * o)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return Poly(self._p ** e)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self._p / _fmpq(other))
        return RatFunc(self, other)

    def __rtruediv__(self, other):
        return RatFunc(other, self)

    def __repr__(self):
        return f"Poly({list(map(format_rational, self.coeffs))})"

    def __str__(self):
        if not self:
            return "0"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(format_rational(c) + ("*" + mono if mono else ""))
        return " + ".join(reversed(terms)).replace("+ -", "- ")


T = Poly([0, 1])


class RatFunc:
    """Ratio of polynomials in ``t`` with coprime parts and monic denominator."""

    __slots__ = ("_n", "_d")

    def __init__(self, num, den=1):
        n = Poly._coerce(num)
        d = Poly._coerce(den)
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            a, b = RatFunc._as_pair(num), RatFunc._as_pair(den)
            n, d = a[0] * b[1], a[1] * b[0]
        if n is None or d is None:
            raise TypeError("RatFunc parts must be exact scalars")
        if d.degree() < 0:
            raise ZeroDivisionError("zero denominator")
        if n.degree() < 0:
            self._n, self._d = n, flint.fmpq_poly([1])
            return
        g = n.gcd(d)
        if g.degree() > 0:
            n, d = n // g, d // g
        lead = d.coeffs()[-1]
        if lead != 1:
            n, d = n / lead, d / lead
        self._n, self._d = n, d

    @staticmethod
    def _as_pair(x):
        if isinstance(x, RatFunc):
            return x._n, x._d
        return Poly._coerce(x), flint.fmpq_poly([1])

    @classmethod
    def _raw(cls, n, d):
        r = object.__new__(cls)
        r._n, r._d = n, d
        return r

    @property
    def num(self) -> Poly:
        return Poly(self._n)

    @property
    def den(self) -> Poly:
        return Poly(self._d)

    def __bool__(self):
        return self._n.degree() >= 0

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self._n == other._n and self._d == other._d
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self._d.degree() == 0 and self._n == o

    def __hash__(self):
        return hash(("RatFunc", Poly(self._n).coeffs, Poly(self._d).coeffs))

    def __neg__(self):
        return RatFunc._raw(-self._n, self._d)

    def __add__(self, other):
        a, b = RatFunc._as_pair(other)
        if b is None or a is None:
            return NotImplemented
        return RatFunc(Poly(self._n * b + a * self._d), Poly(self._d * b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFunc(other))

    def __rsub__(self, other):
        return RatFunc(other) - self

    def __mul__(self, other):
        a, b = RatFunc._as_pair(other)
        if a is None:
            return NotImplemented
        return RatFunc(Poly(self._n * a), Poly(self._d * b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = RatFunc._as_pair(other)
        if a is None:
            return NotImplemented
        return RatFunc(Poly(self._n * b), Poly(self._d * a))

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def __call__(self, value) -> Fraction:
        v = _fmpq(Fraction(value))
        dv = self._d(v)
        if dv == 0:
            raise ZeroDivisionError(f"pole at t = {format_rational(value)}")
        return _frac(self._n(v) / dv)

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"

    def __str__(self):
        if self._d.degree() == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def as_scalar(x):
    """Normalise ints to ``Fraction``; leave the other scalar kinds alone."""
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, Poly, RatFunc)):
        return x
    if isinstance(x, flint.fmpq):
        return _frac(x)
    raise TypeError(f"unsupported scalar {x!r}")


def _kind(x) -> int:
    # 0 rational, 1 polynomial, 2 rational function
    return 2 if isinstance(x, RatFunc) else 1 if isinstance(x, Poly) else 0


class ExactMatrix:
    """Rectangular matrix with entries of a single scalar kind."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [[as_scalar(x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix rows have unequal lengths")
        kinds = {_kind(x) for r in rows for x in r if x}
        if len(kinds) > 1:
            # homogenise to the widest kind present
            top = max(kinds)
            conv = RatFunc if top == 2 else Poly._from_scalar
            rows = [[conv(x) if _kind(x) < top else x for x in r] for r in rows]
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[Fraction(0)] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    @property
    def kind(self) -> str:
        k = max((_kind(x) for r in self.rows for x in r), default=0)
        return ("rational", "poly", "ratfunc")[k]

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.rows)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix([list(c) for c in zip(*self.rows)] if self.nrows else [], self.nrows)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.nrows else [() for _ in range(other.ncols)]
        out = []
        for r in self.rows:
            out.append([_dot(r, c) for c in cols])
        return ExactMatrix(out, other.ncols)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def to_json(self):
        def enc(x):
            if isinstance(x, Fraction):
                return format_rational(x)
            if isinstance(x, Poly):
                return [format_rational(c) for c in x.coeffs]
            return {"num": enc(x.num), "den": enc(x.den)}

        return [[enc(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, {self.kind})"


def _poly_from_scalar(x):
    return x if isinstance(x, Poly) else Poly([x])


Poly._from_scalar = staticmethod(_poly_from_scalar)


def _dot(a, b):
    s = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


@dataclass(frozen=True)
class RREF:
    """Reduced row echelon form with its rank, pivot columns and right kernel.

    ``kernel`` is an ``ncols x (ncols - rank)`` matrix whose columns form the
    canonical kernel basis (free variable set to 1, the others to 0).
    """

    form: ExactMatrix
    rank: int
    pivots: tuple[int, ...]
    kernel: ExactMatrix

    def kernel_vectors(self) -> list[tuple]:
        return [tuple(self.kernel.rows[r][c] for r in range(self.kernel.nrows))
                for c in range(self.kernel.ncols)]


def _kernel_from_form(form_rows, pivots, ncols, zero, one):
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    cols = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            x = form_rows[r][f]
            if x:
                v[p] = -x
        cols.append(v)
    rows = [[cols[c][r] for c in range(len(free))] for r in range(ncols)]
    return ExactMatrix(rows, len(free))


def _rref_python(m: ExactMatrix):
    """Gauss-Jordan; pivot is the first row with a nonzero entry in the column."""
    kind = m.kind
    if kind == "rational":
        rows = [list(r) for r in m.rows]
        one, zero = Fraction(1), Fraction(0)
    else:
        rows = [[x if isinstance(x, RatFunc) else RatFunc(x) for x in r] for r in m.rows]
        one, zero = RatFunc(1), RatFunc(0)
    nr, nc = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = one / rows[r][c]
        pr = [x * inv if x else zero for x in rows[r]]
        rows[r] = pr
        nz = [cc for cc in range(c, nc) if pr[cc]]
        for i in range(nr):
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            ri = rows[i]
            for cc in nz:
                ri[cc] = ri[cc] - f * pr[cc]
        pivots.append(c)
        r += 1
    form = ExactMatrix(rows, nc) if nr else ExactMatrix([], nc)
    return form, tuple(pivots), zero, one


def _rref_flint(m: ExactMatrix):
    A = flint.fmpq_mat(m.nrows, m.ncols, [_fmpq(x) for r in m.rows for x in r])
    R, rk = A.rref()
    rows = [[_frac(R[i, j]) for j in range(m.ncols)] for i in range(m.nrows)]
    pivots = []
    for i in range(rk):
        pivots.append(next(j for j in range(m.ncols) if rows[i][j]))
    return ExactMatrix(rows, m.ncols), tuple(pivots), Fraction(0), Fraction(1)


def rref(m: ExactMatrix, backend: str = "auto") -> RREF:
    """Reduced row echelon form over Q or over Q(t).

    Polynomial entries are promoted to rational functions.  ``backend`` may be
    ``"python"`` (the reference elimination) or ``"flint"`` (rational matrices
    only); ``"auto"`` picks FLINT for rational matrices.  Because the reduced
    row echelon form of a matrix is unique, both backends return identical
    results.
    """
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    if m.nrows == 0 or m.ncols == 0:
        return RREF(m, 0, (), ExactMatrix.identity(m.ncols))
    use_flint = backend == "flint" or (backend == "auto" and m.kind == "rational")
    if use_flint and m.kind != "rational":
        raise ValueError("the flint backend handles rational matrices only")
    form, pivots, zero, one = _rref_flint(m) if use_flint else _rref_python(m)
    ker = _kernel_from_form(form.rows, pivots, m.ncols, zero, one)
    return RREF(form, len(pivots), pivots, ker)


def rank(m) -> int:
    """Rank over Q or Q(t)."""
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.kind == "rational":
        return flint.fmpq_mat(m.nrows, m.ncols, [_fmpq(x) for r in m.rows for x in r]).rank()
    return rref(m).rank


def kernel(m) -> list[tuple]:
    """Basis of the right kernel as a list of coordinate tuples."""
    return rref(m if isinstance(m, ExactMatrix) else ExactMatrix(m)).kernel_vectors()


def evaluate(m: ExactMatrix, value) -> ExactMatrix:
    """Substitute ``t = value`` into every entry."""
    value = Fraction(value)
    out = []
    for i, r in enumerate(m.rows):
        row = []
        for j, x in enumerate(r):
            if isinstance(x, Fraction):
                row.append(x)
            elif isinstance(x, Poly):
                row.append(x(value))
            else:
                try:
                    row.append(x(value))
                except ZeroDivisionError:
                    raise PoleError(i, j, value) from None
        out.append(row)
    return ExactMatrix(out, m.ncols)


def rational_rank_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    """Rank of a list of rational rows, skipping ``ExactMatrix`` construction."""
    rows = [r for r in rows if any(r)]
    if not rows or not ncols:
        return 0
    return flint.fmpq_mat(len(rows), ncols, [_fmpq(x) for r in rows for x in r]).rank()
