"""The four-dimensional Lie algebra h4 and its weight modules.

Basis ``E, F, I, J`` with ``[E,F] = I``, ``[J,E] = E``, ``[J,F] = -F`` and ``I``
central.  Weight modules are stored in an offset-indexed form: state ``s`` has
``J``-eigenvalue ``j + s`` and

    E|s> = e(s) |s+1>,    F|s> = f(s) |s-1>,    I|s> = i |s>.

These are the bottom layers that ``affmodules`` induces from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import Poly, as_scalar, format_rational

BASIS = ("E", "F", "I", "J")


class ParameterError(ValueError):
    """Module parameters violate the criterion required by the requested kind."""


class UncataloguedError(LookupError):
    """No isomorphism is recorded for this label under this automorphism."""


# ---------------------------------------------------------------- elements

@dataclass(frozen=True)
class H4Element:
    """``e*E + f*F + i*I + j*J``."""

    e: object = Fraction(0)
    f: object = Fraction(0)
    i: object = Fraction(0)
    j: object = Fraction(0)

    def __post_init__(self):
        for name in ("e", "f", "i", "j"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    @classmethod
    def basis(cls, name: str) -> H4Element:
        return cls(**{name.lower(): 1})

    def coeffs(self):
        return (self.e, self.f, self.i, self.j)

    def __add__(self, o):
        return H4Element(*(a + b for a, b in zip(self.coeffs(), o.coeffs())))

    def __sub__(self, o):
        return H4Element(*(a - b for a, b in zip(self.coeffs(), o.coeffs())))

    def __neg__(self):
        return H4Element(*(-a for a in self.coeffs()))

    def scale(self, c) -> H4Element:
        return H4Element(*(c * a for a in self.coeffs()))

    __rmul__ = scale

    def __bool__(self):
        return any(self.coeffs())

    def __str__(self):
        terms = [f"{c}*{n}" for c, n in zip(self.coeffs(), BASIS) if c]
        return " + ".join(terms) or "0"


E, F, I, J = (H4Element.basis(n) for n in BASIS)

# structure constants on ordered basis pairs; the rest follow from antisymmetry
_BRACKET = {
    ("E", "F"): I,
    ("J", "E"): E,
    ("J", "F"): -F,
}


def basis_bracket(a: str, b: str) -> H4Element:
    if (a, b) in _BRACKET:
        return _BRACKET[(a, b)]
    if (b, a) in _BRACKET:
        return -_BRACKET[(b, a)]
    return H4Element()


def bracket(x: H4Element, y: H4Element) -> H4Element:
    out = H4Element()
    for a, ca in zip(BASIS, x.coeffs()):
        if not ca:
            continue
        for b, cb in zip(BASIS, y.coeffs()):
            if cb:
                out = out + basis_bracket(a, b).scale(ca * cb)
    return out


@dataclass(frozen=True)
class BilinearParams:
    a: object = Fraction(1)
    b: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_scalar(self.a))
        object.__setattr__(self, "b", as_scalar(self.b))
        if not self.a:
            raise ParameterError("the form parameter a must be nonzero")


def kappa_basis(x: str, y: str, p: BilinearParams = BilinearParams()):
    pair = {x, y}
    if pair == {"E", "F"} or pair == {"I", "J"}:
        return p.a
    if x == y == "J":
        return p.b
    return Fraction(0)


def kappa(x: H4Element, y: H4Element, p: BilinearParams = BilinearParams()):
    s = Fraction(0)
    for a, ca in zip(BASIS, x.coeffs()):
        for b, cb in zip(BASIS, y.coeffs()):
            if ca and cb:
                s = s + ca * cb * kappa_basis(a, b, p)
    return s


# ------------------------------------------------------------ automorphisms

@dataclass(frozen=True)
class AutomorphismSpec:
    """A word in the automorphism generators, applied right to left.

    Generators are tuples: ``("conj",)``, ``("rescale", alpha)``,
    ``("shift", beta)``, ``("ashift", beta)`` and ``("sflow", l)``.  The last
    two only make sense for the affine algebra.
    """

    word: tuple = ()

    def __post_init__(self):
        norm = []
        for g in self.word:
            g = (g,) if isinstance(g, str) else tuple(g)
            name = g[0]
            if name == "conj":
                norm.append(("conj",))
            elif name in ("rescale", "shift", "ashift"):
                val = as_scalar(g[1])
                if name == "rescale" and not val:
                    raise ParameterError("rescale parameter must be nonzero")
                norm.append((name, val))
            elif name == "sflow":
                if int(g[1]) != g[1]:
                    raise ParameterError("spectral flow parameter must be an integer")
                norm.append(("sflow", int(g[1])))
            else:
                raise ParameterError(f"unknown automorphism generator {name!r}")
        object.__setattr__(self, "word", tuple(norm))

    @classmethod
    def conj(cls):
        return cls((("conj",),))

    @classmethod
    def rescale(cls, alpha):
        return cls((("rescale", alpha),))

    @classmethod
    def shift(cls, beta):
        return cls((("shift", beta),))

    @classmethod
    def ashift(cls, beta):
        return cls((("ashift", beta),))

    @classmethod
    def sflow(cls, ell):
        return cls((("sflow", ell),))

    def __matmul__(self, other: AutomorphismSpec) -> AutomorphismSpec:
        """Composition ``self o other``."""
        return AutomorphismSpec(self.word + other.word)

    def __str__(self):
        return " . ".join(
            g[0] if len(g) == 1 else f"{g[0]}({format_rational(g[1])})" for g in self.word
        ) or "id"


def _apply_gen(g, x: H4Element) -> H4Element:
    e, f, i, j = x.coeffs()
    name = g[0]
    if name == "conj":
        # E -> -F, F -> -E, I -> -I, J -> -J
        return H4Element(e=-f, f=-e, i=-i, j=-j)
    if name == "rescale":
        a = g[1]
        return H4Element(e=e / a, f=f / a, i=i / (a * a), j=j)
    if name == "shift":
        # J -> J - beta I
        return H4Element(e=e, f=f, i=i - g[1] * j, j=j)
    raise ParameterError(f"{name} is not an automorphism of the finite algebra")


def apply_automorphism(spec: AutomorphismSpec, x: H4Element) -> H4Element:
    for g in reversed(spec.word):
        x = _apply_gen(g, x)
    return x


def pullback_params(spec: AutomorphismSpec, p: BilinearParams) -> BilinearParams:
    """Parameters of the form ``kappa(phi x, phi y)``, read off the basis."""
    k = lambda a, b: kappa(apply_automorphism(spec, a), apply_automorphism(spec, b), p)  # noqa: E731
    return BilinearParams(a=k(E, F), b=k(J, J))


# ------------------------------------------------------------ module labels

@dataclass(frozen=True)
class Label:
    """Isomorphism-class label of a module.

    ``family`` is one of

    * finite: ``V+``, ``V-`` (Verma), ``L0`` (one-dimensional), ``R`` (dense
      irreducible, ``j`` a class), ``R+``, ``R-`` (reducible dense, ``j = h/i``),
      ``R0`` (dense with ``i = h = 0``);
    * affine: the same induced names plus ``L+``, ``L-`` (irreducible
      highest/lowest weight), ``E`` (irreducible quotient of ``R``) and
      ``E+``, ``E-``.
    """

    family: str
    i: object = Fraction(0)
    j: object = Fraction(0)
    h: object = None

    def __post_init__(self):
        object.__setattr__(self, "i", as_scalar(self.i))
        object.__setattr__(self, "j", as_scalar(0 if self.j is None else self.j))
        if self.h is not None:
            object.__setattr__(self, "h", as_scalar(self.h))
        if self.family in _CLASS_FAMILIES and isinstance(self.j, Fraction):
            # [j] is a class mod Z: store the representative in [0, 1)
            object.__setattr__(self, "j", self.j - (self.j.numerator // self.j.denominator))
        if self.family in ("R+", "R-", "E+", "E-"):
            object.__setattr__(self, "j", self.h / self.i)

    def __str__(self):
        parts = [f"i={format_rational(self.i)}"]
        if self.family not in ("R+", "R-", "E+", "E-"):
            jj = format_rational(self.j) if isinstance(self.j, Fraction) else str(self.j)
            parts.append(f"j=[{jj}]" if self.family in _CLASS_FAMILIES else f"j={jj}")
        if self.h is not None:
            parts.append(f"h={format_rational(self.h)}")
        return f"{self.family}({', '.join(parts)})"


_CLASS_FAMILIES = ("R", "E")


def _finite_twist_gen(g, lab: Label) -> Label:
    fam, i, j, h = lab.family, lab.i, lab.j, lab.h
    name = g[0]
    if name == "conj":
        if fam in ("V+", "V-"):
            return Label("V-" if fam == "V+" else "V+", -i, -j)
        if fam in ("L0", "R0"):
            return Label(fam, 0, -j, h)
        if fam == "R":
            return Label("R", -i, -j, h + i)
        if fam in ("R+", "R-"):
            return Label("R-" if fam == "R+" else "R+", -i, None, h + i)
    elif name == "rescale":
        a2 = g[1] * g[1]
        if fam in ("V+", "V-"):
            return Label(fam, a2 * i, j)
        if fam in ("L0", "R0"):
            return lab
        if fam == "R":
            return Label("R", a2 * i, j, a2 * h)
        if fam in ("R+", "R-"):
            return Label(fam, a2 * i, None, a2 * h)
    elif name == "shift":
        b = g[1]
        if fam in ("V+", "V-", "L0"):
            return Label(fam, i, j + b * i, h)
        if fam == "R0":
            return lab
        if fam == "R":
            return Label("R", i, j + b * i, h + b * i * i)
        if fam in ("R+", "R-"):
            return Label(fam, i, None, h + b * i * i)
    raise UncataloguedError(f"no recorded image of {lab} under {name}")


def twist_labels(spec: AutomorphismSpec, label: Label) -> Label:
    """Image of a finite-module label under the twist functor of ``spec``."""
    for g in reversed(spec.word):
        label = _finite_twist_gen(g, label)
    return label


# ----------------------------------------------------------------- modules

KINDS = ("hw-verma", "lw-verma", "one-dim", "dense-irr", "dense-plus", "dense-minus", "dense-zero")


def _is_integer(x) -> bool:
    return isinstance(x, Fraction) and x.denominator == 1


@dataclass(frozen=True)
class FiniteWeightModule:
    """Offset-indexed weight module of h4.

    ``j`` is the ``J``-eigenvalue of offset 0 (it may be a :class:`Poly` in the
    formal parameter for generic computations).  ``window`` optionally records
    an offset range ``(lo, hi)`` used for finite truncations.
    """

    kind: str
    i: object
    j: object
    h: object
    window: tuple | None = None
    reducible: bool = field(default=False, compare=False)

    # offsets that carry a state
    def lo(self):
        return 0 if self.kind in ("lw-verma", "one-dim") else None

    def hi(self):
        return 0 if self.kind in ("hw-verma", "one-dim") else None

    def has_state(self, s: int) -> bool:
        lo, hi = self.lo(), self.hi()
        return (lo is None or s >= lo) and (hi is None or s <= hi)

    def states(self, lo: int, hi: int) -> list[int]:
        return [s for s in range(lo, hi + 1) if self.has_state(s)]

    def jval(self, s: int):
        return self.j + s

    def e(self, s: int):
        """Coefficient of ``E|s> = e(s)|s+1>``."""
        k, i = self.kind, self.i
        if not self.has_state(s) or not self.has_state(s + 1):
            return Fraction(0)
        if k == "hw-verma":
            return -i * s
        if k in ("lw-verma", "dense-irr", "dense-minus"):
            return Fraction(1)
        if k == "dense-plus":
            return -i * s
        if k == "dense-zero":
            return Fraction(1) if s >= 0 else Fraction(0)
        return Fraction(0)

    def f(self, s: int):
        """Coefficient of ``F|s> = f(s)|s-1>``."""
        k, i = self.kind, self.i
        if not self.has_state(s) or not self.has_state(s - 1):
            return Fraction(0)
        if k in ("hw-verma", "dense-plus"):
            return Fraction(1)
        if k == "lw-verma":
            return -i * s
        if k == "dense-irr":
            return self.h - i * (self.j + s - 1)
        if k == "dense-minus":
            return -i * (s - 1)
        if k == "dense-zero":
            return Fraction(1) if s <= 0 else Fraction(0)
        return Fraction(0)

    def link(self, s: int):
        """``e(s) f(s+1)``, the normalisation-independent product on the link s -> s+1."""
        return self.e(s) * self.f(s + 1)

    def casimir(self, s: int):
        """Eigenvalue of ``Q = FE + IJ`` on state ``s``."""
        return self.link(s) + self.i * self.jval(s)

    def action_matrix(self, gen: str, lo: int, hi: int):
        """Matrix of ``gen`` on the states of the offset range, columns = inputs."""
        st = self.states(lo, hi)
        pos = {s: n for n, s in enumerate(st)}
        M = [[Fraction(0)] * len(st) for _ in st]
        for s in st:
            c = pos[s]
            if gen == "E" and s + 1 in pos:
                M[pos[s + 1]][c] = self.e(s)
            elif gen == "F" and s - 1 in pos:
                M[pos[s - 1]][c] = self.f(s)
            elif gen == "I":
                M[c][c] = self.i
            elif gen == "J":
                M[c][c] = self.jval(s)
        return M

    @property
    def label(self) -> Label:
        k = self.kind
        if k == "hw-verma":
            return Label("V+", self.i, self.j)
        if k == "lw-verma":
            return Label("V-", self.i, self.j)
        if k == "one-dim":
            return Label("L0", 0, self.j, 0)
        if k == "dense-irr":
            return Label("R", self.i, self.j, self.h)
        if k == "dense-plus":
            return Label("R+", self.i, None, self.h)
        if k == "dense-minus":
            return Label("R-", self.i, None, self.h)
        return Label("R0", 0, self.j, 0)

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Poly):
                return [format_rational(c) for c in x.coeffs]
            return None if x is None else format_rational(x)

        return {
            "kind": self.kind,
            "i": enc(self.i),
            "j": enc(self.j),
            "h": enc(self.h),
            "window": list(self.window) if self.window else None,
        }


def build_module(kind: str, i=0, j=None, h=None, offset_range=None) -> FiniteWeightModule:
    """Construct a bottom-layer module, checking the kind's criteria.

    * ``hw-verma`` / ``lw-verma``: any ``i, j`` (``h`` is the Casimir value and
      is computed);
    * ``one-dim``: needs ``i = 0``;
    * ``dense-irr``: needs ``h`` outside ``i(j + Z)``;
    * ``dense-plus`` / ``dense-minus``: need ``i != 0`` and ``h`` in ``i(j + Z)``;
      the anchor is moved to ``j = h/i``;
    * ``dense-zero``: needs ``i = h = 0``.
    """
    if kind not in KINDS:
        raise ParameterError(f"unknown module kind {kind!r}")
    i = as_scalar(i)
    given_j = j is not None
    j = as_scalar(j if given_j else 0)
    h = None if h is None else as_scalar(h)
    generic = isinstance(j, Poly) and not j.is_constant()
    reducible = False
    if kind == "hw-verma":
        h = i * j
        reducible = i == 0
    elif kind == "lw-verma":
        h = i * (j - 1)
        reducible = i == 0
    elif kind == "one-dim":
        if i != 0:
            raise ParameterError("finite-dimensional h4-modules have i = 0")
        h = Fraction(0)
    elif kind == "dense-irr":
        if h is None:
            raise ParameterError("dense modules need the Casimir eigenvalue h")
        if i == 0:
            if h == 0:
                raise ParameterError("dense module with i = 0 is irreducible only for h != 0")
        elif not generic and _is_integer(h / i - j):
            raise ParameterError(
                f"dense module is reducible: h = i(j + m) with m = {format_rational(h / i - j)}"
            )
    elif kind in ("dense-plus", "dense-minus"):
        if h is None or i == 0:
            raise ParameterError("reducible dense modules R^+/- need i != 0 and h")
        if given_j and not generic and not _is_integer(h / i - j):
            raise ParameterError("reducible dense modules need h in i(j + Z)")
        j = h / i
        reducible = True
    elif kind == "dense-zero":
        if i != 0 or (h not in (None, 0)):
            raise ParameterError("the dense module R0 needs i = 0 and h = 0")
        h = Fraction(0)
        reducible = True
    window = tuple(offset_range) if offset_range is not None else None
    return FiniteWeightModule(kind, i, j, h, window, reducible)


class InapplicableError(ValueError):
    pass


def check_I_trivial(M: FiniteWeightModule, truncation: bool = False) -> bool:
    """Whether ``I`` acts as zero.

    Only meaningful for finite-dimensional modules: the one-dimensional kind, or
    any kind when ``truncation`` is set and the module carries a window.
    """
    if M.kind == "one-dim":
        lo, hi = 0, 0
    elif truncation and M.window is not None:
        lo, hi = M.window
    else:
        raise InapplicableError(f"{M.kind} is infinite-dimensional; no finite window flagged")
    mat = M.action_matrix("I", lo, hi)
    return not any(x for r in mat for x in r)
