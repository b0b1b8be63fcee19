"""Mode arithmetic for the affinisation of h4.

A mode ``A_n`` is the pair ``(n, g)`` with generator code ``g`` in
``F=0, E=1, J=2, I=3``.  A PBW word is a tuple of modes; it is canonical when
sorted, i.e. mode indices increase to the right and equal indices are ordered
``F < E < J < I``.  Elements of the enveloping algebra (with the central element
replaced by the level ``k``) are dicts ``{canonical word: coefficient}``.

    [A_m, B_n] = [A, B]_{m+n} + m kappa(A, B) delta_{m+n,0} k
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactalg import as_scalar, format_rational

F_, E_, J_, I_ = 0, 1, 2, 3
GEN_NAMES = "FEJI"
GEN_CODES = {n: c for c, n in enumerate(GEN_NAMES)}

CENTRAL_CHARGE = 4

ONE = Fraction(1)
ZERO = Fraction(0)


def mode(name: str, n: int) -> tuple[int, int]:
    return (int(n), GEN_CODES[name])


def mode_str(m) -> str:
    return f"{GEN_NAMES[m[1]]}({m[0]})"


def word_str(w) -> str:
    """Render a word with runs collapsed, e.g. ``I(-1)^3 E(-1)``."""
    if not w:
        return "1"
    out = []
    run = 1
    for a, b in zip(w, w[1:] + (None,)):
        if a == b:
            run += 1
            continue
        out.append(mode_str(a) + (f"^{run}" if run > 1 else ""))
        run = 1
    return " ".join(out)


def word_grade(w) -> int:
    """``L_0`` grade carried by the word (minus the sum of indices)."""
    return -sum(n for n, _ in w)


def word_charge(w) -> int:
    """``J_0`` charge carried by the word."""
    return sum(1 for _, g in w if g == E_) - sum(1 for _, g in w if g == F_)


def is_canonical(w) -> bool:
    return all(a <= b for a, b in zip(w, w[1:]))


# ----------------------------------------------------------------- brackets

def mode_bracket(x, y, k=ONE):
    """``[x, y]`` as ``(mode or None, coefficient, central scalar)``.

    The result equals ``coefficient * mode + central``.
    """
    (m, a), (n, b) = x, y
    k = as_scalar(k)
    central = ZERO
    if m + n == 0 and {a, b} in ({E_, F_}, {I_, J_}):
        central = m * k
    if a == E_ and b == F_:
        return (m + n, I_), ONE, central
    if a == F_ and b == E_:
        return (m + n, I_), -ONE, central
    if a == J_ and b == E_:
        return (m + n, E_), ONE, central
    if a == E_ and b == J_:
        return (m + n, E_), -ONE, central
    if a == J_ and b == F_:
        return (m + n, F_), -ONE, central
    if a == F_ and b == J_:
        return (m + n, F_), ONE, central
    return None, ZERO, central


def bracket_element(x, y, k=ONE) -> dict:
    md, c, central = mode_bracket(x, y, k)
    out = {}
    if md is not None and c:
        out[(md,)] = c
    if central:
        out[()] = central
    return out


# ----------------------------------------------------------- normal order

def _add(acc: dict, w, c):
    v = acc.get(w, ZERO) + c
    if v:
        acc[w] = v
    else:
        acc.pop(w, None)


@lru_cache(maxsize=500_000)
def _left_mul(k, md, w) -> tuple:
    """Normal-ordered ``md * w`` for canonical ``w``; returned as a tuple of pairs."""
    if not w or md <= w[0]:
        return (((md,) + w, ONE),)
    w0, rest = w[0], w[1:]
    acc: dict = {}
    # md w0 rest = w0 (md rest) + [md, w0] rest
    for t, c in _left_mul(k, md, rest):
        for t2, c2 in _left_mul(k, w0, t):
            _add(acc, t2, c * c2)
    bm, bc, central = mode_bracket(md, w0, k)
    if bm is not None:
        for t, c in _left_mul(k, bm, rest):
            _add(acc, t, bc * c)
    if central:
        _add(acc, rest, central)
    return tuple(sorted(acc.items()))


def left_mul(md, element: dict, k=ONE) -> dict:
    """Normal-ordered ``md * element``."""
    k = as_scalar(k)
    acc: dict = {}
    for w, c in element.items():
        for t, c2 in _left_mul(k, md, w):
            _add(acc, t, c * c2)
    return acc


def normal_order_word(w, k=ONE) -> dict:
    """Canonical expansion of an arbitrary word of modes."""
    acc = {(): ONE}
    for md in reversed(tuple(w)):
        acc = left_mul(md, acc, k)
    return acc


def normal_order(u: dict, k=ONE) -> dict:
    """Canonical form of an element whose words need not be canonical."""
    acc: dict = {}
    for w, c in u.items():
        for t, c2 in normal_order_word(w, k).items():
            _add(acc, t, c * c2)
    return acc


def multiply(u: dict, v: dict, k=ONE) -> dict:
    """Product of two canonical elements, normal ordered."""
    acc: dict = {}
    for w, c in u.items():
        part = dict(v)
        for md in reversed(w):
            part = left_mul(md, part, k)
        for t, c2 in part.items():
            _add(acc, t, c * c2)
    return acc


def add(u: dict, v: dict, cv=ONE) -> dict:
    acc = dict(u)
    for w, c in v.items():
        _add(acc, w, cv * c)
    return acc


def commutator(u: dict, v: dict, k=ONE) -> dict:
    return add(multiply(u, v, k), multiply(v, u, k), -ONE)


# ------------------------------------------------------------------ adjoint

_DAGGER = {E_: F_, F_: E_, I_: I_, J_: J_}


def adjoint_mode(md):
    n, g = md
    return (-n, _DAGGER[g])


def adjoint(u: dict, k=ONE) -> dict:
    """Antilinear-free adjoint: ``E_n^+ = F_-n``, ``I_n^+ = I_-n`` and so on, reversing words."""
    return normal_order({tuple(adjoint_mode(m) for m in reversed(w)): c for w, c in u.items()}, k)


# ---------------------------------------------------------------- elements

class UEAElement:
    """Thin immutable wrapper over the dict representation, with a level."""

    __slots__ = ("terms", "k")

    def __init__(self, terms=None, k=ONE, ordered=False):
        k = as_scalar(k)
        terms = {tuple(w): as_scalar(c) for w, c in (terms or {}).items() if c}
        self.terms = terms if ordered else normal_order(terms, k)
        self.k = k

    @classmethod
    def from_modes(cls, *modes, k=ONE):
        return cls({tuple(modes): ONE}, k)

    @classmethod
    def scalar(cls, c, k=ONE):
        return cls({(): c}, k, ordered=True)

    def _wrap(self, terms):
        return UEAElement(terms, self.k, ordered=True)

    def __add__(self, o):
        return self._wrap(add(self.terms, o.terms))

    def __sub__(self, o):
        return self._wrap(add(self.terms, o.terms, -ONE))

    def __neg__(self):
        return self._wrap({w: -c for w, c in self.terms.items()})

    def __mul__(self, o):
        if isinstance(o, UEAElement):
            return self._wrap(multiply(self.terms, o.terms, self.k))
        o = as_scalar(o)
        return self._wrap({w: o * c for w, c in self.terms.items() if o})

    def __rmul__(self, c):
        c = as_scalar(c)
        return self._wrap({w: c * v for w, v in self.terms.items() if c})

    def __eq__(self, o):
        return isinstance(o, UEAElement) and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def dagger(self):
        return self._wrap(adjoint(self.terms, self.k))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            cs = format_rational(c) if not hasattr(c, "coeffs") else f"({c})"
            parts.append(f"{cs} {word_str(w)}" if w else cs)
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------- Sugawara

def sugawara_terms(n: int, grade: int, k=ONE):
    """Finite list of ``(coefficient, word)`` for ``L_n`` acting on grade ``<= grade``.

    Modes with index above ``grade`` annihilate such vectors, which truncates
    the normally ordered sums.  Words are applied right to left.
    """
    k = as_scalar(k)
    if not k:
        raise ValueError("the Sugawara construction needs k != 0")
    out = []

    def normal_ordered_sum(a, b, coeff):
        # sum_{r<=-1} a_r b_{n-r}  +  sum_{r>=0} b_{n-r} a_r
        for r in range(n - grade, 0):
            out.append((coeff, ((r, a), (n - r, b))))
        for r in range(0, grade + 1):
            out.append((coeff, ((n - r, b), (r, a))))

    normal_ordered_sum(E_, F_, 1 / k)
    normal_ordered_sum(I_, J_, 1 / k)
    out.append((Fraction(n + 1) / (2 * k), ((n, I_),)))
    c2 = -1 / (2 * k * k)
    for r in range(n - grade, grade + 1):
        out.append((c2, ((r, I_), (n - r, I_))))
    return out


def hw_conformal_weight(i, j, k=ONE, lowest=False):
    i, j, k = as_scalar(i), as_scalar(j), as_scalar(k)
    half = Fraction(1, 2)
    return i / k * (j + (-half if lowest else half) - i / (2 * k))


def relaxed_conformal_weight(i, h, k=ONE):
    i, h, k = as_scalar(i), as_scalar(h), as_scalar(k)
    return h / k + i / k * (Fraction(1, 2) - i / (2 * k))


# ------------------------------------------------------ affine automorphisms

def apply_affine_automorphism(spec, u: dict, k=ONE) -> dict:
    """Image of an element under an affine automorphism word.

    Generators: ``conj`` (``E_n <-> F_n``, ``I, J -> -I, -J``), ``rescale``,
    ``shift`` (``J_n -> J_n - beta I_n``), ``ashift`` (``J_0 -> J_0 - beta k``)
    and ``sflow`` (``E_n -> E_{n-l}``, ``F_n -> F_{n+l}``, ``I_0 -> I_0 - l k``).
    """
    k = as_scalar(k)
    for g in reversed(spec.word):
        acc: dict = {}
        for w, c in u.items():
            img = {(): c}
            for md in w:
                img = multiply(img, _gen_image(g, md, k), k)
            acc = add(acc, img)
        u = acc
    return u


def _gen_image(g, md, k) -> dict:
    n, a = md
    name = g[0]
    if name == "conj":
        if a == E_:
            return {((n, F_),): ONE}
        if a == F_:
            return {((n, E_),): ONE}
        return {(md,): -ONE}
    if name == "rescale":
        al = g[1]
        if a in (E_, F_):
            return {(md,): 1 / al}
        if a == I_:
            return {(md,): 1 / (al * al)}
        return {(md,): ONE}
    if name == "shift":
        if a == J_:
            return {(md,): ONE, ((n, I_),): -g[1]}
        return {(md,): ONE}
    if name == "ashift":
        if a == J_ and n == 0:
            return add({(md,): ONE}, {(): -g[1] * k})
        return {(md,): ONE}
    if name == "sflow":
        ell = g[1]
        if a == E_:
            return {((n - ell, E_),): ONE}
        if a == F_:
            return {((n + ell, F_),): ONE}
        if a == I_ and n == 0:
            return add({(md,): ONE}, {(): -ell * k})
        return {(md,): ONE}
    raise ValueError(f"unknown generator {name}")
