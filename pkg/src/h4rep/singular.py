"""Singular vectors of highest-weight Verma modules with positive integer ``i``.

For ``i, m >= 1`` the singular vector of charge ``m`` is sought in the form

    chi = sum_{lam |- i m} sum_{mu in S(i, m, lam)} c(lam, mu) I_{-(lam \\ mu)} E_{-mu} |i, j>

where ``S(i, m, lam)`` are the subpartitions of ``lam`` with exactly ``m`` parts,
none larger than ``i``.  The coefficients are fixed by ``J_n chi = 0`` and the
normalisation ``c([i^m], [i^m]) = 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import partitions as P
from .affinepbw import E_, F_, I_, J_, ONE, ZERO, hw_conformal_weight
from .affmodules import verma
from .exactalg import ExactMatrix, format_rational, rref, rational_rank_rows
from .partitions import Partition


class SingularAnomaly(ArithmeticError):
    """The constraint system does not have a one-dimensional solution space."""


def keys(i: int, m: int) -> list[tuple[Partition, Partition]]:
    """Unknowns ``(lam, mu)`` in a fixed order."""
    out = []
    for lam in P.enumerate_partitions(i * m):
        for mu in P.bounded_subpartitions(lam, m, i):
            out.append((lam, mu))
    return out


def _display_key(key):
    lam, mu = key
    rho = P.remove(lam, mu)
    return (tuple(-p for p in mu), tuple(-p for p in rho))


@dataclass
class SingularCoefficients:
    i: int
    m: int
    coeffs: dict  # (lam, mu) -> Fraction

    def __post_init__(self):
        valid = set(keys(self.i, self.m))
        bad = [k for k in self.coeffs if k not in valid]
        if bad:
            raise ValueError(f"keys outside S(i, m, lam): {bad[:3]}")

    def __getitem__(self, key):
        return self.coeffs.get(key, ZERO)

    def C(self, rest, part) -> Fraction:
        """The ``m = 1`` notation ``C(lam \\ lam_k, lam_k)``."""
        rest = Partition(rest)
        return self[(P.insert(rest, part), Partition([part]))]

    def nonzero(self) -> dict:
        return {k: v for k, v in self.coeffs.items() if v}

    def __eq__(self, other):
        return (self.i, self.m, self.nonzero()) == (other.i, other.m, other.nonzero())

    def ordered_terms(self):
        return sorted(self.nonzero().items(), key=lambda kv: _display_key(kv[0]))

    def to_json(self):
        return [
            {"lambda": str(lam), "mu": str(mu), "coeff": format_rational(c)}
            for (lam, mu), c in self.ordered_terms()
        ]

    def pretty(self) -> str:
        out = []
        for n, ((lam, mu), c) in enumerate(self.ordered_terms()):
            mono = term_string(lam, mu)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = mono if mag == 1 else f"{format_rational(mag)} {mono}"
            out.append((("-" if sign == "-" else "") if n == 0 else f" {sign} ") + body)
        return "".join(out) or "0"


def term_string(lam, mu) -> str:
    """``I(-2) I(-1) E(-1)``-style rendering of ``I_{-(lam \\ mu)} E_{-mu}``."""
    rho = P.remove(lam, mu)
    toks = []
    for name, part in (("I", rho), ("E", Partition(mu))):
        for v, k in part.runs():
            toks.append(f"{name}({-v})" + (f"^{k}" if k > 1 else ""))
    return " ".join(toks) or "1"


# -------------------------------------------------------------- constraints

def _j_action(rho, mu, n, k=ONE):
    """``J_n I_{-rho} E_{-mu} |top>`` as ``{(rho', mu'): coeff}``."""
    out = {}
    c1 = n * k * P.mult(n, rho)
    if c1:
        out[(P.remove(rho, [n]), Partition(mu))] = c1
    for v, cnt in Partition(mu).runs():
        if v > n:
            mu2 = P.insert(P.remove(mu, [v]), v - n)
            key = (Partition(rho), mu2)
            out[key] = out.get(key, ZERO) + cnt
    return out


def build_constraints(i: int, m: int, literal: bool = False):
    """Linear system ``A c = 0`` in the unknowns :func:`keys`.

    By default every row is the coefficient of one monomial in ``J_n chi``
    computed from the mode action, so repeated parts are counted with their
    true multiplicities.  ``literal=True`` instead emits one row per
    ``(lam, mu, n)`` following the textbook constraint, in which the sum runs
    over part positions ``k`` of ``mu``; the two agree for ``m = 1``.
    Rows that are identically zero are dropped.
    """
    ks = keys(i, m)
    col = {key: c for c, key in enumerate(ks)}
    rows = []
    labels = []
    if not literal:
        for n in range(1, i * m + 1):
            eqs: dict = {}
            for key in ks:
                lam, mu = key
                rho = P.remove(lam, mu)
                for tgt, c in _j_action(rho, mu, n).items():
                    eq = eqs.setdefault(tgt, {})
                    eq[col[key]] = eq.get(col[key], ZERO) + c
            for tgt in sorted(eqs):
                row = [ZERO] * len(ks)
                for c, v in eqs[tgt].items():
                    row[c] = v
                if any(row):
                    rows.append(row)
                    labels.append(("J", n, tgt))
        return rows, ks, labels
    for lam, mu in ks:
        rho = P.remove(lam, mu)
        for n in range(1, i * m + 1):
            row = [ZERO] * len(ks)
            row[col[(lam, mu)]] += n * P.mult(n, rho)
            for kk in range(1, m + 1):
                lam2 = P.insert(P.remove(lam, [mu[kk - 1]]), mu[kk - 1] + n)
                if P.mult(n, lam2) == 0:
                    continue
                lam2 = P.remove(lam2, [n])
                mu2 = P.bump(mu, kk, n)
                if (lam2, mu2) in col:
                    row[col[(lam2, mu2)]] += 1
            if any(row):
                rows.append(row)
                labels.append(("J", n, (lam, mu)))
    return rows, ks, labels


def constraint_rank(i: int, m: int, literal: bool = False) -> tuple[int, int]:
    rows, ks, _ = build_constraints(i, m, literal)
    return rational_rank_rows(rows, len(ks)), len(ks)


def solve_singular(i: int, m: int, literal: bool = False) -> SingularCoefficients:
    """Unique solution with ``c([i^m], [i^m]) = 1``; raises on any other kernel size."""
    if i < 1 or m < 1:
        raise ValueError("the solver needs integers i, m >= 1")
    rows, ks, _ = build_constraints(i, m, literal)
    if rows:
        red = rref(ExactMatrix(rows, len(ks)))
        ker = red.kernel_vectors()
    else:
        ker = [tuple(ONE for _ in ks)]
    if len(ker) != 1:
        raise SingularAnomaly(f"constraint kernel has dimension {len(ker)} for i={i}, m={m}")
    top = (Partition([i] * m), Partition([i] * m))
    vec = dict(zip(ks, ker[0]))
    if not vec[top]:
        raise SingularAnomaly("normalising coefficient vanishes")
    scale = 1 / vec[top]
    return SingularCoefficients(i, m, {k: v * scale for k, v in vec.items() if v})


def closed_form(i: int) -> SingularCoefficients:
    """``C(rho, part) = (-1)^(k1+k2+...) / (k1! k2! ... mu1^k1 mu2^k2 ...)`` for ``rho = [mu1^k1, ...]``."""
    out = {}
    for lam in P.enumerate_partitions(i):
        for part in sorted(set(lam), reverse=True):
            rho = P.remove(lam, [part])
            num, den = 1, 1
            for v, k in rho.runs():
                num *= (-1) ** k
                den *= factorial(k) * v**k
            out[(lam, Partition([part]))] = Fraction(num, den)
    return SingularCoefficients(i, 1, out)


def power(c: SingularCoefficients, m: int) -> SingularCoefficients:
    """Coefficients of ``U^m`` where ``chi = U|i,j>`` has charge 1.

    Negative ``I`` and ``E`` modes commute, so ``U^m`` is an ordinary product of
    commuting monomials ``(rho, mu)``.
    """
    if c.m != 1:
        raise ValueError("power expects a charge-one singular vector")
    base = {(P.remove(lam, mu), mu): v for (lam, mu), v in c.nonzero().items()}
    acc = {(Partition(), Partition()): ONE}
    for _ in range(m):
        nxt: dict = {}
        for (r1, u1), a in acc.items():
            for (r2, u2), b in base.items():
                key = (Partition(r1 + r2), Partition(u1 + u2))
                nxt[key] = nxt.get(key, ZERO) + a * b
        acc = nxt
    out = {}
    for (rho, mu), v in acc.items():
        if v:
            out[(Partition(rho + mu), mu)] = v
    top = (Partition([c.i] * m), Partition([c.i] * m))
    scale = 1 / out[top]
    return SingularCoefficients(c.i, m, {k: v * scale for k, v in out.items()})


def removal_constant(rest, part, order) -> Fraction:
    """``C(rest, part) / C(empty, i)`` obtained by removing parts of ``rest`` in ``order``.

    Each step uses ``l * mult(l, rest) C(rest, p) + C(rest \\ l, p + l) = 0``.
    """
    rest = list(Partition(rest))
    val = Fraction(1)
    for idx in order:
        r = Partition(rest)
        ell = rest[idx]
        val *= Fraction(-1, ell * P.mult(ell, r))
        del rest[idx]
        part += ell
    if rest:
        raise ValueError("removal order must exhaust the partition")
    return val


# ------------------------------------------------------------ verification

def chi_vector(c: SingularCoefficients) -> dict:
    """Module vector of ``chi`` in the induced highest-weight module (top at offset 0)."""
    out = {}
    for (lam, mu), v in c.nonzero().items():
        rho = P.remove(lam, mu)
        w = tuple(sorted([(-r, I_) for r in rho] + [(-r, E_) for r in mu]))
        out[(w, 0)] = out.get((w, 0), ZERO) + v
    return out


def verify_singular(c: SingularCoefficients, j=Fraction(0), full: bool = False) -> list[tuple[str, bool]]:
    """Annihilation and eigenvalue checks of ``chi`` in ``V^+_{i,j}`` at level 1.

    Checks ``J_n`` for ``n = 1..i m``, ``E_0`` and ``F_1``; with ``full`` also
    every ``E_n, F_n, I_n`` up to the grade.  Returns ``(name, passed)`` pairs.
    """
    i, m = c.i, c.m
    N = i * m
    M = verma(i, j, N=N)
    chi = chi_vector(c)
    report = []
    mods = [(n, J_) for n in range(1, N + 1)] + [(0, E_), (1, F_)]
    if full:
        mods += [(n, g) for n in range(1, N + 1) for g in (E_, F_, I_)]
    for md in mods:
        name = "EFJI"[[E_, F_, J_, I_].index(md[1])] + f"_{md[0]}"
        report.append((f"{name} chi = 0", not M.act_mode(md, chi, check=False)))
    j0 = M.act_mode((0, J_), chi, check=False)
    report.append(("J_0 chi = (j+m) chi", j0 == _scaled(chi, j + m)))
    delta = hw_conformal_weight(i, j) + i * m
    l0 = M.sugawara(0, chi)
    report.append(("L_0 chi = (Delta + i m) chi", l0 == _scaled(chi, delta)))
    return report


def _scaled(v: dict, c) -> dict:
    return {key: c * x for key, x in v.items() if c * x}


def f1_rows(i: int):
    """Constraints from ``-F_1 chi = 0`` for ``m = 1`` in the unknowns :func:`keys`."""
    ks = keys(i, 1)
    M = verma(i, Fraction(0), N=i)
    images = []
    for lam, mu in ks:
        vec = chi_vector(SingularCoefficients(i, 1, {(lam, mu): ONE}))
        images.append(M.act_mode((1, F_), vec, check=False))
    tg = sorted({t for im in images for t in im})
    return [[-im.get(t, ZERO) for im in images] for t in tg], ks


def f1_implied(i: int) -> bool:
    """Whether the ``F_1`` constraints lie in the row space of the ``J_n`` ones."""
    jrows, ks, _ = build_constraints(i, 1)
    frows, _ = f1_rows(i)
    r1 = rational_rank_rows(jrows, len(ks))
    return r1 == rational_rank_rows(jrows + frows, len(ks))


def dumps(c: SingularCoefficients, fmt="text") -> str:
    if fmt == "json":
        return json.dumps(c.to_json(), indent=1)
    if fmt == "csv":
        return "\n".join(["lambda,mu,coeff"] + [
            f"\"{d['lambda']}\",\"{d['mu']}\",{d['coeff']}" for d in c.to_json()
        ])
    return c.pretty()
