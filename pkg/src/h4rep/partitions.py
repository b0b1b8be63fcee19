"""Integer partitions and the part surgery used by the singular-vector constraints."""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from itertools import combinations


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    The empty partition is the unique partition of 0.
    """

    def __new__(cls, parts=()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def runs(self) -> list[tuple[int, int]]:
        """Multiplicity-run form ``[(value, count), ...]`` with values decreasing."""
        c = Counter(self)
        return sorted(c.items(), reverse=True)

    def __repr__(self):
        return "[" + ",".join(map(str, self)) + "]"

    __str__ = __repr__

    def run_str(self) -> str:
        return "[" + ",".join(f"{v}^{k}" for v, k in self.runs()) + "]"


EMPTY = Partition()

_RUN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse(text: str) -> Partition:
    """Parse ``"[4,2,1]"`` or the run form ``"[4^1,2^1,1^1]"``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"not a partition: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return EMPTY
    parts = []
    for tok in body.split(","):
        mt = _RUN.match(tok)
        if not mt:
            raise ValueError(f"bad partition token {tok!r}")
        parts += [int(mt.group(1))] * int(mt.group(2) or 1)
    return Partition(parts)


def _gen(n, maxpart):
    if n == 0:
        yield ()
        return
    for first in range(min(n, maxpart), 0, -1):
        for rest in _gen(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(Partition(p) for p in _gen(n, n))


def count(n: int) -> int:
    return len(enumerate_partitions(n))


def mult(n: int, lam) -> int:
    """Number of parts of ``lam`` equal to ``n``."""
    return sum(1 for p in lam if p == n)


def is_subpartition(mu, lam) -> bool:
    cm, cl = Counter(mu), Counter(lam)
    return all(cl[v] >= k for v, k in cm.items())


def bounded_subpartitions(lam, m: int, i: int) -> tuple[Partition, ...]:
    """Sub-multisets of ``lam`` with exactly ``m`` parts, all at most ``i``.

    Returned in reverse lexicographic order, without repeats.
    """
    runs = [(v, k) for v, k in Partition(lam).runs() if v <= i]
    out = []

    def rec(idx, left, acc):
        if left == 0:
            out.append(Partition(acc))
            return
        if idx == len(runs):
            return
        v, k = runs[idx]
        for take in range(min(k, left), -1, -1):
            rec(idx + 1, left - take, acc + [v] * take)

    rec(0, m, [])
    return tuple(sorted(set(out), reverse=True))


def bounded_subpartitions_bruteforce(lam, m: int, i: int) -> set[Partition]:
    """Reference implementation over all index subsets."""
    lam = tuple(lam)
    return {
        Partition(lam[t] for t in idx)
        for idx in combinations(range(len(lam)), m)
        if all(lam[t] <= i for t in idx)
    }


def remove(lam, mu) -> Partition:
    """``lam`` with the parts of ``mu`` deleted (with multiplicity)."""
    c = Counter(lam)
    for v, k in Counter(mu).items():
        if c[v] < k:
            raise ValueError(f"{Partition(mu)} is not a subpartition of {Partition(lam)}")
        c[v] -= k
    return Partition(c.elements())


def insert(lam, n: int) -> Partition:
    """``lam`` with one extra part ``n``."""
    if n <= 0:
        raise ValueError("inserted part must be positive")
    return Partition(tuple(lam) + (n,))


def bump(mu, k: int, n: int) -> Partition:
    """Add ``n`` to the ``k``-th part (1-based) of ``mu`` and re-sort."""
    mu = Partition(mu)
    if not 1 <= k <= len(mu):
        raise IndexError(f"part index {k} out of range for {mu}")
    parts = list(mu)
    parts[k - 1] += n
    return Partition(parts)


def unbump(mu, k: int, n: int) -> Partition | None:
    """Subtract ``n`` from the ``k``-th part of ``mu``.

    Returns ``None`` unless the part strictly exceeds ``n``: the part is never
    deleted, because the constraints only subtract from parts larger than ``n``.
    """
    mu = Partition(mu)
    if not 1 <= k <= len(mu):
        raise IndexError(f"part index {k} out of range for {mu}")
    if mu[k - 1] <= n:
        return None
    parts = list(mu)
    parts[k - 1] -= n
    return Partition(parts)
